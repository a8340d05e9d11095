//! End-to-end two-corpus comparison: configuration, the report document and
//! its artifacts (metric tables, density series and charts, graph files).

mod config;
mod run;
mod svg;

pub use config::{parse_formats, slug, AnalysisConfig, CorpusConfig, OutputConfig, OutputFormat, RunConfig};
pub use run::{
    analyze, compare_metric_records, format_p, run_compare, write_artifacts, ComparisonReport, CorpusAnalysis,
    CorpusProvenance, CorpusReport, Metric, MetricComparison, MetricSummary, NetworkReport, Provenance, RunOutput,
};
pub use svg::emit_density_svg;
