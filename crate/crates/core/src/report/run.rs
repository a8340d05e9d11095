use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::{slug, CorpusConfig, OutputFormat, RunConfig};
use super::svg::emit_density_svg;
use crate::error::{Error, Result};
use crate::ingest::{
    bibliometric_descriptives, parse_bibliographic_csv, sample_corpus, AuthorCounts, BiblioSummary, Corpus,
    SAMPLER_ALGORITHM,
};
use crate::metrics::{read_metric_csv, write_metric_csv, CharConvention, LexicalAnalyzer, LexicalRecord};
use crate::semnet::{
    betweenness, build_coword_graph, cluster_summary, export_graph, louvain_communities, CentralityScores,
    ClusterSummary, CoWordGraph, CommunityPartition, EdgeLength, GraphFormat, GraphPolicy, Stopwords,
};
use crate::stats::{
    descriptives, kde, shapiro_wilk, wilcoxon_rank_sum, write_density_csv, DensitySeries, Descriptives,
    NormalityResult, RankSumResult,
};
use crate::textproc::{Abbreviations, TokenPolicy, SENTENCE_RULES_VERSION, SYLLABLE_RULES_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    TitleLengthChars,
    Fkgl,
    YulesK,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::TitleLengthChars, Metric::Fkgl, Metric::YulesK];

    pub fn name(self) -> &'static str {
        match self {
            Metric::TitleLengthChars => "title_length_chars",
            Metric::Fkgl => "fkgl",
            Metric::YulesK => "yules_k",
        }
    }

    pub fn axis_label(self) -> &'static str {
        match self {
            Metric::TitleLengthChars => "Title length (characters)",
            Metric::Fkgl => "Abstract readability (FKGL)",
            Metric::YulesK => "Abstract lexical diversity (Yule's K)",
        }
    }

    /// Values of this metric over `records`, skipping documents where it is
    /// undefined.
    pub fn values(self, records: &[LexicalRecord]) -> Vec<f64> {
        records
            .iter()
            .filter_map(|r| match self {
                Metric::TitleLengthChars => Some(r.title_length_chars as f64),
                Metric::Fkgl => r.fkgl,
                Metric::YulesK => r.yules_k,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub metric: Metric,
    pub n: usize,
    /// Documents left out because the metric needs an abstract.
    pub excluded_without_abstract: usize,
    pub descriptives: Descriptives,
    pub normality: Option<NormalityResult>,
    /// Why `normality` is missing.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normality_note: Option<String>,
    pub kde_bandwidth: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkReport {
    pub node_count: usize,
    pub edge_count: usize,
    pub modularity_q: f64,
    pub clusters: ClusterSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub label: String,
    pub documents: usize,
    pub skipped_empty_titles: usize,
    pub bibliometrics: BiblioSummary,
    pub metrics: Vec<MetricSummary>,
    pub network: NetworkReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricComparison {
    pub metric: Metric,
    pub rank_sum: RankSumResult,
    /// p in scientific notation with three significant digits.
    pub p_display: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusProvenance {
    pub label: String,
    pub source_file: String,
    pub records_read: usize,
    pub sample_size: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    pub sampler_algorithm: String,
    pub corpora: Vec<CorpusProvenance>,
    pub louvain_seed: u64,
    pub resolution: f64,
    pub min_title_frequency: u32,
    pub edge_length: EdgeLength,
    pub kde_grid_points: usize,
    pub tokenize_rules: String,
    pub sentence_rules: String,
    pub syllable_rules: String,
    pub title_char_convention: CharConvention,
    pub token_policy: TokenPolicy,
    pub stopwords: String,
    pub abbreviations: String,
    /// Wall-clock time of the run; the only field that differs between
    /// otherwise identical runs.
    pub generated_at: Option<String>,
}

/// Everything a comparison run reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub corpora: Vec<CorpusReport>,
    pub comparisons: Vec<MetricComparison>,
    pub provenance: Provenance,
}

impl ComparisonReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// JSON with the timestamp removed, for determinism checks.
    pub fn canonical_json(&self) -> String {
        let mut copy = self.clone();
        copy.provenance.generated_at = None;
        copy.to_json()
    }
}

/// `4.52e-9` style, three significant digits.
pub fn format_p(p: f64) -> String {
    format!("{p:.2e}")
}

/// Per-corpus intermediate results kept alongside the report so artifacts
/// can be written from them.
#[derive(Debug, Clone)]
pub struct CorpusAnalysis {
    pub corpus: Corpus,
    pub records: Vec<LexicalRecord>,
    pub densities: Vec<(Metric, DensitySeries)>,
    pub graph: CoWordGraph,
    pub partition: CommunityPartition,
    pub scores: CentralityScores,
    pub report: CorpusReport,
    pub provenance: CorpusProvenance,
}

/// Settings resolved from a config: loaded policy files and the metric
/// analyzer.
struct Resolved {
    analyzer: LexicalAnalyzer,
    graph_policy: GraphPolicy,
    stopwords_source: String,
    abbreviations_source: String,
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn resolve(config: &RunConfig) -> Result<Resolved> {
    let a = &config.analysis;
    let token_policy = match &a.token_policy {
        Some(p) => TokenPolicy::parse(&read_text(p)?)?,
        None => TokenPolicy::default(),
    };
    let (abbreviations, abbreviations_source) = match &a.abbreviations {
        Some(p) => (Abbreviations::parse(&read_text(p)?)?, file_name(p)),
        None => (Abbreviations::default(), "bundled".to_string()),
    };
    let (stopwords, stopwords_source) = match &a.stopwords {
        Some(p) => (Stopwords::load(p)?, file_name(p)),
        None => (Stopwords::default(), "bundled".to_string()),
    };
    Ok(Resolved {
        analyzer: LexicalAnalyzer {
            token_policy,
            abbreviations,
        },
        graph_policy: GraphPolicy {
            min_title_frequency: a.min_title_frequency,
            stopwords,
            token_policy,
            edge_length: a.edge_length,
        },
        stopwords_source,
        abbreviations_source,
    })
}

fn load_corpus(c: &CorpusConfig) -> Result<(Corpus, usize, usize)> {
    let file = fs::File::open(&c.csv_path).map_err(|e| Error::io(&c.csv_path, e))?;
    let import = parse_bibliographic_csv(std::io::BufReader::new(file), &c.label, &c.columns)?;
    let read = import.corpus.len();
    let corpus = match (c.sample_size, c.seed) {
        (Some(n), Some(seed)) => sample_corpus(&import.corpus, n, seed)?,
        (Some(_), None) => {
            return Err(Error::Config(format!("corpus {}: sample_size needs a seed", c.label)));
        }
        _ => import.corpus,
    };
    Ok((corpus, read, import.skipped_empty_titles))
}

fn summarize_metric(
    metric: Metric,
    records: &[LexicalRecord],
    grid: usize,
) -> Result<(MetricSummary, Option<DensitySeries>)> {
    let values = metric.values(records);
    if values.is_empty() {
        return Err(Error::Domain(format!("no document has a defined {}", metric.name())));
    }
    let (normality, normality_note) = match shapiro_wilk(&values) {
        Ok(r) => (Some(r), None),
        Err(e @ (Error::Domain(_) | Error::Degenerate(_))) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let density = match kde(&values, grid) {
        Ok(s) => Some(s),
        Err(Error::Degenerate(_)) => None,
        Err(e) => return Err(e),
    };
    Ok((
        MetricSummary {
            metric,
            n: values.len(),
            excluded_without_abstract: records.len() - values.len(),
            descriptives: descriptives(&values)?,
            normality,
            normality_note,
            kde_bandwidth: density.as_ref().map(|d| d.bandwidth),
        },
        density,
    ))
}

fn analyze_corpus(c: &CorpusConfig, config: &RunConfig, resolved: &Resolved) -> Result<CorpusAnalysis> {
    let a = &config.analysis;
    let (corpus, records_read, skipped) = load_corpus(c)?;
    let authors = match c.author_total {
        Some(total) => AuthorCounts::DistinctTotal(total),
        None => AuthorCounts::FromRecords,
    };
    let bibliometrics = bibliometric_descriptives(&corpus, &authors)?;

    let records = corpus
        .iter()
        .map(|r| {
            resolved
                .analyzer
                .measure(r)
                .map_err(|e| e.in_corpus(&corpus.label, Some(&r.id)))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut metrics = Vec::new();
    let mut densities = Vec::new();
    for metric in Metric::ALL {
        let (summary, density) = summarize_metric(metric, &records, a.kde_grid_points)?;
        metrics.push(summary);
        if let Some(d) = density {
            densities.push((metric, d));
        }
    }

    let titles: Vec<&str> = corpus.iter().map(|r| r.title.as_str()).collect();
    let graph = build_coword_graph(&titles, &resolved.graph_policy)?;
    let partition = if graph.node_count() == 0 {
        CommunityPartition {
            assignment: Default::default(),
            modularity_q: 0.0,
        }
    } else {
        louvain_communities(&graph, a.resolution, a.louvain_seed)?
    };
    let scores = betweenness(&graph, a.edge_length);
    let clusters = cluster_summary(&graph, &partition, &scores, a.top_clusters)?;

    let report = CorpusReport {
        label: corpus.label.clone(),
        documents: corpus.len(),
        skipped_empty_titles: skipped,
        bibliometrics,
        metrics,
        network: NetworkReport {
            node_count: graph.node_count(),
            edge_count: graph.edge_count(),
            modularity_q: partition.modularity_q,
            clusters,
        },
    };
    let provenance = CorpusProvenance {
        label: corpus.label.clone(),
        source_file: file_name(&c.csv_path),
        records_read,
        sample_size: c.sample_size,
        seed: c.seed,
    };
    Ok(CorpusAnalysis {
        corpus,
        records,
        densities,
        graph,
        partition,
        scores,
        report,
        provenance,
    })
}

/// Rank-sum comparison of every metric between two metric tables.
pub fn compare_metric_records(a: &[LexicalRecord], b: &[LexicalRecord]) -> Result<Vec<MetricComparison>> {
    Metric::ALL
        .iter()
        .map(|&metric| {
            let rank_sum = wilcoxon_rank_sum(&metric.values(a), &metric.values(b))
                .map_err(|e| Error::Domain(format!("{}: {e}", metric.name())))?;
            Ok(MetricComparison {
                metric,
                rank_sum,
                p_display: format_p(rank_sum.p_value),
            })
        })
        .collect()
}

/// Runs the analysis and builds the report without writing any files.
pub fn analyze(config: &RunConfig) -> Result<(ComparisonReport, Vec<CorpusAnalysis>)> {
    config.validate()?;
    let resolved = resolve(config)?;
    let analyses = config
        .corpora
        .iter()
        .map(|c| analyze_corpus(c, config, &resolved).map_err(|e| with_corpus(e, &c.label)))
        .collect::<Result<Vec<_>>>()?;
    let comparisons = compare_metric_records(&analyses[0].records, &analyses[1].records)?;
    let a = &config.analysis;
    let report = ComparisonReport {
        corpora: analyses.iter().map(|x| x.report.clone()).collect(),
        comparisons,
        provenance: Provenance {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            sampler_algorithm: SAMPLER_ALGORITHM.to_string(),
            corpora: analyses.iter().map(|x| x.provenance.clone()).collect(),
            louvain_seed: a.louvain_seed,
            resolution: a.resolution,
            min_title_frequency: a.min_title_frequency,
            edge_length: a.edge_length,
            kde_grid_points: a.kde_grid_points,
            tokenize_rules: TokenPolicy::VERSION.to_string(),
            sentence_rules: SENTENCE_RULES_VERSION.to_string(),
            syllable_rules: SYLLABLE_RULES_VERSION.to_string(),
            title_char_convention: CharConvention::Normalized,
            token_policy: resolved.analyzer.token_policy,
            stopwords: resolved.stopwords_source.clone(),
            abbreviations: resolved.abbreviations_source.clone(),
            generated_at: Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)),
        },
    };
    self_audit(&report, &analyses)?;
    Ok((report, analyses))
}

fn with_corpus(e: Error, label: &str) -> Error {
    match e {
        e @ Error::Context { .. } => e,
        e => e.in_corpus(label, None),
    }
}

/// Re-reads each metric table as it will be written and checks it against
/// the report: every document exactly once, descriptives identical.
fn self_audit(report: &ComparisonReport, analyses: &[CorpusAnalysis]) -> Result<()> {
    for (x, corpus_report) in analyses.iter().zip(&report.corpora) {
        let mut buf = Vec::new();
        write_metric_csv(&x.records, &mut buf)?;
        let reread = read_metric_csv(buf.as_slice())?;
        let ids: Vec<&str> = reread.iter().map(|r| r.doc_id.as_str()).collect();
        let unique: HashSet<&str> = ids.iter().copied().collect();
        if unique.len() != ids.len() || ids.iter().ne(x.corpus.iter().map(|r| &r.id)) {
            return Err(Error::Internal(format!(
                "metric table for {} does not list each document once",
                x.corpus.label
            )));
        }
        for summary in &corpus_report.metrics {
            let again = descriptives(&summary.metric.values(&reread))?;
            if again != summary.descriptives {
                return Err(Error::Internal(format!(
                    "{} descriptives for {} differ from the metric table",
                    summary.metric.name(),
                    x.corpus.label
                )));
            }
        }
    }
    Ok(())
}

/// A finished run: the report plus the artifact paths in the output
/// directory.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: ComparisonReport,
    pub files: Vec<PathBuf>,
}

/// Runs the comparison and writes the requested artifacts. Files are built
/// in a staging directory next to the output directory and moved into place
/// only after everything succeeded.
pub fn run_compare(config: &RunConfig) -> Result<RunOutput> {
    let (report, analyses) = analyze(config)?;
    let out = &config.output.dir;
    let parent = match out.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&parent).map_err(|e| Error::io(&parent, e))?;
    let staging = tempfile::Builder::new()
        .prefix(".lexigauge-staging-")
        .tempdir_in(&parent)
        .map_err(|e| Error::io(&parent, e))?;
    let names = write_artifacts(&report, &analyses, &config.output.formats, staging.path())?;

    if !out.exists() {
        let staged = staging.keep();
        fs::rename(&staged, out).map_err(|e| Error::io(out, e))?;
    } else {
        for name in &names {
            let target = out.join(name);
            fs::rename(staging.path().join(name), &target).map_err(|e| Error::io(&target, e))?;
        }
    }
    Ok(RunOutput {
        report,
        files: names.iter().map(|n| out.join(n)).collect(),
    })
}

fn density_of(x: &CorpusAnalysis, metric: Metric) -> Option<&DensitySeries> {
    x.densities.iter().find(|(m, _)| *m == metric).map(|(_, d)| d)
}

fn write_file(dir: &Path, name: &str, bytes: &[u8], names: &mut Vec<String>) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
    names.push(name.to_string());
    Ok(())
}

/// Writes artifacts into `dir` and returns their file names.
pub fn write_artifacts(
    report: &ComparisonReport,
    analyses: &[CorpusAnalysis],
    formats: &BTreeSet<OutputFormat>,
    dir: &Path,
) -> Result<Vec<String>> {
    let mut names = Vec::new();
    if formats.contains(&OutputFormat::Json) {
        write_file(dir, "report.json", report.to_json().as_bytes(), &mut names)?;
    }
    for x in analyses {
        let s = slug(&x.corpus.label);
        if formats.contains(&OutputFormat::Csv) {
            let mut buf = Vec::new();
            write_metric_csv(&x.records, &mut buf)?;
            write_file(dir, &format!("{s}_metrics.csv"), &buf, &mut names)?;
            for (metric, series) in &x.densities {
                let mut buf = Vec::new();
                write_density_csv(series, &mut buf)?;
                write_file(dir, &format!("{s}_{}_density.csv", metric.name()), &buf, &mut names)?;
            }
        }
        for (format, graph_format) in [
            (OutputFormat::Gexf, GraphFormat::Gexf),
            (OutputFormat::Graphml, GraphFormat::Graphml),
        ] {
            if formats.contains(&format) {
                let mut buf = Vec::new();
                export_graph(&x.graph, &x.partition, &x.scores, graph_format, &mut buf)?;
                write_file(
                    dir,
                    &format!("{s}_titles.{}", graph_format.extension()),
                    &buf,
                    &mut names,
                )?;
            }
        }
    }
    if formats.contains(&OutputFormat::Svg) {
        let labels = [analyses[0].corpus.label.as_str(), analyses[1].corpus.label.as_str()];
        for metric in Metric::ALL {
            if let (Some(a), Some(b)) = (density_of(&analyses[0], metric), density_of(&analyses[1], metric)) {
                let svg = emit_density_svg(a, b, labels, metric.axis_label())?;
                write_file(
                    dir,
                    &format!("{}_density.svg", metric.name()),
                    svg.as_bytes(),
                    &mut names,
                )?;
            }
        }
    }
    Ok(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_display() {
        assert_eq!(format_p(4.52e-9), "4.52e-9");
        assert_eq!(format_p(6.1234e-15), "6.12e-15");
        assert_eq!(format_p(0.5), "5.00e-1");
    }

    #[test]
    fn metric_values_skip_missing() {
        let rows = [
            LexicalRecord {
                doc_id: "a".into(),
                title_length_chars: 10,
                fkgl: Some(12.0),
                yules_k: Some(80.0),
            },
            LexicalRecord {
                doc_id: "b".into(),
                title_length_chars: 20,
                fkgl: None,
                yules_k: None,
            },
        ];
        assert_eq!(Metric::TitleLengthChars.values(&rows), [10.0, 20.0]);
        assert_eq!(Metric::Fkgl.values(&rows), [12.0]);
        let cmp = compare_metric_records(&rows, &rows).unwrap();
        assert_eq!(cmp.len(), 3);
        assert!(cmp.iter().all(|c| c.rank_sum.p_value == 1.0));
    }
}
