use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::ColumnMap;
use crate::semnet::EdgeLength;
use crate::stats::MIN_GRID_POINTS;

/// Artifact kinds written by a comparison run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    /// `report.json`.
    Json,
    /// Per-document metric CSVs and density CSVs.
    Csv,
    /// Density charts, one per metric.
    Svg,
    Gexf,
    Graphml,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            "gexf" => Ok(OutputFormat::Gexf),
            "graphml" => Ok(OutputFormat::Graphml),
            other => Err(Error::Config(format!("unknown output format `{other}`"))),
        }
    }
}

/// Parses a comma-separated format list such as `json,csv,svg`.
pub fn parse_formats(list: &str) -> Result<BTreeSet<OutputFormat>> {
    let formats = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<BTreeSet<_>>>()?;
    if formats.is_empty() {
        return Err(Error::Config("no output formats given".to_string()));
    }
    Ok(formats)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusConfig {
    pub label: String,
    pub csv_path: PathBuf,
    #[serde(default)]
    pub columns: ColumnMap,
    /// Draw this many documents without replacement before analysis.
    pub sample_size: Option<usize>,
    pub seed: Option<u64>,
    /// Distinct-author total for the corpus, if known. Otherwise the sum of
    /// the per-record author counts is used.
    pub author_total: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub min_title_frequency: u32,
    pub edge_length: EdgeLength,
    pub resolution: f64,
    pub louvain_seed: u64,
    pub top_clusters: usize,
    pub kde_grid_points: usize,
    /// Stopword list for the co-word graphs; the bundled list when unset.
    pub stopwords: Option<PathBuf>,
    /// `key = value` token policy file.
    pub token_policy: Option<PathBuf>,
    /// Abbreviation list, one per line.
    pub abbreviations: Option<PathBuf>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            min_title_frequency: 2,
            edge_length: EdgeLength::Unit,
            resolution: 1.0,
            louvain_seed: 0,
            top_clusters: 3,
            kde_grid_points: 512,
            stopwords: None,
            token_policy: None,
            abbreviations: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub formats: BTreeSet<OutputFormat>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: PathBuf::from("lexigauge-out"),
            formats: [
                OutputFormat::Json,
                OutputFormat::Csv,
                OutputFormat::Svg,
                OutputFormat::Gexf,
            ]
            .into(),
        }
    }
}

/// A two-corpus comparison, usually read from TOML:
///
/// ```toml
/// [[corpus]]
/// label = "Journal A"
/// csv_path = "journal_a.csv"
/// sample_size = 500
/// seed = 7
///
/// [[corpus]]
/// label = "Journal B"
/// csv_path = "journal_b.csv"
///
/// [analysis]
/// kde_grid_points = 256
///
/// [output]
/// dir = "out"
/// formats = ["json", "csv"]
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "corpus")]
    pub corpora: Vec<CorpusConfig>,
    #[serde(default)]
    pub analysis: AnalysisConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

impl RunConfig {
    /// Parses TOML. Relative paths are resolved against `base_dir`.
    pub fn from_toml(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base_dir.join(&*p);
            }
        };
        for c in &mut cfg.corpora {
            resolve(&mut c.csv_path);
        }
        for p in [
            &mut cfg.analysis.stopwords,
            &mut cfg.analysis.token_policy,
            &mut cfg.analysis.abbreviations,
        ]
        .into_iter()
        .flatten()
        {
            resolve(p);
        }
        resolve(&mut cfg.output.dir);
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        RunConfig::from_toml(&text, base)
    }

    pub fn validate(&self) -> Result<()> {
        if self.corpora.len() != 2 {
            return Err(Error::Config(format!(
                "exactly two corpora are compared, {} configured",
                self.corpora.len()
            )));
        }
        for c in &self.corpora {
            if c.label.trim().is_empty() {
                return Err(Error::Config("corpus label is empty".to_string()));
            }
            if c.sample_size.is_some() && c.seed.is_none() {
                return Err(Error::Config(format!("corpus {}: sample_size needs a seed", c.label)));
            }
        }
        if slug(&self.corpora[0].label) == slug(&self.corpora[1].label) {
            return Err(Error::Config("corpus labels must differ".to_string()));
        }
        let a = &self.analysis;
        if a.kde_grid_points < MIN_GRID_POINTS {
            return Err(Error::Config(format!(
                "kde_grid_points must be at least {MIN_GRID_POINTS}"
            )));
        }
        if !(a.resolution.is_finite() && a.resolution > 0.0) {
            return Err(Error::Config("resolution must be positive".to_string()));
        }
        if a.min_title_frequency == 0 {
            return Err(Error::Config("min_title_frequency must be at least 1".to_string()));
        }
        if self.output.formats.is_empty() {
            return Err(Error::Config("no output formats given".to_string()));
        }
        Ok(())
    }
}

/// File-name-safe form of a corpus label.
pub fn slug(label: &str) -> String {
    let s: String = label
        .trim()
        .chars()
        .map(|c| {
            if c.is_alphanumeric() {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect();
    s.trim_matches('_').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[[corpus]]
label = "A"
csv_path = "a.csv"
sample_size = 5
seed = 1

[[corpus]]
label = "B"
csv_path = "/data/b.csv"
"#;

    #[test]
    fn parse_and_resolve() {
        let c = RunConfig::from_toml(MINIMAL, Path::new("/cfg")).unwrap();
        c.validate().unwrap();
        assert_eq!(c.corpora[0].csv_path, Path::new("/cfg/a.csv"));
        assert_eq!(c.corpora[1].csv_path, Path::new("/data/b.csv"));
        assert_eq!(c.output.dir, Path::new("/cfg/lexigauge-out"));
        assert_eq!(c.analysis, AnalysisConfig::default());
    }

    #[test]
    fn sample_needs_seed() {
        let text = MINIMAL.replace("seed = 1\n", "");
        let c = RunConfig::from_toml(&text, Path::new(".")).unwrap();
        assert!(matches!(c.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn exactly_two_corpora() {
        let text = format!("{MINIMAL}\n[[corpus]]\nlabel = \"C\"\ncsv_path = \"c.csv\"\n");
        let c = RunConfig::from_toml(&text, Path::new(".")).unwrap();
        assert!(matches!(c.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = format!("{MINIMAL}\n[analysis]\nbandwith = 3\n");
        assert!(matches!(
            RunConfig::from_toml(&text, Path::new(".")),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn formats() {
        let f = parse_formats("json, svg,graphml").unwrap();
        assert_eq!(f.len(), 3);
        assert!(parse_formats("json,pdf").is_err());
        assert!(parse_formats("").is_err());
    }

    #[test]
    fn slugs() {
        assert_eq!(slug(" Journal of Mgmt. Q "), "journal_of_mgmt__q");
        assert_eq!(slug("Revista"), "revista");
    }
}
