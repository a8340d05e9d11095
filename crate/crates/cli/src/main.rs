//! `lexigauge` command line: two-corpus comparisons and piecewise runs of the
//! metric, graph and test stages.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use lexigauge::ingest::{parse_bibliographic_csv, ColumnMap};
use lexigauge::metrics::{read_metric_csv, write_metric_csv, LexicalAnalyzer};
use lexigauge::report::{compare_metric_records, parse_formats, run_compare, CorpusConfig, RunConfig};
use lexigauge::semnet::{
    betweenness, build_coword_graph, export_graph, louvain_communities, EdgeLength, GraphFormat, GraphPolicy, Stopwords,
};
use lexigauge::Error;

const STOPWORDS_ENV: &str = "LEXIGAUGE_STOPWORDS";

#[derive(Parser)]
#[command(
    name = "lexigauge",
    version,
    about = "Compare title and abstract lexicometrics of two bibliographic corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full comparison and write the report bundle.
    Compare(CompareArgs),
    /// Per-document metric CSV for one corpus.
    Metrics {
        csv: PathBuf,
        /// Corpus label used in error messages.
        #[arg(long)]
        label: Option<String>,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Title co-word graph for one corpus.
    Semnet {
        csv: PathBuf,
        #[arg(long, default_value = "gexf")]
        format: String,
        #[arg(long)]
        stopwords: Option<PathBuf>,
        /// Minimum number of titles a word must appear in.
        #[arg(long, default_value_t = 2)]
        min_frequency: u32,
        /// Shortest paths weighted by inverse co-occurrence.
        #[arg(long)]
        weighted: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank-sum tests between two metric CSVs, as JSON.
    Stats { first: PathBuf, second: PathBuf },
}

#[derive(clap::Args)]
struct CompareArgs {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    corpus_a: Option<PathBuf>,
    #[arg(long)]
    label_a: Option<String>,
    #[arg(long)]
    corpus_b: Option<PathBuf>,
    #[arg(long)]
    label_b: Option<String>,
    /// Sample this many documents from each corpus.
    #[arg(long)]
    sample_size: Option<usize>,
    /// Sampling seed for both corpora.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    stopwords: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated list of json, csv, svg, gexf, graphml.
    #[arg(long)]
    formats: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 1 for bad input or configuration, 2 for failures inside the tool.
fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<Error>() {
            return if err.is_input_error() { 1 } else { 2 };
        }
        if cause.downcast_ref::<io::Error>().is_some() || cause.downcast_ref::<UsageError>().is_some() {
            return 1;
        }
    }
    2
}

/// Arguments that parse but do not form a runnable command.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Compare(args) => compare(args),
        Command::Metrics { csv, label, out } => metrics(&csv, label, out.as_deref()),
        Command::Semnet {
            csv,
            format,
            stopwords,
            min_frequency,
            weighted,
            seed,
            out,
        } => semnet(&csv, &format, stopwords, min_frequency, weighted, seed, out.as_deref()),
        Command::Stats { first, second } => stats(&first, &second),
    }
}

fn label_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".to_string())
}

fn env_stopwords() -> Option<PathBuf> {
    std::env::var_os(STOPWORDS_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

fn build_config(args: CompareArgs) -> anyhow::Result<RunConfig> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => {
            let (Some(a), Some(b)) = (&args.corpus_a, &args.corpus_b) else {
                return Err(UsageError("compare needs --config or both --corpus-a and --corpus-b".into()).into());
            };
            let corpus = |path: &PathBuf| CorpusConfig {
                label: label_of(path),
                csv_path: path.clone(),
                columns: ColumnMap::default(),
                sample_size: None,
                seed: None,
                author_total: None,
            };
            RunConfig {
                corpora: vec![corpus(a), corpus(b)],
                analysis: Default::default(),
                output: Default::default(),
            }
        }
    };
    for (i, (path, label)) in [(args.corpus_a, args.label_a), (args.corpus_b, args.label_b)]
        .into_iter()
        .enumerate()
    {
        let Some(c) = cfg.corpora.get_mut(i) else { continue };
        if let Some(p) = path {
            c.csv_path = p;
        }
        if let Some(l) = label {
            c.label = l;
        }
    }
    for c in &mut cfg.corpora {
        if args.sample_size.is_some() {
            c.sample_size = args.sample_size;
        }
        if args.seed.is_some() {
            c.seed = args.seed;
        }
    }
    if let Some(p) = args.stopwords {
        cfg.analysis.stopwords = Some(p);
    } else if cfg.analysis.stopwords.is_none() {
        cfg.analysis.stopwords = env_stopwords();
    }
    if let Some(dir) = args.out {
        cfg.output.dir = dir;
    }
    if let Some(list) = args.formats {
        cfg.output.formats = parse_formats(&list)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn compare(args: CompareArgs) -> anyhow::Result<()> {
    let cfg = build_config(args)?;
    let out = run_compare(&cfg)?;
    let mut stdout = io::stdout().lock();
    for c in &out.report.comparisons {
        writeln!(
            stdout,
            "{}: p={} r={:.3}",
            c.metric.name(),
            c.p_display,
            c.rank_sum.effect_size_r
        )?;
    }
    for f in &out.files {
        writeln!(stdout, "wrote {}", f.display())?;
    }
    Ok(())
}

fn open(path: &Path) -> anyhow::Result<BufReader<File>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(BufReader::new(file))
}

/// Runs `write` against the `--out` file or stdout.
fn emit(out: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> anyhow::Result<()>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            let mut w = BufWriter::new(file);
            write(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = io::stdout().lock();
            write(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn metrics(csv: &Path, label: Option<String>, out: Option<&Path>) -> anyhow::Result<()> {
    let label = label.unwrap_or_else(|| label_of(csv));
    let import = parse_bibliographic_csv(open(csv)?, &label, &ColumnMap::default())?;
    let analyzer = LexicalAnalyzer::default();
    let records = import
        .corpus
        .iter()
        .map(|r| {
            analyzer.measure(r).map_err(|e| Error::Context {
                corpus: label.clone(),
                doc_id: Some(r.id.clone()),
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    emit(out, |w| Ok(write_metric_csv(&records, w)?))
}

fn semnet(
    csv: &Path,
    format: &str,
    stopwords: Option<PathBuf>,
    min_frequency: u32,
    weighted: bool,
    seed: u64,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let format: GraphFormat = format.parse()?;
    let stopwords = match stopwords.or_else(env_stopwords) {
        Some(p) => Stopwords::load(&p)?,
        None => Stopwords::default(),
    };
    let edge_length = if weighted {
        EdgeLength::InverseWeight
    } else {
        EdgeLength::Unit
    };
    let policy = GraphPolicy {
        min_title_frequency: min_frequency,
        stopwords,
        edge_length,
        ..GraphPolicy::default()
    };
    let import = parse_bibliographic_csv(open(csv)?, &label_of(csv), &ColumnMap::default())?;
    let titles: Vec<&str> = import.corpus.iter().map(|r| r.title.as_str()).collect();
    let graph = build_coword_graph(&titles, &policy)?;
    if graph.node_count() == 0 {
        return Err(anyhow!(Error::Domain(format!(
            "no title word reaches the minimum frequency of {min_frequency}"
        ))));
    }
    let partition = louvain_communities(&graph, 1.0, seed)?;
    let scores = betweenness(&graph, edge_length);
    emit(out, |w| Ok(export_graph(&graph, &partition, &scores, format, w)?))
}

fn stats(first: &Path, second: &Path) -> anyhow::Result<()> {
    let a = read_metric_csv(open(first)?)?;
    let b = read_metric_csv(open(second)?)?;
    let comparisons = compare_metric_records(&a, &b)?;
    let mut stdout = io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, &comparisons)?;
    writeln!(stdout)?;
    Ok(())
}
