//! Bibliographic CSV import, reproducible sampling and corpus-level
//! bibliometric descriptives.

use std::collections::{BTreeMap, HashSet};
use std::io::{self, Read, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identity of the sampling generator, recorded in reports so a sample can
/// be redrawn.
pub const SAMPLER_ALGORITHM: &str = "ChaCha8Rng::seed_from_u64 + rand::seq::index::sample (rand 0.9)";

/// One bibliographic document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BibRecord {
    pub id: String,
    pub title: String,
    /// Empty when the export has no abstract for the document.
    pub abstract_text: String,
    /// Publication year in `[1900, 2100]`, or `None` when the export leaves it blank.
    pub year: Option<i32>,
    pub venue: String,
    pub citations: u64,
    pub author_count: u32,
}

/// A labeled, ordered collection of records with unique ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corpus {
    pub label: String,
    records: Vec<BibRecord>,
}

impl Corpus {
    /// Builds a corpus, rejecting duplicate ids and empty titles.
    pub fn new(label: impl Into<String>, records: Vec<BibRecord>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, r) in records.iter().enumerate() {
            let row = i as u64 + 1;
            if r.title.trim().is_empty() {
                return Err(Error::Parse {
                    row,
                    message: format!("record {} has an empty title", r.id),
                });
            }
            if let Some(y) = r.year {
                check_year(y, row)?;
            }
            if !seen.insert(r.id.as_str()) {
                return Err(Error::Parse {
                    row,
                    message: format!("duplicate record id `{}`", r.id),
                });
            }
        }
        Ok(Corpus {
            label: label.into(),
            records,
        })
    }

    pub fn records(&self) -> &[BibRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BibRecord> {
        self.records.iter()
    }
}

fn check_year(year: i32, row: u64) -> Result<()> {
    if (1900..=2100).contains(&year) {
        Ok(())
    } else {
        Err(Error::Parse {
            row,
            message: format!("year {year} outside [1900, 2100]"),
        })
    }
}

/// Header names for each record field.
///
/// `None` means "use the default header if the file has it"; an explicit
/// name must be present in the header row. The title column is always
/// required.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ColumnMap {
    pub id: Option<String>,
    pub title: Option<String>,
    #[serde(rename = "abstract")]
    pub abstract_text: Option<String>,
    pub year: Option<String>,
    pub venue: Option<String>,
    pub citations: Option<String>,
    pub author_count: Option<String>,
}

impl ColumnMap {
    pub const DEFAULT_ID: &'static str = "EID";
    pub const DEFAULT_TITLE: &'static str = "Title";
    pub const DEFAULT_ABSTRACT: &'static str = "Abstract";
    pub const DEFAULT_YEAR: &'static str = "Year";
    pub const DEFAULT_VENUE: &'static str = "Source title";
    pub const DEFAULT_CITATIONS: &'static str = "Cited by";
    pub const DEFAULT_AUTHOR_COUNT: &'static str = "Author count";

    fn fields(&self) -> [(&Option<String>, &'static str); 7] {
        [
            (&self.id, Self::DEFAULT_ID),
            (&self.title, Self::DEFAULT_TITLE),
            (&self.abstract_text, Self::DEFAULT_ABSTRACT),
            (&self.year, Self::DEFAULT_YEAR),
            (&self.venue, Self::DEFAULT_VENUE),
            (&self.citations, Self::DEFAULT_CITATIONS),
            (&self.author_count, Self::DEFAULT_AUTHOR_COUNT),
        ]
    }

    /// Header names written by [`write_bibliographic_csv`].
    pub fn header_names(&self) -> [&str; 7] {
        self.fields()
            .map(|(explicit, default)| explicit.as_deref().unwrap_or(default))
    }

    fn resolve(&self, headers: &csv::StringRecord) -> Result<ResolvedColumns> {
        let find = |name: &str| headers.iter().position(|h| h.trim() == name);
        let mut idx = [None; 7];
        for (slot, (explicit, default)) in idx.iter_mut().zip(self.fields()) {
            *slot = match explicit {
                Some(name) => {
                    Some(find(name).ok_or_else(|| Error::Config(format!("column `{name}` is not in the CSV header")))?)
                }
                None => find(default),
            };
        }
        let title = idx[1].ok_or_else(|| {
            Error::Config(format!(
                "title column `{}` is not in the CSV header",
                self.title.as_deref().unwrap_or(Self::DEFAULT_TITLE)
            ))
        })?;
        Ok(ResolvedColumns {
            id: idx[0],
            title,
            abstract_text: idx[2],
            year: idx[3],
            venue: idx[4],
            citations: idx[5],
            author_count: idx[6],
        })
    }
}

struct ResolvedColumns {
    id: Option<usize>,
    title: usize,
    abstract_text: Option<usize>,
    year: Option<usize>,
    venue: Option<usize>,
    citations: Option<usize>,
    author_count: Option<usize>,
}

/// Result of a CSV import.
#[derive(Debug, Clone)]
pub struct CsvImport {
    pub corpus: Corpus,
    /// Data rows dropped because their title was empty.
    pub skipped_empty_titles: usize,
}

/// Reader adapter that records the byte offset of every `"`.
struct QuoteTracker<R> {
    inner: R,
    offset: u64,
    quotes: Vec<u64>,
}

impl<R: Read> Read for QuoteTracker<R> {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        let n = self.inner.read(buf)?;
        for (i, &b) in buf[..n].iter().enumerate() {
            if b == b'"' {
                self.quotes.push(self.offset + i as u64);
            }
        }
        self.offset += n as u64;
        Ok(n)
    }
}

/// Parses an RFC 4180 CSV export with a header row into a corpus.
///
/// Rows with an empty title are skipped and counted. Missing abstracts,
/// citation counts and author counts default to empty/0; a blank year stays
/// `None`. Records without an id column get `row-<n>` ids.
pub fn parse_bibliographic_csv<R: Read>(reader: R, label: &str, columns: &ColumnMap) -> Result<CsvImport> {
    let tracker = QuoteTracker {
        inner: reader,
        offset: 0,
        quotes: Vec::new(),
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(tracker);
    let headers = rdr.headers().map_err(|e| csv_error(e, 0))?.clone();
    let cols = columns.resolve(&headers)?;

    let mut records = Vec::new();
    let mut starts = Vec::new();
    let mut skipped = 0;
    let mut row = 0u64;
    let mut record = csv::StringRecord::new();
    // A stray quote swallows the rest of the file into one field, so field
    // count mismatches are reported only after quote parity is checked.
    let mut ragged: Option<(u64, usize)> = None;
    loop {
        match rdr.read_record(&mut record) {
            Ok(true) => {}
            Ok(false) => break,
            Err(e) => return Err(csv_error(e, row + 1)),
        }
        row += 1;
        starts.push(record.position().map_or(0, |p| p.byte()));
        if record.len() != headers.len() {
            ragged.get_or_insert((row, record.len()));
            continue;
        }

        let field = |i: Option<usize>| i.and_then(|i| record.get(i)).unwrap_or("").trim();
        let title = field(Some(cols.title));
        if title.is_empty() {
            skipped += 1;
            continue;
        }
        let id = match field(cols.id) {
            "" => format!("row-{row}"),
            id => id.to_string(),
        };
        let year = match field(cols.year) {
            "" => None,
            y => {
                let y: i32 = y.parse().map_err(|_| Error::Parse {
                    row,
                    message: format!("year `{y}` is not an integer"),
                })?;
                check_year(y, row)?;
                Some(y)
            }
        };
        records.push(BibRecord {
            id,
            title: title.to_string(),
            abstract_text: field(cols.abstract_text).to_string(),
            year,
            venue: field(cols.venue).to_string(),
            citations: parse_count(field(cols.citations), row, "citation count")?,
            author_count: parse_count(field(cols.author_count), row, "author count")?,
        });
    }

    let tracker = rdr.into_inner();
    if tracker.quotes.len() % 2 == 1 {
        return Err(Error::Parse {
            row: unbalanced_row(&starts, &tracker.quotes),
            message: "unbalanced quote".to_string(),
        });
    }
    if let Some((row, found)) = ragged {
        return Err(Error::Parse {
            row,
            message: format!("expected {} fields, found {found}", headers.len()),
        });
    }

    let mut seen = HashSet::new();
    for (i, r) in records.iter().enumerate() {
        if !seen.insert(r.id.as_str()) {
            return Err(Error::Parse {
                row: i as u64 + 1,
                message: format!("duplicate record id `{}`", r.id),
            });
        }
    }

    Ok(CsvImport {
        corpus: Corpus {
            label: label.to_string(),
            records,
        },
        skipped_empty_titles: skipped,
    })
}

/// First data row whose raw bytes hold an odd number of quote characters.
fn unbalanced_row(starts: &[u64], quotes: &[u64]) -> u64 {
    for (i, &start) in starts.iter().enumerate() {
        let end = starts.get(i + 1).copied().unwrap_or(u64::MAX);
        let n = quotes.iter().filter(|&&q| q >= start && q < end).count();
        if n % 2 == 1 {
            return i as u64 + 1;
        }
    }
    starts.len() as u64
}

fn parse_count<T: std::str::FromStr>(raw: &str, row: u64, what: &str) -> Result<T> {
    let raw = if raw.is_empty() { "0" } else { raw };
    raw.parse().map_err(|_| Error::Parse {
        row,
        message: format!("{what} `{raw}` is not a non-negative integer"),
    })
}

fn csv_error(e: csv::Error, fallback_row: u64) -> Error {
    let row = e
        .position()
        .map(|p| p.record())
        .filter(|&r| r > 0)
        .unwrap_or(fallback_row);
    Error::Parse {
        row,
        message: e.to_string(),
    }
}

/// Writes a corpus in the same CSV layout [`parse_bibliographic_csv`] reads.
pub fn write_bibliographic_csv<W: Write>(corpus: &Corpus, writer: W, columns: &ColumnMap) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(columns.header_names())?;
    for r in corpus.iter() {
        w.write_record([
            r.id.as_str(),
            r.title.as_str(),
            r.abstract_text.as_str(),
            &r.year.map(|y| y.to_string()).unwrap_or_default(),
            r.venue.as_str(),
            &r.citations.to_string(),
            &r.author_count.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv writer>", e))?;
    Ok(())
}

/// Uniform sample of `n` records without replacement, in input order.
///
/// The same `(corpus, n, seed)` always yields the same sample.
pub fn sample_corpus(corpus: &Corpus, n: usize, seed: u64) -> Result<Corpus> {
    if n == 0 {
        return Err(Error::Domain("sample size must be positive".to_string()));
    }
    if n > corpus.len() {
        return Err(Error::Size {
            label: corpus.label.clone(),
            requested: n,
            available: corpus.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = rand::seq::index::sample(&mut rng, corpus.len(), n).into_vec();
    picked.sort_unstable();
    Ok(Corpus {
        label: corpus.label.clone(),
        records: picked.into_iter().map(|i| corpus.records[i].clone()).collect(),
    })
}

/// Where author totals come from; the tool does no name disambiguation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuthorCounts {
    /// Sum of each record's `author_count` field.
    FromRecords,
    /// One author count per record, in corpus order.
    PerRecord(Vec<u32>),
    /// A precomputed corpus-level distinct-author total.
    DistinctTotal(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiblioSummary {
    pub document_count: usize,
    pub author_total: u64,
    pub authors_per_document: f64,
    pub citations_per_document: f64,
    /// Compound annual growth of yearly document counts, in percent.
    pub annual_growth_pct: f64,
    /// First and last publication year; `None` if no record has a year.
    pub timespan: Option<(i32, i32)>,
}

pub fn bibliometric_descriptives(corpus: &Corpus, authors: &AuthorCounts) -> Result<BiblioSummary> {
    if corpus.is_empty() {
        return Err(Error::Domain(format!("corpus {} is empty", corpus.label)));
    }
    let n = corpus.len();
    let author_total = match authors {
        AuthorCounts::FromRecords => corpus.iter().map(|r| u64::from(r.author_count)).sum(),
        AuthorCounts::PerRecord(counts) => {
            if counts.len() != n {
                return Err(Error::Domain(format!(
                    "{} author counts for {} documents",
                    counts.len(),
                    n
                )));
            }
            counts.iter().map(|&c| u64::from(c)).sum()
        }
        AuthorCounts::DistinctTotal(total) => *total,
    };
    let citations: u64 = corpus.iter().map(|r| r.citations).sum();

    let mut per_year: BTreeMap<i32, u64> = BTreeMap::new();
    for y in corpus.iter().filter_map(|r| r.year) {
        *per_year.entry(y).or_default() += 1;
    }
    let timespan = per_year
        .first_key_value()
        .zip(per_year.last_key_value())
        .map(|((&first, _), (&last, _))| (first, last));

    Ok(BiblioSummary {
        document_count: n,
        author_total,
        authors_per_document: author_total as f64 / n as f64,
        citations_per_document: citations as f64 / n as f64,
        annual_growth_pct: annual_growth_pct(&per_year),
        timespan,
    })
}

/// Compound annual growth rate between the first and last year, in percent.
/// Zero when fewer than two distinct years are present.
pub fn annual_growth_pct(per_year: &BTreeMap<i32, u64>) -> f64 {
    match (per_year.first_key_value(), per_year.last_key_value()) {
        (Some((&y0, &c0)), Some((&y1, &c1))) if y1 > y0 && c0 > 0 => {
            ((c1 as f64 / c0 as f64).powf(1.0 / f64::from(y1 - y0)) - 1.0) * 100.0
        }
        _ => 0.0,
    }
}
