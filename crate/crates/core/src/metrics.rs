//! Per-document lexical measures: title length in characters, Flesch-Kincaid
//! grade level of the abstract, and Yule's K of the abstract.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::BibRecord;
use crate::textproc::{
    self, split_sentences_with, tokenize, Abbreviations, FrequencySpectrum, TokenPolicy, TokenStream,
};

/// How title characters are counted.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharConvention {
    /// Unicode scalar values after trimming and collapsing whitespace runs to
    /// one space; spaces and punctuation count.
    #[default]
    Normalized,
    /// Unicode scalar values that are not whitespace.
    NonWhitespace,
}

/// Title length under the default [`CharConvention::Normalized`] rule.
pub fn title_length(title: &str) -> Result<usize> {
    title_length_with(title, CharConvention::Normalized)
}

pub fn title_length_with(title: &str, convention: CharConvention) -> Result<usize> {
    let words: Vec<&str> = title.split_whitespace().collect();
    if words.is_empty() {
        return Err(Error::Domain("title is empty".to_string()));
    }
    let letters: usize = words.iter().map(|w| w.chars().count()).sum();
    Ok(match convention {
        CharConvention::Normalized => letters + words.len() - 1,
        CharConvention::NonWhitespace => letters,
    })
}

/// Word, sentence and syllable totals of a text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReadabilityCounts {
    pub words: usize,
    pub sentences: usize,
    pub syllables: usize,
}

impl ReadabilityCounts {
    pub fn fkgl(&self) -> Result<f64> {
        fkgl_from_counts(self.words, self.sentences, self.syllables)
    }
}

/// `0.39 (w/sen) + 11.8 (syll/w) − 15.59`.
pub fn fkgl_from_counts(words: usize, sentences: usize, syllables: usize) -> Result<f64> {
    if words == 0 {
        return Err(Error::Domain("FKGL needs at least one word".to_string()));
    }
    if sentences == 0 {
        return Err(Error::Domain("FKGL needs at least one sentence".to_string()));
    }
    let w = words as f64;
    Ok(0.39 * (w / sentences as f64) + 11.8 * (syllables as f64 / w) - 15.59)
}

/// Yule's K from a frequency spectrum, `10⁴ · (Σ i²·f(i) − N) / N²`.
///
/// This equals `10⁴ · [−1/N + Σ f(i)·(i/N)²]`; the numerator is formed in
/// integers, so a sample of distinct tokens gives exactly 0.
pub fn yules_k_from_spectrum(spectrum: &FrequencySpectrum) -> Result<f64> {
    let n = spectrum.token_count as u128;
    if n == 0 {
        return Err(Error::Domain("Yule's K needs at least one token".to_string()));
    }
    let sum_sq: u128 = spectrum
        .spectrum
        .iter()
        .map(|(&i, &f)| (i as u128) * (i as u128) * (f as u128))
        .sum();
    Ok(1e4 * (sum_sq - n) as f64 / (n * n) as f64)
}

pub fn yules_k(tokens: &TokenStream) -> Result<f64> {
    yules_k_from_spectrum(&textproc::frequency_spectrum(tokens))
}

/// Flesch-Kincaid grade level of a text with the default segmentation rules.
pub fn fkgl(text: &str) -> Result<f64> {
    LexicalAnalyzer::default().fkgl(text)
}

/// Segmentation settings shared by the text metrics.
#[derive(Debug, Clone, Default)]
pub struct LexicalAnalyzer {
    pub token_policy: TokenPolicy,
    pub abbreviations: Abbreviations,
}

impl LexicalAnalyzer {
    pub fn tokens(&self, text: &str) -> TokenStream {
        tokenize(text, &self.token_policy)
    }

    pub fn readability_counts(&self, text: &str) -> ReadabilityCounts {
        let tokens = self.tokens(text);
        ReadabilityCounts {
            words: tokens.len(),
            sentences: split_sentences_with(text, &self.abbreviations).len(),
            syllables: tokens.iter().map(textproc::syllables).sum(),
        }
    }

    pub fn fkgl(&self, text: &str) -> Result<f64> {
        self.readability_counts(text).fkgl()
    }

    pub fn yules_k(&self, text: &str) -> Result<f64> {
        yules_k(&self.tokens(text))
    }

    /// Metrics for one record. Abstract metrics are `None` when the abstract
    /// has no words.
    pub fn measure(&self, record: &BibRecord) -> Result<LexicalRecord> {
        let title_length_chars = title_length(&record.title)?;
        let tokens = self.tokens(&record.abstract_text);
        let (fkgl, yules_k) = if tokens.is_empty() {
            (None, None)
        } else {
            let counts = ReadabilityCounts {
                words: tokens.len(),
                sentences: split_sentences_with(&record.abstract_text, &self.abbreviations).len(),
                syllables: tokens.iter().map(textproc::syllables).sum(),
            };
            (Some(counts.fkgl()?), Some(yules_k(&tokens)?))
        };
        Ok(LexicalRecord {
            doc_id: record.id.clone(),
            title_length_chars,
            fkgl,
            yules_k,
        })
    }
}

/// The three measures for one document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexicalRecord {
    pub doc_id: String,
    pub title_length_chars: usize,
    pub fkgl: Option<f64>,
    pub yules_k: Option<f64>,
}

/// Column header of the per-document metric CSV.
pub const METRIC_CSV_HEADER: [&str; 4] = ["doc_id", "title_length_chars", "fkgl", "yules_k"];

/// Writes `doc_id,title_length_chars,fkgl,yules_k` rows at full precision.
/// Missing abstract metrics are left blank.
pub fn write_metric_csv<W: Write>(records: &[LexicalRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(METRIC_CSV_HEADER)?;
    let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
    for r in records {
        w.write_record([
            r.doc_id.clone(),
            r.title_length_chars.to_string(),
            opt(r.fkgl),
            opt(r.yules_k),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<metric csv>", e))?;
    Ok(())
}

pub fn read_metric_csv<R: Read>(reader: R) -> Result<Vec<LexicalRecord>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.iter().map(str::trim).ne(METRIC_CSV_HEADER) {
        return Err(Error::Config(format!(
            "metric CSV header must be `{}`",
            METRIC_CSV_HEADER.join(",")
        )));
    }
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i as u64 + 1;
        let rec = rec.map_err(|e| Error::Parse {
            row,
            message: e.to_string(),
        })?;
        let num = |j: usize| -> Result<Option<f64>> {
            match rec.get(j).unwrap_or("").trim() {
                "" => Ok(None),
                v => v.parse().map(Some).map_err(|_| Error::Parse {
                    row,
                    message: format!("`{v}` is not a number"),
                }),
            }
        };
        let title_length_chars = rec.get(1).unwrap_or("").trim().parse().map_err(|_| Error::Parse {
            row,
            message: "title_length_chars is not an integer".to_string(),
        })?;
        out.push(LexicalRecord {
            doc_id: rec.get(0).unwrap_or("").to_string(),
            title_length_chars,
            fkgl: num(2)?,
            yules_k: num(3)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn title_lengths() {
        assert_eq!(title_length("Mediated Sensemaking").unwrap(), 20);
        assert_eq!(title_length("abc").unwrap(), 3);
        assert_eq!(title_length("  a \t\n b  ").unwrap(), 3);
        assert_eq!(title_length("Cortés, ¿qué?").unwrap(), 13);
        assert!(matches!(title_length(" \n"), Err(Error::Domain(_))));
        assert_eq!(
            title_length_with("Mediated Sensemaking", CharConvention::NonWhitespace).unwrap(),
            19
        );
    }

    #[test]
    fn fkgl_hand_values() {
        assert!((fkgl("The cat sat.").unwrap() - (-2.62)).abs() < 0.01);
        assert!((fkgl_from_counts(4, 2, 4).unwrap() - (-3.01)).abs() < 1e-12);
        assert!((fkgl("Aaa bbb. Ccc ddd.").unwrap() - (-3.01)).abs() < 1e-12);
    }

    #[test]
    fn fkgl_errors() {
        assert!(matches!(fkgl(""), Err(Error::Domain(_))));
        assert!(matches!(fkgl("... !"), Err(Error::Domain(_))));
        assert!(matches!(fkgl_from_counts(3, 0, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn yules_k_hand_values() {
        let k = |t: &[&str]| yules_k_from_spectrum(&FrequencySpectrum::from_tokens(t)).unwrap();
        assert_eq!(k(&["a", "b", "c", "d"]), 0.0);
        assert_eq!(k(&["a", "b", "a", "b"]), 2500.0);
        assert_eq!(k(&["a"]), 0.0);
        assert!(matches!(
            yules_k_from_spectrum(&FrequencySpectrum::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn measure_record_without_abstract() {
        let rec = BibRecord {
            id: "x".into(),
            title: "Mediated Sensemaking".into(),
            abstract_text: "  ".into(),
            year: None,
            venue: String::new(),
            citations: 0,
            author_count: 0,
        };
        let m = LexicalAnalyzer::default().measure(&rec).unwrap();
        assert_eq!(m.title_length_chars, 20);
        assert_eq!((m.fkgl, m.yules_k), (None, None));
    }

    #[test]
    fn metric_csv_keeps_full_precision() {
        let rows = vec![
            LexicalRecord {
                doc_id: "a,1".into(),
                title_length_chars: 12,
                fkgl: Some(0.1 + 0.2),
                yules_k: Some(1.0 / 3.0),
            },
            LexicalRecord {
                doc_id: "b".into(),
                title_length_chars: 5,
                fkgl: None,
                yules_k: None,
            },
        ];
        let mut buf = Vec::new();
        write_metric_csv(&rows, &mut buf).unwrap();
        assert!(String::from_utf8_lossy(&buf).starts_with("doc_id,title_length_chars,fkgl,yules_k\n"));
        assert_eq!(read_metric_csv(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn metric_csv_rejects_bad_input() {
        assert!(matches!(
            read_metric_csv("a,b\n1,2\n".as_bytes()),
            Err(Error::Config(_))
        ));
        let bad = "doc_id,title_length_chars,fkgl,yules_k\nx,3,high,\n";
        assert!(matches!(
            read_metric_csv(bad.as_bytes()),
            Err(Error::Parse { row: 1, .. })
        ));
    }
}
