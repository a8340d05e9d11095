//! Text segmentation primitives shared by every metric: word tokens,
//! sentences, syllables and the token frequency spectrum.
//!
//! Metric values depend on these rules, so each rule set carries a version
//! tag that ends up in report provenance.

mod sentences;
mod spectrum;
mod syllables;
mod tokenize;

pub use sentences::{split_sentences, split_sentences_with, Abbreviations, SentenceSplit, DEFAULT_ABBREVIATIONS};
pub use spectrum::{frequency_spectrum, FrequencySpectrum};
pub use syllables::{count_syllables, syllables, SyllableCount, SYLLABLE_RULES_VERSION};
pub use tokenize::{is_numeric_token, tokenize, TokenPolicy, TokenStream};

/// Version tag of the sentence splitter.
pub const SENTENCE_RULES_VERSION: &str = "sentences-v1";
