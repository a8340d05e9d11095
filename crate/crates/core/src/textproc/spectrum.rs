use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::TokenStream;

/// Frequency spectrum of a token sample: for each occurrence count `i`, the
/// number of types occurring exactly `i` times.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FrequencySpectrum {
    /// N, the number of tokens.
    pub token_count: usize,
    /// V, the number of distinct types.
    pub type_count: usize,
    pub spectrum: BTreeMap<usize, usize>,
}

impl FrequencySpectrum {
    pub fn from_tokens<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut counts: HashMap<String, usize> = HashMap::new();
        let mut token_count = 0;
        for t in tokens {
            token_count += 1;
            *counts.entry(t.as_ref().to_owned()).or_default() += 1;
        }
        let mut spectrum = BTreeMap::new();
        for &c in counts.values() {
            *spectrum.entry(c).or_default() += 1;
        }
        FrequencySpectrum {
            token_count,
            type_count: counts.len(),
            spectrum,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.token_count == 0
    }
}

pub fn frequency_spectrum(tokens: &TokenStream) -> FrequencySpectrum {
    FrequencySpectrum::from_tokens(tokens.iter())
}
