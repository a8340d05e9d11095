//! Synthetic corpora for benchmarks. Every generator is seeded, so runs
//! measure the same inputs.

use lexigauge::{BibRecord, Corpus};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOPICS: [&[&str]; 4] = [
    &[
        "leadership",
        "team",
        "performance",
        "identity",
        "behavior",
        "emotion",
        "voice",
    ],
    &[
        "strategy",
        "firm",
        "governance",
        "board",
        "acquisition",
        "alliance",
        "capability",
    ],
    &[
        "tourism",
        "region",
        "export",
        "market",
        "rural",
        "business",
        "development",
    ],
    &[
        "education",
        "policy",
        "health",
        "public",
        "school",
        "teacher",
        "community",
    ],
];
const FILLER: [&str; 8] = ["the", "of", "in", "and", "a", "for", "on", "with"];
const ABSTRACT_WORDS: [&str; 24] = [
    "we",
    "examine",
    "how",
    "organizational",
    "members",
    "interpret",
    "signals",
    "across",
    "settings",
    "this",
    "study",
    "analyzes",
    "local",
    "companies",
    "results",
    "survey",
    "owners",
    "workers",
    "theory",
    "evidence",
    "collective",
    "processes",
    "implications",
    "research",
];

/// A title of four to seven words drawn from one topic plus filler.
pub fn synthetic_title<R: Rng>(rng: &mut R) -> String {
    let topic = TOPICS.choose(rng).unwrap();
    let n = rng.random_range(3..=5);
    let mut words: Vec<&str> = topic.choose_multiple(rng, n).copied().collect();
    words.insert(1, FILLER.choose(rng).unwrap());
    if rng.random_bool(0.3) {
        words.push("innovation");
    }
    words.join(" ")
}

/// An abstract of `sentences` sentences of 8 to 30 words.
pub fn synthetic_abstract<R: Rng>(rng: &mut R, sentences: usize) -> String {
    (0..sentences)
        .map(|_| {
            let n = rng.random_range(8..=30);
            let words: Vec<&str> = (0..n).map(|_| *ABSTRACT_WORDS.choose(rng).unwrap()).collect();
            let mut s = words.join(" ");
            s[..1].make_ascii_uppercase();
            s + "."
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn synthetic_corpus(label: &str, docs: usize, seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let records = (0..docs)
        .map(|i| {
            let title = synthetic_title(&mut rng);
            let sentences = rng.random_range(3..=9);
            BibRecord {
                id: format!("{label}-{i}"),
                title,
                abstract_text: synthetic_abstract(&mut rng, sentences),
                year: Some(rng.random_range(2000..2021)),
                venue: label.to_string(),
                citations: rng.random_range(0..500),
                author_count: rng.random_range(1..8),
            }
        })
        .collect();
    Corpus::new(label, records).expect("synthetic ids are unique")
}

/// Two normal samples with a location shift, for rank-sum benchmarks.
pub fn shifted_samples(n: usize, shift: f64, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut normal = || {
        let u1: f64 = 1.0 - rng.random::<f64>();
        let u2: f64 = rng.random();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    };
    let x = (0..n).map(|_| normal()).collect();
    let y = (0..n).map(|_| normal() + shift).collect();
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible() {
        let a = synthetic_corpus("a", 30, 1);
        assert_eq!(a.records(), synthetic_corpus("a", 30, 1).records());
        assert!(a.iter().all(|r| !r.title.is_empty() && r.abstract_text.ends_with('.')));
    }
}
