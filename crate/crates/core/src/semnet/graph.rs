use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textproc::{is_numeric_token, tokenize, TokenPolicy};

const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords_en.txt");

/// Lowercase words removed before co-word graph construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stopwords(HashSet<String>);

impl Default for Stopwords {
    fn default() -> Self {
        Stopwords::parse(DEFAULT_STOPWORDS)
    }
}

impl Stopwords {
    /// One token per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Self {
        Stopwords(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_lowercase)
                .collect(),
        )
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Stopwords::parse(&text))
    }

    pub fn empty() -> Self {
        Stopwords(HashSet::new())
    }

    pub fn contains(&self, token: &str) -> bool {
        self.0.contains(token)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Edge length used for shortest paths in betweenness.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeLength {
    /// Every edge has length 1.
    #[default]
    Unit,
    /// Length `1 / weight`, so frequent co-occurrences are "closer".
    InverseWeight,
}

/// Co-word graph construction settings.
#[derive(Debug, Clone)]
pub struct GraphPolicy {
    /// Nodes appearing in fewer titles are pruned with their edges.
    pub min_title_frequency: u32,
    pub stopwords: Stopwords,
    pub token_policy: TokenPolicy,
    pub edge_length: EdgeLength,
}

impl Default for GraphPolicy {
    fn default() -> Self {
        GraphPolicy {
            min_title_frequency: 2,
            stopwords: Stopwords::default(),
            token_policy: TokenPolicy::default(),
            edge_length: EdgeLength::Unit,
        }
    }
}

/// Undirected weighted co-occurrence graph over title words.
///
/// Nodes are kept in lexicographic order; edge weights count the titles in
/// which both words occur.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoWordGraph {
    nodes: Vec<String>,
    node_frequency: Vec<u32>,
    /// Keyed by `(i, j)` node indices with `i < j`.
    edges: BTreeMap<(usize, usize), u32>,
}

impl CoWordGraph {
    /// Builds a graph from `(token, title frequency)` nodes and
    /// `(a, b, weight)` edges, checking the structural invariants.
    pub fn new<N, E>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = (String, u32)>,
        E: IntoIterator<Item = (String, String, u32)>,
    {
        let freq: BTreeMap<String, u32> = nodes.into_iter().collect();
        let nodes: Vec<String> = freq.keys().cloned().collect();
        let node_frequency: Vec<u32> = freq.values().copied().collect();
        let index = |name: &str| {
            nodes
                .binary_search_by(|n| n.as_str().cmp(name))
                .map_err(|_| Error::Consistency(format!("edge endpoint `{name}` is not a node")))
        };
        let mut edge_map = BTreeMap::new();
        for (a, b, w) in edges {
            let (i, j) = (index(&a)?, index(&b)?);
            if i == j {
                return Err(Error::Consistency(format!("self-loop on `{a}`")));
            }
            if w == 0 {
                return Err(Error::Consistency(format!("edge {a}–{b} has zero weight")));
            }
            if w > node_frequency[i].min(node_frequency[j]) {
                return Err(Error::Consistency(format!(
                    "edge {a}–{b} weight {w} exceeds an endpoint's title frequency"
                )));
            }
            if edge_map.insert((i.min(j), i.max(j)), w).is_some() {
                return Err(Error::Consistency(format!("duplicate edge {a}–{b}")));
            }
        }
        Ok(CoWordGraph {
            nodes,
            node_frequency,
            edges: edge_map,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &str {
        &self.nodes[i]
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.as_str().cmp(token)).ok()
    }

    /// Number of titles containing node `i`.
    pub fn frequency(&self, i: usize) -> u32 {
        self.node_frequency[i]
    }

    /// Edges as `(i, j, weight)` with `i < j`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.edges.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    pub fn weight(&self, a: &str, b: &str) -> Option<u32> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        self.edges.get(&(i.min(j), i.max(j))).copied()
    }

    /// Neighbor lists sorted by neighbor index.
    pub fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (i, j, w) in self.edges() {
            adj[i].push((j, w));
            adj[j].push((i, w));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.values().map(|&w| u64::from(w)).sum()
    }
}

/// Content words of one title, de-duplicated and sorted.
pub fn title_keywords(title: &str, policy: &GraphPolicy) -> BTreeSet<String> {
    tokenize(title, &policy.token_policy)
        .tokens
        .into_iter()
        .filter(|t| !is_numeric_token(t) && !policy.stopwords.contains(t))
        .collect()
}

/// Whole-title co-word graph: every pair of distinct content words in a
/// title is linked, weights accumulate over titles, and words found in fewer
/// than `min_title_frequency` titles are pruned with their edges.
pub fn build_coword_graph<S: AsRef<str>>(titles: &[S], policy: &GraphPolicy) -> Result<CoWordGraph> {
    if titles.is_empty() {
        return Err(Error::Domain("co-word graph needs at least one title".to_string()));
    }
    let mut freq: BTreeMap<String, u32> = BTreeMap::new();
    let mut pairs: BTreeMap<(String, String), u32> = BTreeMap::new();
    for title in titles {
        let words: Vec<String> = title_keywords(title.as_ref(), policy).into_iter().collect();
        for (i, a) in words.iter().enumerate() {
            *freq.entry(a.clone()).or_default() += 1;
            for b in &words[i + 1..] {
                *pairs.entry((a.clone(), b.clone())).or_default() += 1;
            }
        }
    }
    freq.retain(|_, f| *f >= policy.min_title_frequency);
    let edges = pairs
        .into_iter()
        .filter(|((a, b), _)| freq.contains_key(a) && freq.contains_key(b))
        .map(|((a, b), w)| (a, b, w))
        .collect::<Vec<_>>();
    CoWordGraph::new(freq, edges)
}
