//! Louvain community detection (local moves followed by aggregation) on the
//! weighted co-word graph.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::graph::CoWordGraph;
use crate::error::{Error, Result};

/// Node → community assignment with its modularity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityPartition {
    pub assignment: BTreeMap<String, usize>,
    pub modularity_q: f64,
}

impl CommunityPartition {
    pub fn community_count(&self) -> usize {
        self.assignment.values().max().map_or(0, |&c| c + 1)
    }

    /// Members of each community, indexed by community id, each sorted.
    pub fn members(&self) -> Vec<Vec<String>> {
        let mut out = vec![Vec::new(); self.community_count()];
        for (node, &c) in &self.assignment {
            out[c].push(node.clone());
        }
        out
    }
}

/// Weighted modularity `Σ_c [ in_c / 2m − γ (tot_c / 2m)² ]`.
///
/// Every graph node must be assigned. A graph without edges has `Q = 0`.
pub fn modularity(graph: &CoWordGraph, assignment: &BTreeMap<String, usize>, resolution: f64) -> Result<f64> {
    let comm: Vec<usize> = graph
        .nodes()
        .iter()
        .map(|n| {
            assignment
                .get(n)
                .copied()
                .ok_or_else(|| Error::Consistency(format!("node `{n}` has no community")))
        })
        .collect::<Result<_>>()?;
    if assignment.len() != graph.node_count() {
        return Err(Error::Consistency(
            "assignment names nodes outside the graph".to_string(),
        ));
    }
    let m2 = 2.0 * graph.total_weight() as f64;
    if m2 == 0.0 {
        return Ok(0.0);
    }
    let mut inside: BTreeMap<usize, f64> = BTreeMap::new();
    let mut total: BTreeMap<usize, f64> = BTreeMap::new();
    for (i, j, w) in graph.edges() {
        let w = f64::from(w);
        *total.entry(comm[i]).or_default() += w;
        *total.entry(comm[j]).or_default() += w;
        if comm[i] == comm[j] {
            *inside.entry(comm[i]).or_default() += 2.0 * w;
        }
    }
    Ok(total
        .iter()
        .map(|(c, &tot)| inside.get(c).copied().unwrap_or(0.0) / m2 - resolution * (tot / m2).powi(2))
        .sum())
}

/// Working graph of one Louvain level. `loops[i]` is the diagonal entry
/// `A_ii`, twice the weight collapsed into node `i`.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    loops: Vec<f64>,
}

impl Level {
    fn from_graph(graph: &CoWordGraph) -> Self {
        let adj = graph
            .adjacency()
            .into_iter()
            .map(|l| l.into_iter().map(|(j, w)| (j, f64::from(w))).collect())
            .collect();
        Level {
            adj,
            loops: vec![0.0; graph.node_count()],
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn degree(&self, i: usize) -> f64 {
        self.loops[i] + self.adj[i].iter().map(|&(_, w)| w).sum::<f64>()
    }

    /// Greedy local moves. Returns the community of each node, renumbered
    /// densely, and whether any node moved.
    fn local_moves(&self, resolution: f64, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
        let n = self.len();
        let k: Vec<f64> = (0..n).map(|i| self.degree(i)).collect();
        let m2: f64 = k.iter().sum();
        let mut comm: Vec<usize> = (0..n).collect();
        let mut tot = k.clone();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);

        let mut moved_any = false;
        loop {
            let mut moved = false;
            for &i in &order {
                let own = comm[i];
                let mut links: BTreeMap<usize, f64> = BTreeMap::new();
                links.insert(own, 0.0);
                for &(j, w) in &self.adj[i] {
                    *links.entry(comm[j]).or_default() += w;
                }
                tot[own] -= k[i];
                let gain = |c: usize, k_ic: f64| k_ic - resolution * tot[c] * k[i] / m2;
                let mut best = (own, gain(own, links[&own]));
                for (&c, &k_ic) in &links {
                    let g = gain(c, k_ic);
                    if g > best.1 + 1e-12 {
                        best = (c, g);
                    }
                }
                tot[best.0] += k[i];
                if best.0 != own {
                    comm[i] = best.0;
                    moved = true;
                    moved_any = true;
                }
            }
            if !moved {
                break;
            }
        }
        (renumber(&comm), moved_any)
    }

    fn aggregate(&self, comm: &[usize]) -> Level {
        let count = comm.iter().max().map_or(0, |&c| c + 1);
        let mut loops = vec![0.0; count];
        let mut links: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); count];
        for i in 0..self.len() {
            loops[comm[i]] += self.loops[i];
            for &(j, w) in &self.adj[i] {
                if comm[i] == comm[j] {
                    loops[comm[i]] += w;
                } else {
                    *links[comm[i]].entry(comm[j]).or_default() += w;
                }
            }
        }
        Level {
            adj: links.into_iter().map(|l| l.into_iter().collect()).collect(),
            loops,
        }
    }
}

/// Relabels communities 0, 1, … in order of first appearance.
fn renumber(comm: &[usize]) -> Vec<usize> {
    let mut map = BTreeMap::new();
    comm.iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect()
}

/// Louvain partition of `graph`. Node visiting order is shuffled with a
/// ChaCha8 stream seeded by `seed`, so results are reproducible.
pub fn louvain_communities(graph: &CoWordGraph, resolution: f64, seed: u64) -> Result<CommunityPartition> {
    if graph.node_count() == 0 {
        return Err(Error::Domain("community detection on an empty graph".to_string()));
    }
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(Error::Domain(format!("resolution must be positive, got {resolution}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut membership: Vec<usize> = (0..graph.node_count()).collect();
    if graph.edge_count() > 0 {
        let mut level = Level::from_graph(graph);
        loop {
            let (comm, moved) = level.local_moves(resolution, &mut rng);
            if !moved {
                break;
            }
            for m in membership.iter_mut() {
                *m = comm[*m];
            }
            level = level.aggregate(&comm);
        }
    }
    let membership = renumber(&membership);
    let assignment: BTreeMap<String, usize> = graph.nodes().iter().cloned().zip(membership).collect();
    let modularity_q = modularity(graph, &assignment, resolution)?;
    Ok(CommunityPartition {
        assignment,
        modularity_q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(edges: &[(&str, &str)]) -> CoWordGraph {
        let mut nodes: BTreeMap<String, u32> = BTreeMap::new();
        for (a, b) in edges {
            nodes.insert(a.to_string(), 10);
            nodes.insert(b.to_string(), 10);
        }
        CoWordGraph::new(nodes, edges.iter().map(|(a, b)| (a.to_string(), b.to_string(), 1))).unwrap()
    }

    #[test]
    fn two_triangles() {
        let g = graph(&[("a", "b"), ("b", "c"), ("a", "c"), ("d", "e"), ("e", "f"), ("d", "f")]);
        for seed in 0..5 {
            let p = louvain_communities(&g, 1.0, seed).unwrap();
            assert_eq!(p.community_count(), 2);
            assert_eq!(p.members(), [vec!["a", "b", "c"], vec!["d", "e", "f"]]);
            assert!((p.modularity_q - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn single_edge() {
        let p = louvain_communities(&graph(&[("a", "b")]), 1.0, 7).unwrap();
        assert_eq!(p.community_count(), 1);
        assert!(p.modularity_q.abs() < 1e-12);
    }

    #[test]
    fn edgeless_graph() {
        let g = CoWordGraph::new([("a".to_string(), 1), ("b".to_string(), 1)], []).unwrap();
        let p = louvain_communities(&g, 1.0, 0).unwrap();
        assert_eq!(p.community_count(), 2);
        assert_eq!(p.modularity_q, 0.0);
    }

    #[test]
    fn empty_graph_is_error() {
        let g = CoWordGraph::new([], []).unwrap();
        assert!(matches!(louvain_communities(&g, 1.0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn same_seed_same_partition() {
        let g = graph(&[
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("d", "a"),
            ("c", "e"),
            ("e", "f"),
            ("f", "g"),
            ("g", "e"),
            ("g", "h"),
            ("h", "i"),
        ]);
        assert_eq!(
            louvain_communities(&g, 1.0, 42).unwrap(),
            louvain_communities(&g, 1.0, 42).unwrap()
        );
    }

    #[test]
    fn modularity_requires_total_assignment() {
        let g = graph(&[("a", "b")]);
        let partial: BTreeMap<String, usize> = [("a".to_string(), 0)].into();
        assert!(matches!(modularity(&g, &partial, 1.0), Err(Error::Consistency(_))));
    }
}
