use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};

use super::graph::{CoWordGraph, EdgeLength};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityScores {
    /// Shortest-path betweenness, each unordered pair counted once.
    pub betweenness: BTreeMap<String, f64>,
    pub degree: BTreeMap<String, usize>,
}

impl CentralityScores {
    /// Highest-betweenness node; ties go to the lexicographically first.
    pub fn top_betweenness(&self) -> Option<&str> {
        self.betweenness
            .iter()
            .fold(None, |best: Option<(&String, f64)>, (n, &b)| match best {
                Some((_, bb)) if bb >= b => best,
                _ => Some((n, b)),
            })
            .map(|(n, _)| n.as_str())
    }
}

/// Brandes' single-source accumulation over every node. With
/// [`EdgeLength::Unit`] paths are found by BFS; with
/// [`EdgeLength::InverseWeight`] by Dijkstra on lengths `1 / weight`.
pub fn betweenness(graph: &CoWordGraph, lengths: EdgeLength) -> CentralityScores {
    let n = graph.node_count();
    let adj = graph.adjacency();
    let mut score = vec![0.0; n];
    for s in 0..n {
        let (order, preds, sigma) = match lengths {
            EdgeLength::Unit => bfs(&adj, s),
            EdgeLength::InverseWeight => dijkstra(&adj, s),
        };
        let mut delta = vec![0.0; n];
        for &w in order.iter().rev() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                score[w] += delta[w];
            }
        }
    }
    let names = graph.nodes().iter().cloned();
    CentralityScores {
        betweenness: names.clone().zip(score.into_iter().map(|b| b / 2.0)).collect(),
        degree: names.zip(adj.iter().map(Vec::len)).collect(),
    }
}

type Search = (Vec<usize>, Vec<Vec<usize>>, Vec<f64>);

fn bfs(adj: &[Vec<(usize, u32)>], s: usize) -> Search {
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    let mut sigma = vec![0.0; n];
    let mut preds = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([s]);
    dist[s] = 0;
    sigma[s] = 1.0;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &(w, _) in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }
    (order, preds, sigma)
}

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // Reversed for a min-heap.
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

// Path lengths within this relative tolerance are treated as equal.
const TIE_EPS: f64 = 1e-12;

fn dijkstra(adj: &[Vec<(usize, u32)>], s: usize) -> Search {
    let n = adj.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut sigma = vec![0.0; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut heap = BinaryHeap::from([Entry(0.0, s)]);
    dist[s] = 0.0;
    sigma[s] = 1.0;
    while let Some(Entry(d, v)) = heap.pop() {
        if done[v] || d > dist[v] {
            continue;
        }
        done[v] = true;
        order.push(v);
        for &(w, weight) in &adj[v] {
            let alt = d + 1.0 / f64::from(weight);
            let tol = TIE_EPS * alt.max(1.0);
            if alt < dist[w] - tol {
                dist[w] = alt;
                sigma[w] = sigma[v];
                preds[w] = vec![v];
                heap.push(Entry(alt, w));
            } else if (alt - dist[w]).abs() <= tol && !done[w] {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }
    (order, preds, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(edges: &[(&str, &str, u32)]) -> CoWordGraph {
        let mut nodes: BTreeMap<String, u32> = BTreeMap::new();
        for (a, b, _) in edges {
            nodes.insert(a.to_string(), 10);
            nodes.insert(b.to_string(), 10);
        }
        CoWordGraph::new(nodes, edges.iter().map(|(a, b, w)| (a.to_string(), b.to_string(), *w))).unwrap()
    }

    #[test]
    fn path() {
        let c = betweenness(&graph(&[("a", "b", 1), ("b", "c", 1)]), EdgeLength::Unit);
        assert_eq!(c.betweenness["a"], 0.0);
        assert_eq!(c.betweenness["b"], 1.0);
        assert_eq!(c.betweenness["c"], 0.0);
        assert_eq!(c.degree["b"], 2);
        assert_eq!(c.top_betweenness(), Some("b"));
    }

    #[test]
    fn star() {
        let c = betweenness(&graph(&[("s", "x", 1), ("s", "y", 1), ("s", "z", 1)]), EdgeLength::Unit);
        assert_eq!(c.betweenness["s"], 3.0);
        assert_eq!(c.betweenness["x"], 0.0);
    }

    #[test]
    fn square_splits_paths() {
        let g = graph(&[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)]);
        let c = betweenness(&g, EdgeLength::Unit);
        assert!(c.betweenness.values().all(|&b| (b - 0.5).abs() < 1e-12));
    }

    #[test]
    fn inverse_weight_prefers_heavy_edges() {
        // a–b–c with heavy edges is shorter than the direct light a–c edge.
        let g = graph(&[("a", "b", 4), ("b", "c", 4), ("a", "c", 1)]);
        assert_eq!(betweenness(&g, EdgeLength::Unit).betweenness["b"], 0.0);
        assert_eq!(betweenness(&g, EdgeLength::InverseWeight).betweenness["b"], 1.0);
        // Equal-length alternatives split the pair.
        let g = graph(&[("a", "b", 2), ("b", "c", 2), ("a", "c", 1)]);
        assert!((betweenness(&g, EdgeLength::InverseWeight).betweenness["b"] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn isolated_node() {
        let g = CoWordGraph::new([("solo".to_string(), 1)], []).unwrap();
        let c = betweenness(&g, EdgeLength::Unit);
        assert_eq!(c.betweenness["solo"], 0.0);
        assert_eq!(c.degree["solo"], 0);
    }
}
