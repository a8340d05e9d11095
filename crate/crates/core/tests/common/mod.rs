//! Helpers shared by the integration test targets.

use lexigauge::semnet::CoWordGraph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random graph on at most `max_nodes` nodes with edge probability drawn
/// from 0.1..0.7.
pub fn random_graph(rng: &mut ChaCha8Rng, max_nodes: usize, weighted: bool) -> CoWordGraph {
    let n = rng.random_range(1..=max_nodes);
    let p = rng.random_range(0.1..0.7);
    let names: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                let w = if weighted { rng.random_range(1..5) } else { 1 };
                edges.push((names[i].clone(), names[j].clone(), w));
            }
        }
    }
    CoWordGraph::new(names.into_iter().map(|s| (s, 10)), edges).unwrap()
}

/// Pair-dependency betweenness from all-pairs distances (Floyd-Warshall) and
/// shortest-path counts: `Σ_{s<t} σ_sv σ_vt / σ_st` over pairs with
/// `d(s,v) + d(v,t) = d(s,t)`.
pub fn all_pairs_betweenness(g: &CoWordGraph) -> Vec<f64> {
    let n = g.node_count();
    const INF: usize = usize::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (i, j, _) in g.edges() {
        d[i][j] = 1;
        d[j][i] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let adj = g.adjacency();
    let mut sigma = vec![vec![0u64; n]; n];
    for s in 0..n {
        let mut order: Vec<usize> = (0..n).filter(|&t| d[s][t] < INF).collect();
        order.sort_by_key(|&t| d[s][t]);
        for t in order {
            sigma[s][t] = if t == s {
                1
            } else {
                adj[t]
                    .iter()
                    .filter(|&&(u, _)| d[s][u] + 1 == d[s][t])
                    .map(|&(u, _)| sigma[s][u])
                    .sum()
            };
        }
    }
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            if d[s][t] >= INF {
                continue;
            }
            for (v, b) in bc.iter_mut().enumerate() {
                if v != s && v != t && d[s][v] + d[v][t] == d[s][t] {
                    *b += (sigma[s][v] * sigma[v][t]) as f64 / sigma[s][t] as f64;
                }
            }
        }
    }
    bc
}
