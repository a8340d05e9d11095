use serde::{Deserialize, Serialize};

use super::centrality::CentralityScores;
use super::graph::CoWordGraph;
use super::louvain::CommunityPartition;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterInfo {
    pub community: usize,
    pub size: usize,
    pub node_share_pct: f64,
    /// Up to three highest-degree members, ties broken lexicographically.
    pub label_tokens: Vec<String>,
    pub top_betweenness_token: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterSummary {
    pub node_count: usize,
    pub cluster_count: usize,
    /// Largest clusters first, at most `k`.
    pub clusters: Vec<ClusterInfo>,
    /// Share of every cluster, indexed by community id.
    pub all_shares_pct: Vec<f64>,
    pub top_betweenness_token: Option<String>,
}

/// The `k` most populous clusters with their labels and shares.
pub fn cluster_summary(
    graph: &CoWordGraph,
    partition: &CommunityPartition,
    scores: &CentralityScores,
    k: usize,
) -> Result<ClusterSummary> {
    check_consistent(graph, partition, scores)?;
    let members = partition.members();
    let total = graph.node_count();
    let share = |size: usize| size as f64 / total as f64 * 100.0;

    let mut ranked: Vec<usize> = (0..members.len()).collect();
    ranked.sort_by(|&a, &b| members[b].len().cmp(&members[a].len()).then(a.cmp(&b)));

    let clusters = ranked
        .into_iter()
        .take(k)
        .map(|c| {
            let nodes = &members[c];
            let mut by_degree: Vec<&String> = nodes.iter().collect();
            by_degree.sort_by(|a, b| scores.degree[*b].cmp(&scores.degree[*a]).then(a.cmp(b)));
            let top_betweenness_token = nodes
                .iter()
                .fold(None, |best: Option<&String>, n| match best {
                    Some(b) if scores.betweenness[b] >= scores.betweenness[n] => Some(b),
                    _ => Some(n),
                })
                .cloned()
                .unwrap_or_default();
            ClusterInfo {
                community: c,
                size: nodes.len(),
                node_share_pct: share(nodes.len()),
                label_tokens: by_degree.into_iter().take(3).cloned().collect(),
                top_betweenness_token,
            }
        })
        .collect();

    Ok(ClusterSummary {
        node_count: total,
        cluster_count: members.len(),
        clusters,
        all_shares_pct: members.iter().map(|m| share(m.len())).collect(),
        top_betweenness_token: scores.top_betweenness().map(str::to_string),
    })
}

/// Partition and scores must cover exactly the graph's nodes.
pub(crate) fn check_consistent(
    graph: &CoWordGraph,
    partition: &CommunityPartition,
    scores: &CentralityScores,
) -> Result<()> {
    let nodes = graph.nodes();
    let same = |keys: &mut dyn Iterator<Item = &String>| keys.eq(nodes.iter());
    if !same(&mut partition.assignment.keys()) {
        return Err(Error::Consistency(
            "partition nodes differ from graph nodes".to_string(),
        ));
    }
    if !same(&mut scores.betweenness.keys()) || !same(&mut scores.degree.keys()) {
        return Err(Error::Consistency(
            "centrality nodes differ from graph nodes".to_string(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::semnet::{betweenness, louvain_communities, EdgeLength};

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
        let p = louvain_communities(&g, 1.0, 1).unwrap();
        let s = cluster_summary(&g, &p, &betweenness(&g, EdgeLength::Unit), 3).unwrap();
        assert_eq!(s.clusters.len(), 2);
        assert_eq!(s.clusters[0].node_share_pct, 50.0);
        assert_eq!(s.clusters[1].node_share_pct, 50.0);
        assert_eq!(s.clusters[0].label_tokens, ["a", "b", "c"]);
        assert_eq!(s.clusters[1].label_tokens, ["d", "e", "f"]);
    }

    #[test]
    fn shares_from_fixed_partition() {
        let names: Vec<String> = (0..10).map(|i| format!("n{i}")).collect();
        let g = CoWordGraph::new(names.iter().map(|n| (n.clone(), 1)), []).unwrap();
        let sizes = [2, 5, 3];
        let mut assignment = BTreeMap::new();
        let mut it = names.iter();
        for (c, &size) in sizes.iter().enumerate() {
            for n in it.by_ref().take(size) {
                assignment.insert(n.clone(), c);
            }
        }
        let p = CommunityPartition {
            assignment,
            modularity_q: 0.0,
        };
        let s = cluster_summary(&g, &p, &betweenness(&g, EdgeLength::Unit), 3).unwrap();
        let shares: Vec<f64> = s.clusters.iter().map(|c| c.node_share_pct).collect();
        assert_eq!(shares, [50.0, 30.0, 20.0]);
        assert_eq!(s.clusters[0].community, 1);
        assert!((s.all_shares_pct.iter().sum::<f64>() - 100.0).abs() < 0.01);
        let s1 = cluster_summary(&g, &p, &betweenness(&g, EdgeLength::Unit), 10).unwrap();
        assert_eq!(s1.clusters.len(), 3);
    }

    #[test]
    fn inconsistent_inputs() {
        let g = graph(&[("a", "b")]);
        let p = louvain_communities(&g, 1.0, 0).unwrap();
        let mut c = betweenness(&g, EdgeLength::Unit);
        c.betweenness.insert("zzz".into(), 0.0);
        assert!(matches!(cluster_summary(&g, &p, &c, 3), Err(Error::Consistency(_))));
    }
}
