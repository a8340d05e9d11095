//! Title co-word networks: construction, communities, centrality, cluster
//! summaries and export.

mod centrality;
mod export;
mod graph;
mod louvain;
mod summary;

pub use centrality::{betweenness, CentralityScores};
pub use export::{export_graph, GraphFormat};
pub use graph::{build_coword_graph, title_keywords, CoWordGraph, EdgeLength, GraphPolicy, Stopwords};
pub use louvain::{louvain_communities, modularity, CommunityPartition};
pub use summary::{cluster_summary, ClusterInfo, ClusterSummary};
