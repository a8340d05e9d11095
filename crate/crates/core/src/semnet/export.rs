use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::centrality::CentralityScores;
use super::graph::CoWordGraph;
use super::louvain::CommunityPartition;
use super::summary::check_consistent;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    Gexf,
    Graphml,
}

impl GraphFormat {
    pub fn extension(self) -> &'static str {
        match self {
            GraphFormat::Gexf => "gexf",
            GraphFormat::Graphml => "graphml",
        }
    }
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gexf" => Ok(GraphFormat::Gexf),
            "graphml" => Ok(GraphFormat::Graphml),
            other => Err(Error::Config(format!("unknown graph format `{other}`"))),
        }
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Writes the graph with `community`, `betweenness`, `degree` and
/// `title_frequency` node attributes and a `weight` on every edge.
pub fn export_graph<W: Write>(
    graph: &CoWordGraph,
    partition: &CommunityPartition,
    scores: &CentralityScores,
    format: GraphFormat,
    mut writer: W,
) -> Result<()> {
    check_consistent(graph, partition, scores)?;
    let doc = match format {
        GraphFormat::Gexf => gexf(graph, partition, scores),
        GraphFormat::Graphml => graphml(graph, partition, scores),
    };
    writer
        .write_all(doc.as_bytes())
        .map_err(|e| Error::io("<graph export>", e))
}

fn gexf(graph: &CoWordGraph, partition: &CommunityPartition, scores: &CentralityScores) -> String {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str("<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n");
    s.push_str("  <graph mode=\"static\" defaultedgetype=\"undirected\">\n");
    s.push_str("    <attributes class=\"node\">\n");
    s.push_str("      <attribute id=\"0\" title=\"community\" type=\"integer\"/>\n");
    s.push_str("      <attribute id=\"1\" title=\"betweenness\" type=\"double\"/>\n");
    s.push_str("      <attribute id=\"2\" title=\"degree\" type=\"integer\"/>\n");
    s.push_str("      <attribute id=\"3\" title=\"title_frequency\" type=\"integer\"/>\n");
    s.push_str("    </attributes>\n");
    s.push_str("    <nodes>\n");
    for (i, name) in graph.nodes().iter().enumerate() {
        let label = escape(name);
        let _ = writeln!(s, "      <node id=\"n{i}\" label=\"{label}\">");
        s.push_str("        <attvalues>\n");
        let values = [
            partition.assignment[name].to_string(),
            scores.betweenness[name].to_string(),
            scores.degree[name].to_string(),
            graph.frequency(i).to_string(),
        ];
        for (k, v) in values.iter().enumerate() {
            let _ = writeln!(s, "          <attvalue for=\"{k}\" value=\"{v}\"/>");
        }
        s.push_str("        </attvalues>\n");
        s.push_str("      </node>\n");
    }
    s.push_str("    </nodes>\n");
    s.push_str("    <edges>\n");
    for (e, (i, j, w)) in graph.edges().enumerate() {
        let _ = writeln!(
            s,
            "      <edge id=\"e{e}\" source=\"n{i}\" target=\"n{j}\" weight=\"{w}\"/>"
        );
    }
    s.push_str("    </edges>\n");
    s.push_str("  </graph>\n");
    s.push_str("</gexf>\n");
    s
}

fn graphml(graph: &CoWordGraph, partition: &CommunityPartition, scores: &CentralityScores) -> String {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" ");
    s.push_str("xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" ");
    s.push_str("xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns ");
    s.push_str("http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n");
    for (id, name, ty) in [
        ("d0", "label", "string"),
        ("d1", "community", "int"),
        ("d2", "betweenness", "double"),
        ("d3", "degree", "int"),
        ("d4", "title_frequency", "int"),
    ] {
        let _ = writeln!(
            s,
            "  <key id=\"{id}\" for=\"node\" attr.name=\"{name}\" attr.type=\"{ty}\"/>"
        );
    }
    s.push_str("  <key id=\"d5\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n");
    s.push_str("  <graph id=\"G\" edgedefault=\"undirected\">\n");
    for (i, name) in graph.nodes().iter().enumerate() {
        let _ = writeln!(s, "    <node id=\"n{i}\">");
        let values = [
            escape(name),
            partition.assignment[name].to_string(),
            scores.betweenness[name].to_string(),
            scores.degree[name].to_string(),
            graph.frequency(i).to_string(),
        ];
        for (k, v) in values.iter().enumerate() {
            let _ = writeln!(s, "      <data key=\"d{k}\">{v}</data>");
        }
        s.push_str("    </node>\n");
    }
    for (e, (i, j, w)) in graph.edges().enumerate() {
        let _ = writeln!(s, "    <edge id=\"e{e}\" source=\"n{i}\" target=\"n{j}\">");
        let _ = writeln!(s, "      <data key=\"d5\">{w}</data>");
        s.push_str("    </edge>\n");
    }
    s.push_str("  </graph>\n");
    s.push_str("</graphml>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semnet::{betweenness, louvain_communities, EdgeLength};

    #[test]
    fn path_gexf_counts() {
        let n = |s: &str| (s.to_string(), 3);
        let e = |a: &str, b: &str| (a.to_string(), b.to_string(), 2);
        let g = CoWordGraph::new([n("a"), n("b"), n("c")], [e("a", "b"), e("b", "c")]).unwrap();
        let p = louvain_communities(&g, 1.0, 0).unwrap();
        let c = betweenness(&g, EdgeLength::Unit);
        let mut buf = Vec::new();
        export_graph(&g, &p, &c, GraphFormat::Gexf, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.matches("<node ").count(), 3);
        assert_eq!(text.matches("<edge ").count(), 2);
        assert_eq!(text.matches("weight=\"2\"").count(), 2);
    }

    #[test]
    fn labels_are_escaped() {
        let g = CoWordGraph::new([("r&d".to_string(), 1), ("<x>".to_string(), 1)], []).unwrap();
        let p = louvain_communities(&g, 1.0, 0).unwrap();
        let c = betweenness(&g, EdgeLength::Unit);
        let mut buf = Vec::new();
        export_graph(&g, &p, &c, GraphFormat::Graphml, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("r&amp;d") && text.contains("&lt;x&gt;"));
    }

    #[test]
    fn format_names() {
        assert_eq!("GEXF".parse::<GraphFormat>().unwrap(), GraphFormat::Gexf);
        assert_eq!("graphml".parse::<GraphFormat>().unwrap().extension(), "graphml");
        assert!("dot".parse::<GraphFormat>().is_err());
    }
}
