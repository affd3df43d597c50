use std::collections::BTreeSet;
use std::fmt::Write;

use crate::aggregation::SupportNetwork;
use crate::dominance::DominationNetwork;
use crate::ingest::OccupationCategory;

/// Graphviz rendering with lexicographic node and edge order.
pub trait ToDot {
    fn to_dot(&self) -> String;
}

pub fn emit_network_dot<N: ToDot + ?Sized>(network: &N) -> String {
    network.to_dot()
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn render<'a>(
    name: &str,
    nodes: impl IntoIterator<Item = OccupationCategory>,
    edges: impl IntoIterator<Item = (OccupationCategory, OccupationCategory, &'a str, String)>,
) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for node in nodes {
        let _ = writeln!(out, "  {};", quote(node.code()));
    }
    for (from, to, attr, value) in edges {
        let _ = writeln!(out, "  {} -> {} [{}={}];", quote(from.code()), quote(to.code()), attr, quote(&value));
    }
    out.push_str("}\n");
    out
}

impl ToDot for DominationNetwork {
    fn to_dot(&self) -> String {
        render(
            &self.region_id,
            self.nodes.iter().copied(),
            self.edges.iter().map(|e| (e.dominant, e.dominated, "p", e.p_value.to_string())),
        )
    }
}

impl ToDot for SupportNetwork {
    fn to_dot(&self) -> String {
        let nodes: BTreeSet<_> = self.edges.iter().flat_map(|e| [e.dominant, e.dominated]).collect();
        render(
            &format!("support_{}", self.cohort),
            nodes,
            self.edges.iter().map(|e| (e.dominant, e.dominated, "support", e.support.to_string())),
        )
    }
}
