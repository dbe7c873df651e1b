//! Graphviz rendering of the Hasse diagram.

use std::fmt::Write;

use super::{Origin, SeparatorPoset};

/// Nodes are labelled `[t∈T],{v∈C}`; minimal elements are drawn solid,
/// augmented ones bold and generated ones dashed in italics. Edges point from
/// a node to the nodes covering it.
pub fn to_dot(poset: &SeparatorPoset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, n) in poset.nodes().iter().enumerate() {
        let style = match n.origin {
            Origin::Minimal => "style=solid",
            Origin::Augmented => "style=bold, fontname=\"Times-Bold\"",
            Origin::Generated => "style=dashed, fontname=\"Times-Italic\"",
        };
        writeln!(out, "  n{i} [label=\"{}\", {style}];", n.label()).expect("string write");
    }
    for (a, b) in poset.hasse_edges() {
        writeln!(out, "  n{a} -> n{b};").expect("string write");
    }
    out.push_str("}\n");
    out
}
