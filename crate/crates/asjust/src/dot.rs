//! Graphviz DOT export of explanation graphs.

use std::fmt::Write;

use asjust_core::justification::{EGraph, ENode, Label};
use asjust_core::Program;

fn node_id(n: ENode) -> String {
    match n {
        ENode::Pos(a) => format!("p{}", a.id()),
        ENode::Neg(a) => format!("n{}", a.id()),
        ENode::Assume => "assume".into(),
        ENode::Top => "top".into(),
        ENode::Bot => "bot".into(),
    }
}

fn node_label(p: &Program, n: ENode) -> String {
    match n {
        ENode::Pos(a) => format!("{}+", p.name(a)),
        ENode::Neg(a) => format!("{}-", p.name(a)),
        ENode::Assume => "assume".into(),
        ENode::Top => "⊤".into(),
        ENode::Bot => "⊥".into(),
    }
}

/// Positive edges are solid, negative edges dashed, sinks drawn as boxes.
pub fn egraph(p: &Program, g: &EGraph) -> String {
    let mut out = String::from("digraph justification {\n");
    for &n in g.nodes() {
        let shape = if n.is_sink() { "box" } else { "ellipse" };
        let extra = if g.root() == Some(n) {
            ", penwidth=2"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  {} [label=\"{}\", shape={}{}];",
            node_id(n),
            node_label(p, n),
            shape,
            extra
        );
    }
    for e in g.edges() {
        let (style, label) = match e.label {
            Label::Plus => ("solid", "+"),
            Label::Minus => ("dashed", "-"),
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{}\", style={}];",
            node_id(e.from),
            node_id(e.to),
            label,
            style
        );
    }
    out.push_str("}\n");
    out
}
