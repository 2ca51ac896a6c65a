//! Explanation graphs, local explanations, assumptions and off-line
//! justifications.

mod assumptions;
mod builder;
mod egraph;
mod lce;

pub use assumptions::{
    is_assumption, minimal_assumptions, negative_reduct, tentative_assumptions,
    tentative_assumptions_with, AssumptionSet, DEFAULT_ASSUMPTION_CAP,
};
pub use builder::Sigma;
pub use egraph::{EGraph, ENode, Edge, Label};
pub use lce::{
    falsifier_set, falsifier_sets, is_lce, lce_neg, lce_neg_capped, lce_neg_one, lce_pos, Lce,
    DEFAULT_LCE_CAP,
};

use alloc::collections::btree_map::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::program::{Atom, AtomSet, Interpretation, PInterpretation, Program};
use crate::Error;

/// A reason a graph fails one of the checks below.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    NonSinkLeaf(ENode),
    SinkHasEdges(ENode),
    ForbiddenEdge(Edge),
    SinkEdgeNotAlone(ENode),
    RootMissing(ENode),
    Unreachable(ENode),
    SupportNotLce(ENode),
    AssumedTrue(ENode),
    AssumptionMismatch(Atom),
    Unsafe(ENode),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonSinkLeaf(n) => write!(f, "{n:?} has no outgoing edge"),
            Violation::SinkHasEdges(n) => write!(f, "sink {n:?} has outgoing edges"),
            Violation::ForbiddenEdge(e) => write!(f, "edge {e:?} is not allowed"),
            Violation::SinkEdgeNotAlone(n) => {
                write!(f, "{n:?} points to a sink and to other nodes")
            }
            Violation::RootMissing(n) => write!(f, "root {n:?} is not in the graph"),
            Violation::Unreachable(n) => write!(f, "{n:?} is not reachable from the root"),
            Violation::SupportNotLce(n) => {
                write!(f, "support of {n:?} is not a local consistent explanation")
            }
            Violation::AssumedTrue(n) => write!(f, "{n:?} is assumed true"),
            Violation::AssumptionMismatch(a) => {
                write!(
                    f,
                    "atom {} is assumed false iff it is not an assumption",
                    a.id()
                )
            }
            Violation::Unsafe(n) => write!(f, "{n:?} lies on a positive cycle"),
        }
    }
}

/// Structural checks of an explanation graph.
pub fn validate_egraph(g: &EGraph) -> bool {
    g.is_egraph()
}

/// Problems preventing `g` from being a `(J,U)`-based graph of `b`.
pub fn ju_violations(
    p: &Program,
    g: &EGraph,
    b: ENode,
    j: &PInterpretation,
    u: &AtomSet,
) -> Vec<Violation> {
    let mut out = g.structural_violations();
    if !g.contains(b) {
        out.push(Violation::RootMissing(b));
        return out;
    }
    let reach = g.reachable(b);
    for &n in g.nodes() {
        if !reach.contains(&n) {
            out.push(Violation::Unreachable(n));
        }
        if !n.is_sink() {
            let ok = g
                .support(n)
                .map(|s| is_lce(p, n, &s, j, u))
                .unwrap_or(false);
            if !ok {
                out.push(Violation::SupportNotLce(n));
            }
        }
    }
    out
}

pub fn validate_ju_based(
    p: &Program,
    g: &EGraph,
    b: ENode,
    j: &PInterpretation,
    u: &AtomSet,
) -> bool {
    ju_violations(p, g, b, j, u).is_empty()
}

/// Problems preventing `g` from being a safe off-line justification of `b`.
pub fn offline_violations(
    p: &Program,
    g: &EGraph,
    b: ENode,
    j: &PInterpretation,
    u: &AtomSet,
) -> Vec<Violation> {
    let mut out = ju_violations(p, g, b, j, u);
    for e in g.edges() {
        if e.to == ENode::Assume {
            if let ENode::Pos(_) = e.from {
                out.push(Violation::AssumedTrue(e.from));
            }
        }
    }
    for &n in g.nodes() {
        if let ENode::Neg(a) = n {
            let assumed = g.out_edges(n).any(|e| e.to == ENode::Assume);
            if assumed != u.contains(a) {
                out.push(Violation::AssumptionMismatch(a));
            }
        }
    }
    out.extend(g.unsafe_nodes().into_iter().map(Violation::Unsafe));
    out
}

pub fn validate_offline(
    p: &Program,
    g: &EGraph,
    b: ENode,
    j: &PInterpretation,
    u: &AtomSet,
) -> bool {
    offline_violations(p, g, b, j, u).is_empty()
}

pub fn is_safe(g: &EGraph) -> bool {
    g.is_safe()
}

fn check_assumption(p: &Program, m: &Interpretation, u: &AtomSet) -> Result<(), Error> {
    if is_assumption(p, m, u)? {
        Ok(())
    } else {
        Err(Error::NotAssumption)
    }
}

/// Off-line justifications of every atom of the answer set `m` w.r.t. the
/// assumption `u`.
pub fn offline_justifications(
    p: &Program,
    m: &Interpretation,
    u: &AtomSet,
) -> Result<BTreeMap<ENode, EGraph>, Error> {
    check_assumption(p, m, u)?;
    let sigma = Sigma::build(p, m, u);
    let mut out = BTreeMap::new();
    for a in p.all_atoms() {
        let n = ENode::annotated(a, m.plus.contains(a));
        let g = sigma
            .graph(n)
            .ok_or_else(|| Error::NotJustified(String::from(p.name(a))))?;
        out.insert(n, g);
    }
    Ok(out)
}

/// A safe off-line justification of `target` w.r.t. `m` and the assumption `u`.
pub fn build_offline_justification(
    p: &Program,
    m: &Interpretation,
    u: &AtomSet,
    target: ENode,
) -> Result<EGraph, Error> {
    check_assumption(p, m, u)?;
    let Some(a) = target.atom() else {
        return Err(Error::NodeNotFound);
    };
    Sigma::build(p, m, u)
        .graph(target)
        .ok_or_else(|| Error::NotJustified(String::from(p.name(a))))
}
