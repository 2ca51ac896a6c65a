use alloc::collections::btree_set::BTreeSet;
use alloc::vec::Vec;

use super::{Lce, Violation};
use crate::program::{Atom, Literal};
use crate::Error;

/// A node of an explanation graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ENode {
    Pos(Atom),
    Neg(Atom),
    Assume,
    Top,
    Bot,
}

impl ENode {
    pub fn annotated(atom: Atom, positive: bool) -> Self {
        if positive {
            ENode::Pos(atom)
        } else {
            ENode::Neg(atom)
        }
    }

    pub fn atom(self) -> Option<Atom> {
        match self {
            ENode::Pos(a) | ENode::Neg(a) => Some(a),
            _ => None,
        }
    }

    pub fn is_sink(self) -> bool {
        self.atom().is_none()
    }

    const MIN: ENode = ENode::Pos(Atom::new(0));
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Label {
    Plus,
    Minus,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    pub from: ENode,
    pub to: ENode,
    pub label: Label,
}

impl Edge {
    pub fn new(from: ENode, to: ENode, label: Label) -> Self {
        Edge { from, to, label }
    }
}

/// A labelled directed graph over annotated atoms and the sinks
/// `assume`, `⊤` and `⊥`.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct EGraph {
    root: Option<ENode>,
    nodes: BTreeSet<ENode>,
    edges: BTreeSet<Edge>,
}

impl EGraph {
    pub fn new(root: Option<ENode>) -> Self {
        let mut g = EGraph::default();
        if let Some(r) = root {
            g.add_node(r);
        }
        g.root = root;
        g
    }

    pub fn from_edges(root: Option<ENode>, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut g = EGraph::new(root);
        for e in edges {
            g.add_edge(e);
        }
        g
    }

    pub fn add_node(&mut self, n: ENode) {
        self.nodes.insert(n);
    }

    pub fn add_edge(&mut self, e: Edge) {
        self.nodes.insert(e.from);
        self.nodes.insert(e.to);
        self.edges.insert(e);
    }

    pub fn root(&self) -> Option<ENode> {
        self.root
    }

    pub fn nodes(&self) -> &BTreeSet<ENode> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains(&self, n: ENode) -> bool {
        self.nodes.contains(&n)
    }

    pub fn out_edges(&self, n: ENode) -> impl Iterator<Item = &Edge> + '_ {
        self.edges
            .range(Edge::new(n, ENode::MIN, Label::Plus)..)
            .take_while(move |e| e.from == n)
    }

    /// The direct support of an annotated node.
    pub fn support(&self, b: ENode) -> Result<Lce, Error> {
        if !self.contains(b) || b.is_sink() {
            return Err(Error::NodeNotFound);
        }
        let mut lits = BTreeSet::new();
        for e in self.out_edges(b) {
            match e.to {
                ENode::Assume => return Ok(Lce::Assume),
                ENode::Top => return Ok(Lce::Top),
                ENode::Bot => return Ok(Lce::Bot),
                ENode::Pos(c) | ENode::Neg(c) => {
                    lits.insert(match e.label {
                        Label::Plus => Literal::pos(c),
                        Label::Minus => Literal::neg(c),
                    });
                }
            }
        }
        Ok(Lce::Literals(lits))
    }

    /// Nodes reachable from `start`, `start` included.
    pub fn reachable(&self, start: ENode) -> BTreeSet<ENode> {
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![start];
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                stack.extend(self.out_edges(n).map(|e| e.to));
            }
        }
        seen
    }

    /// The part of the graph reachable from `e`, rooted at `e`.
    pub fn subgraph(&self, e: ENode) -> Result<EGraph, Error> {
        if !self.contains(e) {
            return Err(Error::NodeNotFound);
        }
        let keep = self.reachable(e);
        let mut g = EGraph::new(Some(e));
        for &n in &keep {
            g.add_node(n);
            for ed in self.out_edges(n) {
                g.add_edge(*ed);
            }
        }
        Ok(g)
    }

    /// Structural conditions on sinks and edge labels.
    pub fn structural_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for &n in &self.nodes {
            let outs: Vec<&Edge> = self.out_edges(n).collect();
            if n.is_sink() {
                if !outs.is_empty() {
                    out.push(Violation::SinkHasEdges(n));
                }
                continue;
            }
            if outs.is_empty() {
                out.push(Violation::NonSinkLeaf(n));
            }
            for e in &outs {
                let bad = matches!(
                    (e.from, e.to, e.label),
                    (ENode::Pos(_), ENode::Assume, Label::Minus)
                        | (ENode::Pos(_), ENode::Bot, Label::Minus)
                        | (ENode::Neg(_), ENode::Assume, Label::Plus)
                        | (ENode::Neg(_), ENode::Top, Label::Plus)
                );
                if bad {
                    out.push(Violation::ForbiddenEdge(**e));
                }
                if e.to.is_sink() && outs.len() > 1 {
                    out.push(Violation::SinkEdgeNotAlone(n));
                }
            }
        }
        out
    }

    pub fn is_egraph(&self) -> bool {
        self.structural_violations().is_empty()
    }

    fn reaches_by(&self, from: ENode, to: ENode, plus_only: bool) -> bool {
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![from];
        while let Some(n) = stack.pop() {
            for e in self.out_edges(n) {
                if plus_only && e.label == Label::Minus {
                    continue;
                }
                if e.to == to {
                    return true;
                }
                if seen.insert(e.to) {
                    stack.push(e.to);
                }
            }
        }
        false
    }

    /// Positive nodes lying on a cycle made of `+` edges.
    pub fn unsafe_nodes(&self) -> Vec<ENode> {
        self.nodes
            .iter()
            .copied()
            .filter(|n| matches!(n, ENode::Pos(_)) && self.reaches_by(*n, *n, true))
            .collect()
    }

    /// No positive path leads from a positive node back to itself.
    pub fn is_safe(&self) -> bool {
        self.unsafe_nodes().is_empty()
    }

    /// Some cycle contains a `-` edge.
    pub fn has_negative_cycle(&self) -> bool {
        self.edges.iter().any(|e| {
            e.label == Label::Minus && (e.to == e.from || self.reaches_by(e.to, e.from, false))
        })
    }
}
