//! Level-by-level construction of justification graphs from the Γ/Δ
//! iteration.

use alloc::collections::btree_map::BTreeMap;
use alloc::collections::btree_set::BTreeSet;
use alloc::vec::Vec;

use super::lce::{falsifier_set, greedy};
use super::{EGraph, ENode, Edge, Label};
use crate::online::cycles_greatest;
use crate::program::{Atom, AtomSet, Literal, PInterpretation, Program, Rule};

/// Local supports of every justified node, one choice per node.
///
/// Sub-graphs of the union of these edges are safe off-line graphs with
/// respect to the interpretation and the assumed atoms used to build them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sigma {
    d: PInterpretation,
    local: BTreeMap<ENode, Vec<Edge>>,
}

fn literal_edges(from: ENode, lits: &BTreeSet<Literal>) -> Vec<Edge> {
    let from_pos = matches!(from, ENode::Pos(_));
    lits.iter()
        .map(|l| {
            let label = if l.negated { Label::Minus } else { Label::Plus };
            Edge::new(from, ENode::annotated(l.atom, from_pos != l.negated), label)
        })
        .collect()
}

fn positive(s: &AtomSet) -> BTreeSet<Literal> {
    s.iter().map(Literal::pos).collect()
}

impl Sigma {
    /// Runs the iteration for `j`, seeding the false side with `assumed`.
    pub fn build(p: &Program, j: &PInterpretation, assumed: &AtomSet) -> Sigma {
        let mut local: BTreeMap<ENode, Vec<Edge>> = BTreeMap::new();
        let mut gamma = AtomSet::new();
        let mut delta = AtomSet::new();
        let none = AtomSet::new();

        for a in p.facts().intersection(&j.plus) {
            gamma.insert(a);
            local.insert(
                ENode::Pos(a),
                alloc::vec![Edge::new(ENode::Pos(a), ENode::Top, Label::Plus)],
            );
        }
        for a in &j.minus {
            let sink = if assumed.contains(a) {
                ENode::Assume
            } else if !p.has_rules(a) {
                ENode::Bot
            } else {
                continue;
            };
            delta.insert(a);
            local.insert(
                ENode::Neg(a),
                alloc::vec![Edge::new(ENode::Neg(a), sink, Label::Minus)],
            );
        }
        let c0 = cycles_greatest(p, &PInterpretation::default(), &j.minus);
        for a in c0.difference(&delta) {
            let rules: Vec<&Rule> = p.rules_for(a).collect();
            let k = greedy(&rules, |r| positive(&r.pos.intersection(&c0)))
                .expect("every rule of a cycle member meets the cycle");
            local.insert(ENode::Neg(a), literal_edges(ENode::Neg(a), &k));
        }
        delta.extend_from(&c0);

        loop {
            let prev = PInterpretation::new(gamma.clone(), delta.clone());
            let mut grew = false;
            for a in j.plus.difference(&prev.plus) {
                let Some(r) = p.rules_for(a).find(|r| prev.satisfies_body(r)) else {
                    continue;
                };
                local.insert(ENode::Pos(a), literal_edges(ENode::Pos(a), &r.body()));
                gamma.insert(a);
                grew = true;
            }
            let mut fresh = AtomSet::new();
            for a in j.minus.difference(&prev.minus) {
                let rules: Vec<&Rule> = p.rules_for(a).collect();
                if rules.iter().all(|r| prev.falsifies_body(r)) {
                    let k = greedy(&rules, |r| falsifier_set(r, &prev, &none))
                        .expect("every rule is falsified");
                    local.insert(ENode::Neg(a), literal_edges(ENode::Neg(a), &k));
                    fresh.insert(a);
                }
            }
            let c = cycles_greatest(p, &prev, &j.minus);
            for a in c.difference(&prev.minus).difference(&fresh) {
                let rules: Vec<&Rule> = p.rules_for(a).collect();
                let k = greedy(&rules, |r| {
                    if prev.falsifies_body(r) {
                        falsifier_set(r, &prev, &none)
                    } else {
                        positive(&r.pos.intersection(&c))
                    }
                })
                .expect("every rule is falsified or meets the cycle");
                local.insert(ENode::Neg(a), literal_edges(ENode::Neg(a), &k));
                fresh.insert(a);
            }
            if !fresh.is_empty() {
                delta.extend_from(&fresh);
                grew = true;
            }
            if !grew {
                break;
            }
        }
        Sigma {
            d: PInterpretation::new(gamma, delta),
            local,
        }
    }

    /// `⟨Γ, Δ⟩`: the atoms that received a justification.
    pub fn justified(&self) -> &PInterpretation {
        &self.d
    }

    pub fn is_justified(&self, n: ENode) -> bool {
        self.local.contains_key(&n)
    }

    pub fn keys(&self) -> impl Iterator<Item = ENode> + '_ {
        self.local.keys().copied()
    }

    /// Outgoing edges chosen for `n`.
    pub fn local(&self, n: ENode) -> Option<&[Edge]> {
        self.local.get(&n).map(|v| v.as_slice())
    }

    /// The sub-graph rooted at `n`.
    pub fn graph(&self, n: ENode) -> Option<EGraph> {
        if !self.is_justified(n) {
            return None;
        }
        let mut g = EGraph::new(Some(n));
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![n];
        while let Some(x) = stack.pop() {
            if !seen.insert(x) {
                continue;
            }
            for e in self.local.get(&x).into_iter().flatten() {
                g.add_edge(*e);
                stack.push(e.to);
            }
        }
        Some(g)
    }

    /// Whether `n` reaches the same edges here as in `other`.
    pub fn same_graph(&self, other: &Sigma, n: ENode) -> bool {
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![n];
        while let Some(x) = stack.pop() {
            if !seen.insert(x) {
                continue;
            }
            let mine = self.local.get(&x);
            if mine != other.local.get(&x) {
                return false;
            }
            stack.extend(mine.into_iter().flatten().map(|e| e.to));
        }
        true
    }

    pub fn atom_graph(&self, a: Atom, positive: bool) -> Option<EGraph> {
        self.graph(ENode::annotated(a, positive))
    }
}
