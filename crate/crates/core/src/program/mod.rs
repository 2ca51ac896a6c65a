//! Program representation, interpretations, parsing and grounding.

mod atoms;
mod ground;
mod interp;
mod parse;

pub use atoms::{Atom, AtomSet, AtomTable, Literal};
pub use ground::ground;
pub use interp::{Interpretation, PInterpretation};
pub use parse::{parse_program, BodyItem, SourceAtom, SourceProgram, SourceRule, Term};

use alloc::collections::btree_set::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Write;

/// A ground rule `head :- pos, not neg`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: Atom,
    pub pos: AtomSet,
    pub neg: AtomSet,
    /// Position of the rule in its program.
    pub index: usize,
}

impl Rule {
    pub fn is_fact(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn body(&self) -> BTreeSet<Literal> {
        self.pos
            .iter()
            .map(Literal::pos)
            .chain(self.neg.iter().map(Literal::neg))
            .collect()
    }

    /// Whether a literal set meets the body: shares a positive atom or a negated one.
    pub fn hit_by(&self, lits: &BTreeSet<Literal>) -> bool {
        lits.iter().any(|l| {
            if l.negated {
                self.neg.contains(l.atom)
            } else {
                self.pos.contains(l.atom)
            }
        })
    }
}

/// A ground normal logic program.
///
/// Rules are kept as a set: a duplicate of an earlier rule is dropped.
#[derive(Clone, Debug)]
pub struct Program {
    atoms: Arc<AtomTable>,
    rules: Vec<Rule>,
    facts: AtomSet,
    nant: AtomSet,
    by_head: Vec<Vec<usize>>,
    pos_occ: Vec<Vec<usize>>,
}

impl PartialEq for Program {
    fn eq(&self, other: &Self) -> bool {
        self.atoms == other.atoms && self.rules == other.rules
    }
}

impl Eq for Program {}

impl Program {
    pub fn new(
        atoms: AtomTable,
        rules: impl IntoIterator<Item = (Atom, AtomSet, AtomSet)>,
    ) -> Self {
        Self::build(Arc::new(atoms), rules)
    }

    fn build(
        atoms: Arc<AtomTable>,
        rules: impl IntoIterator<Item = (Atom, AtomSet, AtomSet)>,
    ) -> Self {
        let n = atoms.len();
        let mut seen = BTreeSet::new();
        let mut list = Vec::new();
        for (head, pos, neg) in rules {
            assert!(head.index() < n, "rule head outside the atom table");
            if seen.insert((head, pos.clone(), neg.clone())) {
                list.push(Rule {
                    head,
                    pos,
                    neg,
                    index: list.len(),
                });
            }
        }
        let mut facts = AtomSet::new();
        let mut nant = AtomSet::new();
        let mut by_head = alloc::vec![Vec::new(); n];
        let mut pos_occ = alloc::vec![Vec::new(); n];
        for r in &list {
            if r.is_fact() {
                facts.insert(r.head);
            }
            nant.extend_from(&r.neg);
            by_head[r.head.index()].push(r.index);
            for b in &r.pos {
                pos_occ[b.index()].push(r.index);
            }
        }
        Program {
            atoms,
            rules: list,
            facts,
            nant,
            by_head,
            pos_occ,
        }
    }

    /// A program over the same atom table. `keep` returns the new body of a
    /// rule, or `None` to drop it.
    pub fn derive(&self, mut keep: impl FnMut(&Rule) -> Option<(AtomSet, AtomSet)>) -> Program {
        let rules: Vec<_> = self
            .rules
            .iter()
            .filter_map(|r| keep(r).map(|(p, n)| (r.head, p, n)))
            .collect();
        Self::build(self.atoms.clone(), rules)
    }

    pub fn atoms(&self) -> &AtomTable {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn all_atoms(&self) -> AtomSet {
        self.atoms.all()
    }

    pub fn atom(&self, name: &str) -> Option<Atom> {
        self.atoms.get(name)
    }

    pub fn name(&self, a: Atom) -> &str {
        self.atoms.name(a)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, index: usize) -> &Rule {
        &self.rules[index]
    }

    /// Rules with head `a`, by ascending index.
    pub fn rules_for(&self, a: Atom) -> impl Iterator<Item = &Rule> + '_ {
        self.by_head[a.index()].iter().map(move |&i| &self.rules[i])
    }

    pub fn has_rules(&self, a: Atom) -> bool {
        !self.by_head[a.index()].is_empty()
    }

    /// Indices of the rules having `a` in their positive body.
    pub fn positive_occurrences(&self, a: Atom) -> &[usize] {
        &self.pos_occ[a.index()]
    }

    pub fn facts(&self) -> &AtomSet {
        &self.facts
    }

    /// Atoms occurring under default negation.
    pub fn nant(&self) -> &AtomSet {
        &self.nant
    }

    pub fn heads(&self) -> AtomSet {
        self.rules.iter().map(|r| r.head).collect()
    }

    pub fn is_definite(&self) -> bool {
        self.rules.iter().all(|r| r.neg.is_empty())
    }

    /// Whether some rule for `a` has a body satisfied by `i`.
    pub fn is_supported(&self, i: &PInterpretation, a: Atom) -> bool {
        self.rules_for(a).any(|r| i.satisfies_body(r))
    }

    pub fn render_rule(&self, r: &Rule) -> String {
        let mut s = String::from(self.name(r.head));
        if !r.is_fact() {
            s.push_str(" :- ");
            let mut first = true;
            for l in r.body() {
                if !first {
                    s.push_str(", ");
                }
                first = false;
                if l.negated {
                    s.push_str("not ");
                }
                s.push_str(self.name(l.atom));
            }
        }
        s.push('.');
        s
    }

    /// Source text that parses back to this program.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.rules {
            let _ = writeln!(out, "{}", self.render_rule(r));
        }
        out
    }

    pub fn render_set(&self, s: &AtomSet) -> String {
        let mut out = String::from("{");
        for (k, a) in s.iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            out.push_str(self.name(a));
        }
        out.push('}');
        out
    }

    /// Looks up a list of names, failing on the first unknown one.
    pub fn atom_set(&self, names: &[&str]) -> Result<AtomSet, crate::Error> {
        names
            .iter()
            .map(|n| {
                self.atom(n)
                    .ok_or_else(|| crate::Error::UnknownAtom(String::from(*n)))
            })
            .collect()
    }
}
