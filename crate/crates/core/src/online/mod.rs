//! Cycles, the Γ/Δ operators, computations and snapshots.

mod snapshot;

pub use snapshot::{
    final_snapshot_is_offline, online_justification, snapshot, Snapshot, SnapshotBuilder,
};

use alloc::vec::Vec;
use core::fmt;

use crate::justification::tentative_assumptions_with;
use crate::program::{Atom, AtomSet, PInterpretation, Program};
use crate::semantics::well_founded;
use crate::Error;

/// The greatest `S ⊆ within` such that every rule of every member of `S` is
/// falsified by `i` or has a positive body atom in `S`.
pub fn cycles_greatest(p: &Program, i: &PInterpretation, within: &AtomSet) -> AtomSet {
    let mut s = within.clone();
    loop {
        let before = s.len();
        let snapshot = s.clone();
        s.retain(|&a| {
            p.rules_for(a)
                .all(|r| i.falsifies_body(r) || r.pos.intersects(&snapshot))
        });
        if s.len() == before {
            return s;
        }
    }
}

/// `Γ_I(J)`.
pub fn gamma_op(p: &Program, i: &PInterpretation, j: &PInterpretation) -> AtomSet {
    let mut out = i.plus.clone();
    for a in j.plus.iter() {
        if !out.contains(a) && p.rules_for(a).any(|r| i.satisfies_body(r)) {
            out.insert(a);
        }
    }
    out
}

/// `Δ_I(J)`, taking the greatest cycle inside `J⁻`.
pub fn delta_op(p: &Program, i: &PInterpretation, j: &PInterpretation) -> AtomSet {
    let mut out = i.minus.clone();
    for a in j.minus.iter() {
        if !out.contains(a) && p.rules_for(a).all(|r| i.falsifies_body(r)) {
            out.insert(a);
        }
    }
    out.extend_from(&cycles_greatest(p, i, &j.minus));
    out
}

/// The starting point `⟨Γ⁰, Δ⁰⟩` for `j` given the well-founded model.
pub fn gamma_delta_start(
    p: &Program,
    j: &PInterpretation,
    wf: &PInterpretation,
) -> PInterpretation {
    let plus = p.facts().intersection(&j.plus);
    let mut minus = tentative_assumptions_with(p, j, wf);
    minus.extend_from(&delta_op(p, &PInterpretation::default(), j));
    PInterpretation::new(plus, minus)
}

/// `⟨Γ(J), Δ(J)⟩`.
pub fn gamma_delta(p: &Program, j: &PInterpretation) -> PInterpretation {
    let wf = well_founded(p).model.into_inner();
    gamma_delta_from(p, j, &wf, &PInterpretation::default())
}

/// `⟨Γ(J), Δ(J)⟩` iterated from `from ∪ ⟨Γ⁰, Δ⁰⟩`.
///
/// `from` must lie below the result, which holds for the result of an
/// earlier state `J' ⊑ J`.
pub fn gamma_delta_from(
    p: &Program,
    j: &PInterpretation,
    wf: &PInterpretation,
    from: &PInterpretation,
) -> PInterpretation {
    let mut cur = from.join(&gamma_delta_start(p, j, wf));
    loop {
        let next = PInterpretation::new(gamma_op(p, &cur, j), delta_op(p, &cur, j));
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TransitionKind {
    Al1,
    Al2,
    Al3,
    Al4,
    AtMost,
    Choice,
    Backtrack,
}

impl TransitionKind {
    pub fn name(self) -> &'static str {
        match self {
            TransitionKind::Al1 => "AL1",
            TransitionKind::Al2 => "AL2",
            TransitionKind::Al3 => "AL3",
            TransitionKind::Al4 => "AL4",
            TransitionKind::AtMost => "atmost",
            TransitionKind::Choice => "choice",
            TransitionKind::Backtrack => "backtrack",
        }
    }
}

/// How one state of a computation was obtained from the previous one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TransitionTag {
    /// `atom` is the head of `rule`.
    Al1 {
        rule: usize,
        atom: Atom,
    },
    Al2 {
        atom: Atom,
    },
    /// `atom` is the head of `rule`.
    Al3 {
        rule: usize,
        atom: Atom,
    },
    /// `atom` is the body atom of `rule` that was forced.
    Al4 {
        rule: usize,
        atom: Atom,
    },
    AtMost,
    Choice {
        atom: Atom,
        sign: Sign,
    },
    /// Undo of the choice on `atom`; the state is the one before that choice.
    Backtrack {
        atom: Atom,
    },
}

impl TransitionTag {
    pub fn kind(&self) -> TransitionKind {
        match self {
            TransitionTag::Al1 { .. } => TransitionKind::Al1,
            TransitionTag::Al2 { .. } => TransitionKind::Al2,
            TransitionTag::Al3 { .. } => TransitionKind::Al3,
            TransitionTag::Al4 { .. } => TransitionKind::Al4,
            TransitionTag::AtMost => TransitionKind::AtMost,
            TransitionTag::Choice { .. } => TransitionKind::Choice,
            TransitionTag::Backtrack { .. } => TransitionKind::Backtrack,
        }
    }

    pub fn atom(&self) -> Option<Atom> {
        match *self {
            TransitionTag::Al1 { atom, .. }
            | TransitionTag::Al2 { atom }
            | TransitionTag::Al3 { atom, .. }
            | TransitionTag::Al4 { atom, .. }
            | TransitionTag::Choice { atom, .. }
            | TransitionTag::Backtrack { atom } => Some(atom),
            TransitionTag::AtMost => None,
        }
    }

    pub fn rule(&self) -> Option<usize> {
        match *self {
            TransitionTag::Al1 { rule, .. }
            | TransitionTag::Al3 { rule, .. }
            | TransitionTag::Al4 { rule, .. } => Some(rule),
            _ => None,
        }
    }

    pub fn sign(&self) -> Option<Sign> {
        match *self {
            TransitionTag::Choice { sign, .. } => Some(sign),
            _ => None,
        }
    }
}

/// A sequence of states starting at `⟨∅,∅⟩`, one tag per step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Computation {
    states: Vec<PInterpretation>,
    tags: Vec<TransitionTag>,
}

impl Default for Computation {
    fn default() -> Self {
        Computation::new()
    }
}

impl Computation {
    pub fn new() -> Self {
        Computation {
            states: alloc::vec![PInterpretation::default()],
            tags: Vec::new(),
        }
    }

    /// Builds a computation from explicit parts, checking its shape.
    pub fn from_parts(
        states: Vec<PInterpretation>,
        tags: Vec<TransitionTag>,
    ) -> Result<Self, Error> {
        let c = Computation { states, tags };
        c.check_shape()?;
        Ok(c)
    }

    pub fn push(&mut self, tag: TransitionTag, state: PInterpretation) {
        self.tags.push(tag);
        self.states.push(state);
    }

    pub fn states(&self) -> &[PInterpretation] {
        &self.states
    }

    pub fn tags(&self) -> &[TransitionTag] {
        &self.tags
    }

    pub fn last(&self) -> &PInterpretation {
        self.states.last().expect("a computation has a first state")
    }

    /// Number of transitions.
    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    /// Truncates to the first `steps` transitions.
    pub fn prefix(&self, steps: usize) -> Computation {
        let n = steps.min(self.tags.len());
        Computation {
            states: self.states[..=n].to_vec(),
            tags: self.tags[..n].to_vec(),
        }
    }

    /// Drops every transition after the first `steps`.
    pub fn truncate(&mut self, steps: usize) {
        self.tags.truncate(steps);
        self.states.truncate(steps + 1);
    }

    /// Start state, one tag per step, and monotone non-backtrack steps.
    pub fn check_shape(&self) -> Result<(), Error> {
        if self.states.first() != Some(&PInterpretation::default()) {
            return Err(Error::MalformedComputation {
                step: 0,
                reason: "first state is not empty",
            });
        }
        if self.states.len() != self.tags.len() + 1 {
            return Err(Error::MalformedComputation {
                step: 0,
                reason: "state and tag counts disagree",
            });
        }
        for (k, tag) in self.tags.iter().enumerate() {
            if tag.kind() != TransitionKind::Backtrack && !self.states[k].leq(&self.states[k + 1]) {
                return Err(Error::MalformedComputation {
                    step: k + 1,
                    reason: "step is not monotone",
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::load_program;

    fn pi(p: &Program, plus: &[&str], minus: &[&str]) -> PInterpretation {
        PInterpretation::new(p.atom_set(plus).unwrap(), p.atom_set(minus).unwrap())
    }

    const P5: &str = "a :- f, not b. b :- e, not a. e. f :- e. d :- c, e. c :- d, f.";

    #[test]
    fn mutual_dependence_is_a_cycle() {
        let p = load_program("t :- u. u :- t.").unwrap();
        let all = p.all_atoms();
        assert_eq!(cycles_greatest(&p, &PInterpretation::default(), &all), all);
        let q = load_program("b. a :- b.").unwrap();
        assert!(cycles_greatest(&q, &PInterpretation::default(), &q.all_atoms()).is_empty());
    }

    #[test]
    fn p5_cycle() {
        let p = load_program(P5).unwrap();
        let cd = p.atom_set(&["c", "d"]).unwrap();
        assert_eq!(cycles_greatest(&p, &pi(&p, &["e", "f"], &[]), &cd), cd);
    }

    #[test]
    fn answer_set_is_fixpoint() {
        let p = load_program(P5).unwrap();
        let m = pi(&p, &["f", "e", "b"], &["a", "c", "d"]);
        assert_eq!(gamma_delta(&p, &m), m);
        let wf = pi(&p, &["e", "f"], &["c", "d"]);
        assert_eq!(gamma_delta(&p, &wf), wf);
    }

    #[test]
    fn partial_state() {
        let p = load_program("e. s :- e, not t. a :- s.").unwrap();
        let j = pi(&p, &["e", "s"], &[]);
        assert_eq!(gamma_delta(&p, &j), pi(&p, &["e"], &[]));
    }

    #[test]
    fn warm_start_agrees() {
        let p = load_program(P5).unwrap();
        let wf = well_founded(&p).model.into_inner();
        let j1 = pi(&p, &["e", "f"], &["c", "d"]);
        let j2 = pi(&p, &["e", "f", "b"], &["c", "d", "a"]);
        let d1 = gamma_delta(&p, &j1);
        assert_eq!(gamma_delta_from(&p, &j2, &wf, &d1), gamma_delta(&p, &j2));
    }

    #[test]
    fn computation_shape() {
        let p = load_program(P5).unwrap();
        let mut c = Computation::new();
        let e = p.atom("e").unwrap();
        c.push(TransitionTag::Al1 { rule: 2, atom: e }, pi(&p, &["e"], &[]));
        assert!(c.check_shape().is_ok());
        assert_eq!(c.len(), 1);
        let bad = Computation::from_parts(
            alloc::vec![pi(&p, &["e"], &[]), PInterpretation::default()],
            alloc::vec![TransitionTag::AtMost],
        );
        assert!(bad.is_err());
        assert_eq!(c.prefix(0), Computation::new());
    }
}
