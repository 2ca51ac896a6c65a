//! The P/N/S/F/L rewriting system. Its normal form exposes the
//! well-founded model: true atoms are the facts, false atoms the non-heads.

use alloc::vec::Vec;

use crate::program::{Atom, AtomSet, Interpretation, Program};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transformation {
    /// Drop `not b` when `b` heads no rule.
    Positive,
    /// Drop a rule with `not b` in its body when `b` is a fact.
    Negative,
    /// Drop a positive body atom that is a fact.
    Success,
    /// Drop a rule with a positive body atom that heads no rule.
    Failure,
    /// Drop every rule whose positive body meets an unfounded loop.
    Loop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormStep {
    pub tag: Transformation,
    /// Source index of the rule affected; `None` for loop steps.
    pub rule: Option<usize>,
    /// The body atom removed, or the loop set.
    pub atoms: AtomSet,
}

#[derive(Clone, Debug)]
pub struct NormalFormTrace {
    pub steps: Vec<NormalFormStep>,
    pub result: Program,
}

impl NormalFormTrace {
    /// Facts are true, atoms heading no rule are false.
    pub fn well_founded(&self) -> Interpretation {
        let plus = self.result.facts().clone();
        let minus = self.result.all_atoms().difference(&self.result.heads());
        Interpretation::new(plus, minus).expect("facts are heads")
    }
}

#[derive(Clone)]
struct Work {
    head: Atom,
    pos: AtomSet,
    neg: AtomSet,
    index: usize,
}

fn step(rules: &mut Vec<Work>, all: &AtomSet) -> Option<NormalFormStep> {
    let heads: AtomSet = rules.iter().map(|r| r.head).collect();
    let facts: AtomSet = rules
        .iter()
        .filter(|r| r.pos.is_empty() && r.neg.is_empty())
        .map(|r| r.head)
        .collect();
    let one = |a: Atom| -> AtomSet { [a].into_iter().collect() };

    for r in rules.iter_mut() {
        if let Some(b) = r.neg.iter().find(|b| !heads.contains(*b)) {
            r.neg.remove(b);
            return Some(NormalFormStep {
                tag: Transformation::Positive,
                rule: Some(r.index),
                atoms: one(b),
            });
        }
    }
    if let Some(k) = rules.iter().position(|r| r.neg.intersects(&facts)) {
        let r = rules.remove(k);
        return Some(NormalFormStep {
            tag: Transformation::Negative,
            rule: Some(r.index),
            atoms: r.neg.intersection(&facts),
        });
    }
    for r in rules.iter_mut() {
        if let Some(b) = r.pos.iter().find(|b| facts.contains(*b)) {
            r.pos.remove(b);
            return Some(NormalFormStep {
                tag: Transformation::Success,
                rule: Some(r.index),
                atoms: one(b),
            });
        }
    }
    if let Some(k) = rules.iter().position(|r| !r.pos.is_subset(&heads)) {
        let r = rules.remove(k);
        return Some(NormalFormStep {
            tag: Transformation::Failure,
            rule: Some(r.index),
            atoms: r.pos.difference(&heads),
        });
    }

    // greatest S where every rule for a member has a positive body atom in S
    let mut s = all.clone();
    loop {
        let outside: AtomSet = rules
            .iter()
            .filter(|r| s.contains(r.head) && r.pos.is_disjoint(&s))
            .map(|r| r.head)
            .collect();
        if outside.is_empty() {
            break;
        }
        s = s.difference(&outside);
    }
    let before = rules.len();
    rules.retain(|r| r.pos.is_disjoint(&s));
    if rules.len() == before {
        return None;
    }
    Some(NormalFormStep {
        tag: Transformation::Loop,
        rule: None,
        atoms: s,
    })
}

/// Rewrites `p` until no transformation applies; the loop rule is used only
/// when none of the others does.
pub fn normal_form(p: &Program) -> NormalFormTrace {
    let mut rules: Vec<Work> = p
        .rules()
        .iter()
        .map(|r| Work {
            head: r.head,
            pos: r.pos.clone(),
            neg: r.neg.clone(),
            index: r.index,
        })
        .collect();
    let all = p.all_atoms();
    let mut steps = Vec::new();
    while let Some(s) = step(&mut rules, &all) {
        steps.push(s);
    }
    let result = Program::new(
        p.atoms().clone(),
        rules.into_iter().map(|r| (r.head, r.pos, r.neg)),
    );
    NormalFormTrace { steps, result }
}
