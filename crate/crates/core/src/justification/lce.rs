//! Local consistent explanations.

use alloc::collections::btree_set::BTreeSet;
use alloc::vec::Vec;

use crate::program::{Atom, AtomSet, Literal, PInterpretation, Program, Rule};
use crate::Error;

use super::ENode;

/// A one-step reason for the value of an atom.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Lce {
    /// A non-empty set of literals.
    Literals(BTreeSet<Literal>),
    Assume,
    Top,
    Bot,
}

pub const DEFAULT_LCE_CAP: usize = 64;

/// `S_r(J,U)`: the literals of `r` already false under `<J⁺, J⁻ ∪ U>`.
pub fn falsifier_set(r: &Rule, j: &PInterpretation, u: &AtomSet) -> BTreeSet<Literal> {
    let mut s: BTreeSet<Literal> = r
        .pos
        .iter()
        .filter(|a| j.minus.contains(*a) || u.contains(*a))
        .map(Literal::pos)
        .collect();
    s.extend(
        r.neg
            .iter()
            .filter(|a| j.plus.contains(*a))
            .map(Literal::neg),
    );
    s
}

/// `S_r(J,U)` for every rule with head `b`, keyed by rule index.
pub fn falsifier_sets(
    p: &Program,
    b: Atom,
    j: &PInterpretation,
    u: &AtomSet,
) -> Vec<(usize, BTreeSet<Literal>)> {
    p.rules_for(b)
        .map(|r| (r.index, falsifier_set(r, j, u)))
        .collect()
}

fn in_neg_domain(l: &Literal, j: &PInterpretation, u: &AtomSet) -> bool {
    if l.negated {
        j.plus.contains(l.atom)
    } else {
        j.minus.contains(l.atom) || u.contains(l.atom)
    }
}

/// Explanations of `b⁺` w.r.t. `(J, U)`; empty when `b ∉ J⁺`.
pub fn lce_pos(p: &Program, b: Atom, j: &PInterpretation, u: &AtomSet) -> BTreeSet<Lce> {
    let mut out = BTreeSet::new();
    if !j.plus.contains(b) {
        return out;
    }
    out.insert(Lce::Assume);
    for r in p.rules_for(b) {
        if r.pos.is_subset(&j.plus) && r.neg.iter().all(|a| j.minus.contains(a) || u.contains(a)) {
            out.insert(if r.is_fact() {
                Lce::Top
            } else {
                Lce::Literals(r.body())
            });
        }
    }
    out
}

fn is_hitting(rules: &[&Rule], s: &BTreeSet<Literal>) -> bool {
    rules.iter().all(|r| r.hit_by(s))
}

/// Drops members, in ascending order, whose removal keeps every rule hit.
pub(crate) fn prune(rules: &[&Rule], mut s: BTreeSet<Literal>) -> BTreeSet<Literal> {
    let members: Vec<Literal> = s.iter().copied().collect();
    for l in members {
        s.remove(&l);
        if !is_hitting(rules, &s) {
            s.insert(l);
        }
    }
    s
}

/// Greedy minimal hitting set: for each rule not yet hit, in index order, add
/// the least candidate, then prune. `None` if some rule has no candidate.
pub(crate) fn greedy(
    rules: &[&Rule],
    mut candidates: impl FnMut(&Rule) -> BTreeSet<Literal>,
) -> Option<BTreeSet<Literal>> {
    let mut s = BTreeSet::new();
    for r in rules {
        if r.hit_by(&s) {
            continue;
        }
        let least = candidates(r).first().copied()?;
        s.insert(least);
    }
    Some(prune(rules, s))
}

/// One explanation of `b⁻` other than `assume`, found greedily.
///
/// `None` when `b ∉ J⁻ ∪ U` or no such explanation exists.
pub fn lce_neg_one(p: &Program, b: Atom, j: &PInterpretation, u: &AtomSet) -> Option<Lce> {
    if !(j.minus.contains(b) || u.contains(b)) {
        return None;
    }
    let rules: Vec<&Rule> = p.rules_for(b).collect();
    if rules.is_empty() {
        return Some(Lce::Bot);
    }
    greedy(&rules, |r| falsifier_set(r, j, u)).map(Lce::Literals)
}

/// All minimal hitting sets of `family`, failing once more than `cap` are found.
fn minimal_hitting_sets(
    family: &[BTreeSet<Literal>],
    cap: usize,
) -> Result<BTreeSet<BTreeSet<Literal>>, Error> {
    fn critical_ok(family: &[BTreeSet<Literal>], s: &BTreeSet<Literal>) -> bool {
        // every member hits some set no other member hits
        s.iter().all(|l| {
            family
                .iter()
                .any(|f| f.contains(l) && f.iter().filter(|m| s.contains(m)).count() == 1)
        })
    }
    fn go(
        family: &[BTreeSet<Literal>],
        s: &mut BTreeSet<Literal>,
        out: &mut BTreeSet<BTreeSet<Literal>>,
        cap: usize,
    ) -> Result<(), Error> {
        let Some(unhit) = family.iter().find(|f| f.is_disjoint(s)) else {
            out.insert(s.clone());
            if out.len() > cap {
                return Err(Error::CapExceeded {
                    what: "negative explanation",
                    cap,
                });
            }
            return Ok(());
        };
        for &l in unhit {
            s.insert(l);
            if critical_ok(family, s) {
                go(family, s, out, cap)?;
            }
            s.remove(&l);
        }
        Ok(())
    }
    let mut out = BTreeSet::new();
    if family.iter().any(|f| f.is_empty()) {
        return Ok(out);
    }
    go(family, &mut BTreeSet::new(), &mut out, cap)?;
    Ok(out)
}

/// Explanations of `b⁻` w.r.t. `(J, U)`; empty when `b ∉ J⁻ ∪ U`.
pub fn lce_neg(
    p: &Program,
    b: Atom,
    j: &PInterpretation,
    u: &AtomSet,
) -> Result<BTreeSet<Lce>, Error> {
    lce_neg_capped(p, b, j, u, DEFAULT_LCE_CAP)
}

pub fn lce_neg_capped(
    p: &Program,
    b: Atom,
    j: &PInterpretation,
    u: &AtomSet,
    cap: usize,
) -> Result<BTreeSet<Lce>, Error> {
    let mut out = BTreeSet::new();
    if !(j.minus.contains(b) || u.contains(b)) {
        return Ok(out);
    }
    out.insert(Lce::Assume);
    let family: Vec<_> = falsifier_sets(p, b, j, u)
        .into_iter()
        .map(|(_, s)| s)
        .collect();
    if family.is_empty() {
        out.insert(Lce::Bot);
        return Ok(out);
    }
    for s in minimal_hitting_sets(&family, cap)? {
        out.insert(Lce::Literals(s));
    }
    Ok(out)
}

/// Whether `lce` explains the annotated node `node` w.r.t. `(J, U)`.
pub fn is_lce(p: &Program, node: ENode, lce: &Lce, j: &PInterpretation, u: &AtomSet) -> bool {
    match node {
        ENode::Pos(b) => {
            if !j.plus.contains(b) {
                return false;
            }
            match lce {
                Lce::Assume => true,
                Lce::Bot => false,
                Lce::Top => p.rules_for(b).any(|r| r.is_fact()),
                Lce::Literals(s) => {
                    !s.is_empty()
                        && s.iter().all(|l| {
                            if l.negated {
                                j.minus.contains(l.atom) || u.contains(l.atom)
                            } else {
                                j.plus.contains(l.atom)
                            }
                        })
                        && p.rules_for(b).any(|r| r.body() == *s)
                }
            }
        }
        ENode::Neg(b) => {
            if !(j.minus.contains(b) || u.contains(b)) {
                return false;
            }
            let rules: Vec<&Rule> = p.rules_for(b).collect();
            match lce {
                Lce::Assume => true,
                Lce::Top => false,
                Lce::Bot => rules.is_empty(),
                Lce::Literals(s) => {
                    !s.is_empty()
                        && s.iter().all(|l| in_neg_domain(l, j, u))
                        && is_hitting(&rules, s)
                        && prune(&rules, s.clone()) == *s
                }
            }
        }
        _ => false,
    }
}
