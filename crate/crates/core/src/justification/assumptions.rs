//! Tentative assumptions, the negative reduct and assumption sets.

use alloc::vec::Vec;

use crate::program::{Atom, AtomSet, Interpretation, PInterpretation, Program};
use crate::semantics::{is_answer_set, well_founded};
use crate::Error;

pub const DEFAULT_ASSUMPTION_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AssumptionSet {
    pub atoms: AtomSet,
    pub minimal: bool,
}

/// `NANT(P) ∩ M⁻` minus the atoms decided by the well-founded model.
pub fn tentative_assumptions(p: &Program, m: &PInterpretation) -> AtomSet {
    tentative_assumptions_with(p, m, &well_founded(p).model)
}

pub fn tentative_assumptions_with(
    p: &Program,
    m: &PInterpretation,
    wf: &PInterpretation,
) -> AtomSet {
    p.nant()
        .intersection(&m.minus)
        .difference(&wf.plus)
        .difference(&wf.minus)
}

/// `p` without the rules whose head is in `u`.
pub fn negative_reduct(p: &Program, u: &AtomSet) -> Program {
    p.derive(|r| {
        if u.contains(r.head) {
            None
        } else {
            Some((r.pos.clone(), r.neg.clone()))
        }
    })
}

fn check_answer_set(p: &Program, m: &Interpretation) -> Result<(), Error> {
    if is_answer_set(p, m)? {
        Ok(())
    } else {
        Err(Error::NotAnswerSet)
    }
}

/// Whether the well-founded model of `NR(p, u)` is `m`.
pub fn is_assumption(p: &Program, m: &Interpretation, u: &AtomSet) -> Result<bool, Error> {
    check_answer_set(p, m)?;
    if !u.is_subset(&tentative_assumptions(p, m)) {
        return Err(Error::NotTentative);
    }
    Ok(holds(p, m, u))
}

fn holds(p: &Program, m: &Interpretation, u: &AtomSet) -> bool {
    well_founded(&negative_reduct(p, u)).model == *m
}

/// Next integer with the same number of set bits.
fn next_combination(x: u32) -> u32 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// The ⊆-minimal assumptions, by subset search over the tentative
/// assumptions in order of size. Supersets of a hit are skipped.
pub fn minimal_assumptions(
    p: &Program,
    m: &Interpretation,
    cap: usize,
) -> Result<Vec<AssumptionSet>, Error> {
    check_answer_set(p, m)?;
    let ta: Vec<Atom> = tentative_assumptions(p, m).iter().collect();
    let n = ta.len();
    if n > cap || n > 30 {
        return Err(Error::CapExceeded {
            what: "tentative assumption",
            cap,
        });
    }
    let subset = |mask: u32| -> AtomSet {
        (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| ta[i])
            .collect()
    };
    let mut found: Vec<u32> = Vec::new();
    for k in 0..=n {
        let mut mask: u32 = (1u32 << k) - 1;
        while mask < (1u32 << n) {
            if !found.iter().any(|f| f & mask == *f) && holds(p, m, &subset(mask)) {
                found.push(mask);
            }
            if mask == 0 {
                break;
            }
            mask = next_combination(mask);
        }
    }
    Ok(found
        .into_iter()
        .map(|mask| AssumptionSet {
            atoms: subset(mask),
            minimal: true,
        })
        .collect())
}
