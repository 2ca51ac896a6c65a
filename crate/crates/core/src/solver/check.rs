//! Validation of recorded computations against the Smodels transition
//! discipline.

use alloc::vec::Vec;

use super::{al_apply, al_case, al_step, at_most};
use crate::online::{Computation, Sign, TransitionTag};
use crate::program::{Atom, PInterpretation, Program};
use crate::semantics::well_founded;
use crate::Error;

fn fail(step: usize, reason: &'static str) -> Error {
    Error::MalformedComputation { step, reason }
}

fn case_number(tag: &TransitionTag) -> Option<u8> {
    match tag {
        TransitionTag::Al1 { .. } => Some(1),
        TransitionTag::Al2 { .. } => Some(2),
        TransitionTag::Al3 { .. } => Some(3),
        TransitionTag::Al4 { .. } => Some(4),
        _ => None,
    }
}

struct Open {
    atom: Atom,
    sign: Sign,
    before: PInterpretation,
    flipped: bool,
}

/// Checks a solver trace, backtracking included.
///
/// Each AtLeast step must be a valid instance of its case with no lower case
/// applicable; AtMost may only follow AtLeast quiescence and must change the
/// state; a choice needs the expand fixpoint and an unknown eligible atom; a
/// conflicting state must be last or be followed by a backtrack, which
/// restores the state before the innermost unflipped choice and is followed
/// by the opposite choice on the same atom.
pub fn check_trace(p: &Program, c: &Computation) -> Result<(), Error> {
    c.check_shape()?;
    let wf = well_founded(p).model.into_inner();
    let eligible = p.nant().difference(&wf.plus).difference(&wf.minus);
    let mut open: Vec<Open> = Vec::new();
    let mut expect_flip: Option<(Atom, Sign)> = None;
    let states = c.states();
    for (k, tag) in c.tags().iter().enumerate() {
        let step = k + 1;
        let (i, next) = (&states[k], &states[k + 1]);
        if let Some((atom, sign)) = expect_flip.take() {
            if *tag != (TransitionTag::Choice { atom, sign }) {
                return Err(fail(
                    step,
                    "backtrack is not followed by the opposite choice",
                ));
            }
        }
        let backtrack = matches!(tag, TransitionTag::Backtrack { .. });
        if i.is_conflicting() && !backtrack {
            return Err(fail(step, "transition out of a conflicting state"));
        }
        if let Some(c) = case_number(tag) {
            if al_apply(p, i, tag).as_ref() != Some(next) {
                return Err(fail(step, "invalid AtLeast step"));
            }
            if (1..c).any(|lower| al_case(p, i, lower).is_some()) {
                return Err(fail(step, "a lower AtLeast case applies"));
            }
            continue;
        }
        match *tag {
            TransitionTag::AtMost => {
                if al_step(p, i).is_some() {
                    return Err(fail(step, "atmost before AtLeast quiescence"));
                }
                if at_most(p, i) != *next || next == i {
                    return Err(fail(step, "invalid atmost step"));
                }
            }
            TransitionTag::Choice { atom, sign } => {
                if al_step(p, i).is_some() || at_most(p, i) != *i {
                    return Err(fail(step, "choice before the expand fixpoint"));
                }
                if atom.index() >= p.atom_count() || i.is_assigned(atom) {
                    return Err(fail(step, "choice on an assigned atom"));
                }
                let any_eligible = eligible.iter().any(|a| !i.is_assigned(a));
                if any_eligible && !eligible.contains(atom) {
                    return Err(fail(step, "choice on an ineligible atom"));
                }
                let mut want = i.clone();
                match sign {
                    Sign::Plus => want.plus.insert(atom),
                    Sign::Minus => want.minus.insert(atom),
                };
                if want != *next {
                    return Err(fail(step, "choice result differs"));
                }
                let flipped = open
                    .last()
                    .is_some_and(|o| o.atom == atom && o.before == *i && o.flipped);
                if flipped {
                    open.pop();
                }
                open.push(Open {
                    atom,
                    sign,
                    before: i.clone(),
                    flipped,
                });
            }
            TransitionTag::Backtrack { atom } => {
                if !i.is_conflicting() && !i.is_complete(p.atom_count()) {
                    return Err(fail(step, "backtrack from an open state"));
                }
                while open.last().is_some_and(|o| o.flipped) {
                    open.pop();
                }
                let Some(o) = open.last_mut() else {
                    return Err(fail(step, "backtrack without an open choice"));
                };
                if o.atom != atom || o.before != *next {
                    return Err(fail(step, "backtrack does not undo the innermost choice"));
                }
                o.flipped = true;
                expect_flip = Some((atom, o.sign.flip()));
            }
            _ => unreachable!("AtLeast tags handled above"),
        }
    }
    Ok(())
}

/// Checks a monotone computation: no backtracking, and a conflict only in
/// the last state.
pub fn check_smodels_computation(p: &Program, c: &Computation) -> Result<(), Error> {
    if let Some(k) = c
        .tags()
        .iter()
        .position(|t| matches!(t, TransitionTag::Backtrack { .. }))
    {
        return Err(fail(k + 1, "backtracking in a single computation"));
    }
    check_trace(p, c)
}
