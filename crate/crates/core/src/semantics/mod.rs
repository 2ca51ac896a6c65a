//! Reduct, least models, the well-founded model and answer set checks.

mod normal_form;
mod oracle;

pub use normal_form::{normal_form, NormalFormStep, NormalFormTrace, Transformation};
pub use oracle::{brute_force_answer_sets, DEFAULT_ATOM_CAP};

use alloc::vec::Vec;

use crate::program::{AtomSet, Interpretation, PInterpretation, Program, Rule};
use crate::Error;

/// Least fixpoint of `S ↦ seed ∪ {head(r) | usable(r), pos(r) ⊆ S}`.
pub(crate) fn closure(p: &Program, seed: &AtomSet, usable: impl Fn(&Rule) -> bool) -> AtomSet {
    let rules = p.rules();
    let mut missing: Vec<usize> = rules.iter().map(|r| r.pos.len()).collect();
    let enabled: Vec<bool> = rules.iter().map(&usable).collect();
    let mut derived = seed.clone();
    let mut queue: Vec<_> = seed.iter().collect();
    for r in rules {
        if enabled[r.index] && r.pos.is_empty() && derived.insert(r.head) {
            queue.push(r.head);
        }
    }
    while let Some(a) = queue.pop() {
        for &k in p.positive_occurrences(a) {
            missing[k] -= 1;
            if missing[k] == 0 && enabled[k] {
                let h = rules[k].head;
                if derived.insert(h) {
                    queue.push(h);
                }
            }
        }
    }
    derived
}

/// The reduct of `p` with respect to `i`.
pub fn reduct(p: &Program, i: &PInterpretation) -> Program {
    p.derive(|r| {
        if r.neg.intersects(&i.plus) {
            None
        } else {
            Some((r.pos.clone(), AtomSet::new()))
        }
    })
}

/// Least model of a definite program.
pub fn least_model(p: &Program) -> Result<AtomSet, Error> {
    if !p.is_definite() {
        return Err(Error::NotDefinite);
    }
    Ok(closure(p, &AtomSet::new(), |_| true))
}

/// Whether the complete interpretation `i` is an answer set of `p`.
pub fn is_answer_set(p: &Program, i: &Interpretation) -> Result<bool, Error> {
    if !i.is_complete(p.atom_count()) {
        return Err(Error::Incomplete);
    }
    Ok(answer_set_check(p, &i.plus))
}

/// `plus` equals the least model of the reduct w.r.t. `<plus, A ∖ plus>`.
pub(crate) fn answer_set_check(p: &Program, plus: &AtomSet) -> bool {
    closure(p, &AtomSet::new(), |r| r.neg.is_disjoint(plus)) == *plus
}

/// One application of `T_{P,V}` to `s`.
pub fn tpv(p: &Program, s: &AtomSet, v: &AtomSet) -> AtomSet {
    p.rules()
        .iter()
        .filter(|r| r.pos.is_subset(s) && r.neg.is_disjoint(v))
        .map(|r| r.head)
        .collect()
}

/// Least fixpoint of `T_{P,V}`.
pub fn lfp_tpv(p: &Program, v: &AtomSet) -> AtomSet {
    closure(p, &AtomSet::new(), |r| r.neg.is_disjoint(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KUPair {
    pub k: AtomSet,
    pub u: AtomSet,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellFounded {
    pub model: Interpretation,
    /// Every computed pair, ending with the repeated one.
    pub trace: Vec<KUPair>,
}

/// The well-founded model through the alternating `K_i`/`U_i` sequence.
pub fn well_founded(p: &Program) -> WellFounded {
    let all = p.all_atoms();
    let k0 = lfp_tpv(p, &all);
    let u0 = lfp_tpv(p, &k0);
    let mut trace = alloc::vec![KUPair {
        k: k0,
        u: u0,
        index: 0
    }];
    loop {
        let last = trace.last().unwrap();
        let k = lfp_tpv(p, &last.u);
        let u = lfp_tpv(p, &k);
        let repeated = k == last.k && u == last.u;
        let index = last.index + 1;
        trace.push(KUPair { k, u, index });
        if repeated {
            break;
        }
    }
    let last = trace.last().unwrap();
    let model =
        Interpretation::new(last.k.clone(), all.difference(&last.u)).expect("K is contained in U");
    WellFounded { model, trace }
}
