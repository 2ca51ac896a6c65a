//! Snapshots and their incremental maintenance along a computation.

use alloc::collections::btree_map::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{gamma_delta_from, Computation, TransitionTag};
use crate::justification::{
    tentative_assumptions_with, validate_offline, EGraph, ENode, Edge, Label, Sigma,
};
use crate::program::{Atom, AtomSet, Interpretation, PInterpretation, Program};
use crate::semantics::{is_answer_set, well_founded};
use crate::Error;

/// `⟨Off, On, D⟩` for one state of a computation.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Snapshot {
    pub d: PInterpretation,
    pub off: BTreeMap<ENode, Arc<EGraph>>,
    pub on: BTreeMap<ENode, Arc<EGraph>>,
}

fn assume_graph(n: ENode) -> Arc<EGraph> {
    let label = match n {
        ENode::Pos(_) => Label::Plus,
        _ => Label::Minus,
    };
    Arc::new(EGraph::from_edges(
        Some(n),
        [Edge::new(n, ENode::Assume, label)],
    ))
}

impl Snapshot {
    /// The graph for `n`, preferring the off-line part.
    pub fn graph(&self, n: ENode) -> Option<&Arc<EGraph>> {
        self.off.get(&n).or_else(|| self.on.get(&n))
    }

    pub fn graph_for(&self, a: Atom, positive: bool) -> Option<&Arc<EGraph>> {
        self.graph(ENode::annotated(a, positive))
    }

    /// Union of the edges of all off-line graphs.
    pub fn off_edges(&self) -> alloc::collections::BTreeSet<Edge> {
        self.off
            .values()
            .flat_map(|g| g.edges().iter().copied())
            .collect()
    }

    /// Union of the edges of all on-line graphs.
    pub fn on_edges(&self) -> alloc::collections::BTreeSet<Edge> {
        self.on
            .values()
            .flat_map(|g| g.edges().iter().copied())
            .collect()
    }

    fn assemble(
        j: &PInterpretation,
        sigma: &Sigma,
        reuse: Option<(&Sigma, &Snapshot)>,
    ) -> Snapshot {
        let d = sigma.justified().clone();
        let mut off = BTreeMap::new();
        let keys = d
            .plus
            .iter()
            .map(ENode::Pos)
            .chain(d.minus.iter().map(ENode::Neg));
        for n in keys {
            let old = reuse
                .and_then(|(s, snap)| snap.off.get(&n).filter(|_| sigma.same_graph(s, n)).cloned());
            let g = old.unwrap_or_else(|| {
                Arc::new(sigma.graph(n).expect("justified atoms have a support"))
            });
            off.insert(n, g);
        }
        let mut on = BTreeMap::new();
        let open = j
            .plus
            .difference(&d.plus)
            .iter()
            .map(ENode::Pos)
            .chain(j.minus.difference(&d.minus).iter().map(ENode::Neg))
            .collect::<Vec<_>>();
        for n in open {
            let old = reuse.and_then(|(_, snap)| snap.on.get(&n).cloned());
            on.insert(n, old.unwrap_or_else(|| assume_graph(n)));
        }
        Snapshot { d, off, on }
    }
}

/// The snapshot of `j`, computed from scratch.
pub fn snapshot(p: &Program, j: &PInterpretation) -> Snapshot {
    let wf = well_founded(p).model.into_inner();
    let ta = tentative_assumptions_with(p, j, &wf);
    Snapshot::assemble(j, &Sigma::build(p, j, &ta), None)
}

#[derive(Clone, Debug)]
struct Checkpoint {
    atom: Atom,
    state: PInterpretation,
    ta: AtomSet,
    sigma: Sigma,
    snapshot: Snapshot,
}

/// Follows a computation one transition at a time, reusing the previous
/// snapshot where possible.
///
/// A checkpoint is taken at every choice; a backtrack on an atom restores
/// the checkpoint of the choice on that atom.
#[derive(Clone, Debug)]
pub struct SnapshotBuilder {
    wf: PInterpretation,
    state: PInterpretation,
    ta: AtomSet,
    sigma: Sigma,
    snapshot: Snapshot,
    checkpoints: Vec<Checkpoint>,
}

impl SnapshotBuilder {
    pub fn new(p: &Program) -> Self {
        let wf = well_founded(p).model.into_inner();
        let state = PInterpretation::default();
        let ta = AtomSet::new();
        let sigma = Sigma::build(p, &state, &ta);
        let snapshot = Snapshot::assemble(&state, &sigma, None);
        SnapshotBuilder {
            wf,
            state,
            ta,
            sigma,
            snapshot,
            checkpoints: Vec::new(),
        }
    }

    pub fn snapshot(&self) -> &Snapshot {
        &self.snapshot
    }

    pub fn state(&self) -> &PInterpretation {
        &self.state
    }

    /// Applies the transition `tag` leading to `next`.
    pub fn advance(
        &mut self,
        p: &Program,
        step: usize,
        tag: &TransitionTag,
        next: &PInterpretation,
    ) -> Result<&Snapshot, Error> {
        match *tag {
            TransitionTag::Backtrack { atom } => {
                loop {
                    let Some(cp) = self.checkpoints.pop() else {
                        return Err(Error::MalformedComputation {
                            step,
                            reason: "backtrack without a matching choice",
                        });
                    };
                    if cp.atom == atom {
                        if cp.state != *next {
                            return Err(Error::MalformedComputation {
                                step,
                                reason: "backtrack does not restore the state before the choice",
                            });
                        }
                        self.state = cp.state;
                        self.ta = cp.ta;
                        self.sigma = cp.sigma;
                        self.snapshot = cp.snapshot;
                        break;
                    }
                }
                return Ok(&self.snapshot);
            }
            TransitionTag::Choice { atom, .. } => {
                self.checkpoints.push(Checkpoint {
                    atom,
                    state: self.state.clone(),
                    ta: self.ta.clone(),
                    sigma: self.sigma.clone(),
                    snapshot: self.snapshot.clone(),
                });
            }
            _ => {}
        }
        if !self.state.leq(next) {
            return Err(Error::MalformedComputation {
                step,
                reason: "step is not monotone",
            });
        }
        self.update(p, next);
        Ok(&self.snapshot)
    }

    fn update(&mut self, p: &Program, next: &PInterpretation) {
        let d = &self.snapshot.d;
        let added_plus = next.plus.difference(&self.state.plus);
        let only_plus = next.minus == self.state.minus;
        let quiet = only_plus
            && added_plus
                .iter()
                .all(|a| !p.rules_for(a).any(|r| d.satisfies_body(r)));
        if quiet {
            for a in added_plus.iter() {
                let n = ENode::Pos(a);
                self.snapshot.on.insert(n, assume_graph(n));
            }
            self.state = next.clone();
            return;
        }
        let ta = tentative_assumptions_with(p, next, &self.wf);
        let d_next = gamma_delta_from(p, next, &self.wf, d);
        if d_next == *d && ta == self.ta {
            let on = &mut self.snapshot.on;
            for n in next
                .plus
                .difference(&self.state.plus)
                .iter()
                .map(ENode::Pos)
                .chain(
                    next.minus
                        .difference(&self.state.minus)
                        .iter()
                        .map(ENode::Neg),
                )
            {
                on.insert(n, assume_graph(n));
            }
            self.state = next.clone();
            return;
        }
        let sigma = Sigma::build(p, next, &ta);
        debug_assert_eq!(sigma.justified(), &d_next);
        self.snapshot = Snapshot::assemble(next, &sigma, Some((&self.sigma, &self.snapshot)));
        self.sigma = sigma;
        self.ta = ta;
        self.state = next.clone();
    }
}

/// One snapshot per state of `c`.
pub fn online_justification(p: &Program, c: &Computation) -> Result<Vec<Snapshot>, Error> {
    c.check_shape()?;
    let mut b = SnapshotBuilder::new(p);
    let mut out = alloc::vec![b.snapshot().clone()];
    for (k, (tag, next)) in c.tags().iter().zip(&c.states()[1..]).enumerate() {
        out.push(b.advance(p, k + 1, tag, next)?.clone());
    }
    Ok(out)
}

/// Whether the last snapshot of the complete computation `c` consists of
/// off-line justifications only.
pub fn final_snapshot_is_offline(p: &Program, c: &Computation) -> Result<bool, Error> {
    let last = c.last();
    let m = Interpretation::new(last.plus.clone(), last.minus.clone())
        .map_err(|_| Error::NotAnswerSet)?;
    if !is_answer_set(p, &m)? {
        return Err(Error::NotAnswerSet);
    }
    let snaps = online_justification(p, c)?;
    let s = snaps.last().expect("at least one snapshot");
    if !s.on.is_empty() {
        return Ok(false);
    }
    let wf = well_founded(p).model.into_inner();
    let ta = tentative_assumptions_with(p, last, &wf);
    Ok(s.off
        .iter()
        .all(|(n, g)| validate_offline(p, g, *n, last, &ta)))
}
