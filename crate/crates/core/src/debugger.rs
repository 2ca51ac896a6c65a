//! A stepping debugger over the solver: breakpoints, run/step, and a
//! bounded table of resumable checkpoints.

use alloc::collections::btree_map::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::justification::{EGraph, ENode};
use crate::online::{Sign, Snapshot, SnapshotBuilder, TransitionKind, TransitionTag};
use crate::program::{Atom, AtomSet, PInterpretation, Program};
use crate::solver::{Model, SignOrder, SolveOptions, Solver, StepEvent};
use crate::Error;

pub const DEFAULT_CHECKPOINT_CAP: usize = 1024;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BreakValue {
    True,
    False,
    Any,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Breakpoint {
    /// Fires on the transition that assigns `atom` the given value.
    Atom { atom: Atom, value: BreakValue },
    /// Fires when a transition produces a conflicting state.
    Conflict,
    /// Fires on a conflict that involves `atom`: the atom is itself in
    /// conflict or occurs in a graph of a conflicting atom.
    ConflictOnAtom { atom: Atom },
    /// Fires when the `index`-th model (1-based) is found.
    Answer { index: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Status {
    Paused,
    Done,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PauseReason {
    Step,
    Breakpoint(u32),
    Model(usize),
    Exhausted,
}

/// A compact description of the session state.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StateDigest {
    /// Number of transitions recorded so far.
    pub step: usize,
    pub plus: AtomSet,
    pub minus: AtomSet,
    pub conflict: bool,
    pub decisions: Vec<(Atom, Sign)>,
    pub models: usize,
    pub status: Status,
    pub last: Option<TransitionTag>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pause {
    pub checkpoint: u64,
    pub reason: PauseReason,
    pub digest: StateDigest,
}

#[derive(Clone, Debug)]
struct Saved {
    solver: Solver,
    builder: SnapshotBuilder,
    models: Vec<Model>,
    status: Status,
    last: Option<TransitionTag>,
}

#[derive(Clone, Debug)]
struct Table {
    cap: usize,
    next_id: u64,
    clock: u64,
    entries: BTreeMap<u64, (Saved, StateDigest, u64)>,
}

impl Table {
    fn insert(&mut self, saved: Saved, digest: StateDigest) -> u64 {
        if self.entries.len() >= self.cap {
            let oldest = self
                .entries
                .iter()
                .min_by_key(|(_, (_, _, used))| *used)
                .map(|(id, _)| *id);
            if let Some(id) = oldest {
                self.entries.remove(&id);
            }
        }
        let id = self.next_id;
        self.next_id += 1;
        self.clock += 1;
        self.entries.insert(id, (saved, digest, self.clock));
        id
    }

    fn get(&mut self, id: u64) -> Option<Saved> {
        self.clock += 1;
        let clock = self.clock;
        self.entries.get_mut(&id).map(|e| {
            e.2 = clock;
            e.0.clone()
        })
    }
}

/// One debugging session over a program.
#[derive(Clone, Debug)]
pub struct Session {
    p: Arc<Program>,
    solver: Solver,
    builder: SnapshotBuilder,
    models: Vec<Model>,
    status: Status,
    last: Option<TransitionTag>,
    breakpoints: BTreeMap<u32, Breakpoint>,
    next_bp: u32,
    table: Table,
}

impl Session {
    pub fn new(p: Arc<Program>, opts: SolveOptions) -> Self {
        Session::with_capacity(p, opts, DEFAULT_CHECKPOINT_CAP)
    }

    /// A session keeping at most `cap` checkpoints.
    pub fn with_capacity(p: Arc<Program>, opts: SolveOptions, cap: usize) -> Self {
        let opts = SolveOptions {
            trace: true,
            ..opts
        };
        let builder = SnapshotBuilder::new(&p);
        let solver = Solver::new(Arc::clone(&p), opts);
        let mut s = Session {
            p,
            solver,
            builder,
            models: Vec::new(),
            status: Status::Paused,
            last: None,
            breakpoints: BTreeMap::new(),
            next_bp: 1,
            table: Table {
                cap: cap.max(1),
                next_id: 0,
                clock: 0,
                entries: BTreeMap::new(),
            },
        };
        s.save();
        s
    }

    /// Parses, grounds and opens a session with default options.
    pub fn from_text(text: &str) -> Result<Self, Error> {
        Ok(Session::new(
            Arc::new(crate::load_program(text)?),
            SolveOptions::default(),
        ))
    }

    pub fn program(&self) -> &Arc<Program> {
        &self.p
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn current(&self) -> &PInterpretation {
        self.solver.current()
    }

    pub fn solver(&self) -> &Solver {
        &self.solver
    }

    pub fn snapshot(&self) -> &Snapshot {
        self.builder.snapshot()
    }

    pub fn models(&self) -> &[Model] {
        &self.models
    }

    pub fn last_transition(&self) -> Option<TransitionTag> {
        self.last
    }

    pub fn add_breakpoint(&mut self, bp: Breakpoint) -> u32 {
        let id = self.next_bp;
        self.next_bp += 1;
        self.breakpoints.insert(id, bp);
        id
    }

    pub fn remove_breakpoint(&mut self, id: u32) -> Result<Breakpoint, Error> {
        self.breakpoints
            .remove(&id)
            .ok_or(Error::UnknownBreakpoint(id))
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = (u32, Breakpoint)> + '_ {
        self.breakpoints.iter().map(|(k, v)| (*k, *v))
    }

    pub fn digest(&self) -> StateDigest {
        let cur = self.solver.current();
        StateDigest {
            step: self.solver.trace().len(),
            plus: cur.plus.clone(),
            minus: cur.minus.clone(),
            conflict: cur.is_conflicting(),
            decisions: self.solver.decisions(),
            models: self.models.len(),
            status: self.status,
            last: self.last,
        }
    }

    /// Stored checkpoints as `(id, digest)`, oldest id first.
    pub fn checkpoints(&self) -> Vec<(u64, StateDigest)> {
        self.table
            .entries
            .iter()
            .map(|(id, (_, d, _))| (*id, d.clone()))
            .collect()
    }

    fn save(&mut self) -> u64 {
        let saved = Saved {
            solver: self.solver.clone(),
            builder: self.builder.clone(),
            models: self.models.clone(),
            status: self.status,
            last: self.last,
        };
        let digest = self.digest();
        self.table.insert(saved, digest)
    }

    fn pause(&mut self, reason: PauseReason) -> Pause {
        let checkpoint = self.save();
        Pause {
            checkpoint,
            reason,
            digest: self.digest(),
        }
    }

    /// The graph of `atom` with the given sign in the current snapshot.
    pub fn justification(&self, atom: Atom, positive: bool) -> Result<Arc<EGraph>, Error> {
        if atom.index() >= self.p.atom_count() {
            return Err(Error::UnknownAtom(String::from("?")));
        }
        self.snapshot()
            .graph_for(atom, positive)
            .cloned()
            .ok_or(Error::NodeNotFound)
    }

    fn conflict_involves(&self, atom: Atom) -> bool {
        let cur = self.solver.current();
        let conflicts = cur.conflicts();
        if conflicts.contains(atom) {
            return true;
        }
        let snap = self.snapshot();
        conflicts.iter().any(|c| {
            [true, false].into_iter().any(|pos| {
                snap.graph_for(c, pos)
                    .is_some_and(|g| g.contains(ENode::Pos(atom)) || g.contains(ENode::Neg(atom)))
            })
        })
    }

    fn fired(&self, before: &PInterpretation, event: &StepEvent) -> Option<u32> {
        self.breakpoints.iter().find_map(|(&id, bp)| {
            let hit = match (event, bp) {
                (StepEvent::Model(m), Breakpoint::Answer { index }) => m.index == *index,
                (StepEvent::Transition { tag, state }, _)
                    if tag.kind() != TransitionKind::Backtrack =>
                {
                    match *bp {
                        Breakpoint::Atom { atom, value } => {
                            let t = state.plus.contains(atom) && !before.plus.contains(atom);
                            let f = state.minus.contains(atom) && !before.minus.contains(atom);
                            match value {
                                BreakValue::True => t,
                                BreakValue::False => f,
                                BreakValue::Any => t || f,
                            }
                        }
                        Breakpoint::Conflict => state.is_conflicting(),
                        Breakpoint::ConflictOnAtom { atom } => {
                            state.is_conflicting() && self.conflict_involves(atom)
                        }
                        Breakpoint::Answer { .. } => false,
                    }
                }
                _ => false,
            };
            hit.then_some(id)
        })
    }

    /// Applies one solver step; the reason is the breakpoint that fired, if any.
    fn advance(&mut self) -> Result<PauseReason, Error> {
        if self.status == Status::Done {
            return Err(Error::Exhausted);
        }
        let before = self.solver.current().clone();
        let event = self.solver.step()?;
        match &event {
            StepEvent::Transition { tag, state } => {
                let step = self.solver.trace().len();
                self.builder.advance(&self.p, step, tag, state)?;
                self.last = Some(*tag);
            }
            StepEvent::Model(m) => self.models.push(m.clone()),
            StepEvent::Exhausted => {}
        }
        if self.solver.is_done() {
            self.status = Status::Done;
        }
        if let Some(id) = self.fired(&before, &event) {
            return Ok(PauseReason::Breakpoint(id));
        }
        Ok(match event {
            StepEvent::Transition { .. } => PauseReason::Step,
            StepEvent::Model(m) => PauseReason::Model(m.index),
            StepEvent::Exhausted => PauseReason::Exhausted,
        })
    }

    /// Exactly one step, then pause.
    pub fn step(&mut self) -> Result<Pause, Error> {
        let reason = self.advance()?;
        Ok(self.pause(reason))
    }

    /// Steps until a breakpoint fires, a model is found or the search ends.
    pub fn run(&mut self) -> Result<Pause, Error> {
        loop {
            let reason = self.advance()?;
            if reason != PauseReason::Step || self.status == Status::Done {
                return Ok(self.pause(reason));
            }
        }
    }

    /// Makes the stored checkpoint `id` the current state.
    pub fn restore(&mut self, id: u64) -> Result<StateDigest, Error> {
        let saved = self.table.get(id).ok_or(Error::UnknownCheckpoint(id))?;
        self.solver = saved.solver;
        self.builder = saved.builder;
        self.models = saved.models;
        self.status = saved.status;
        self.last = saved.last;
        Ok(self.digest())
    }

    /// Restores checkpoint `id`, optionally switching the sign order for
    /// later choices, and runs.
    pub fn resume_from(&mut self, id: u64, order: Option<SignOrder>) -> Result<Pause, Error> {
        self.restore(id)?;
        if let Some(o) = order {
            self.solver.set_sign_order(o);
        }
        self.run()
    }

    /// Runs to exhaustion, returning every model found on the way.
    pub fn run_to_end(&mut self) -> Result<&[Model], Error> {
        while self.status != Status::Done {
            self.run()?;
        }
        Ok(&self.models)
    }
}
