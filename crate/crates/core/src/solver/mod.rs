//! Smodels-style search: AtLeast cases, AtMost, choose and chronological
//! backtracking, recording every transition.

mod check;

pub use check::{check_smodels_computation, check_trace};

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::online::{Computation, Sign, TransitionTag};
use crate::program::{Atom, AtomSet, Interpretation, Literal, PInterpretation, Program, Rule};
use crate::semantics::{answer_set_check, closure, well_founded};
use crate::Error;

fn with_plus(i: &PInterpretation, a: Atom) -> PInterpretation {
    let mut n = i.clone();
    n.plus.insert(a);
    n
}

fn with_minus(i: &PInterpretation, a: Atom) -> PInterpretation {
    let mut n = i.clone();
    n.minus.insert(a);
    n
}

/// The only body literal of `r` not yet true in `i`, if there is exactly one.
fn single_open_literal(r: &Rule, i: &PInterpretation) -> Option<Literal> {
    let mut open = r
        .pos
        .iter()
        .filter(|a| !i.plus.contains(*a))
        .map(Literal::pos)
        .chain(
            r.neg
                .iter()
                .filter(|a| !i.minus.contains(*a))
                .map(Literal::neg),
        );
    let l = open.next()?;
    open.next().is_none().then_some(l)
}

fn atoms(p: &Program) -> impl Iterator<Item = Atom> {
    (0..p.atom_count() as u32).map(Atom::new)
}

fn al1(p: &Program, i: &PInterpretation) -> Option<(PInterpretation, TransitionTag)> {
    let r = p
        .rules()
        .iter()
        .find(|r| !i.plus.contains(r.head) && i.satisfies_body(r))?;
    Some((
        with_plus(i, r.head),
        TransitionTag::Al1 {
            rule: r.index,
            atom: r.head,
        },
    ))
}

fn al2(p: &Program, i: &PInterpretation) -> Option<(PInterpretation, TransitionTag)> {
    let a = atoms(p).find(|&a| !i.is_assigned(a) && p.rules_for(a).all(|r| i.falsifies_body(r)))?;
    Some((with_minus(i, a), TransitionTag::Al2 { atom: a }))
}

fn al3_instance<'p>(
    p: &'p Program,
    i: &PInterpretation,
    a: Atom,
) -> Option<(PInterpretation, &'p Rule)> {
    if !i.plus.contains(a) {
        return None;
    }
    let mut live = p.rules_for(a).filter(|r| !i.falsifies_body(r));
    let r = live.next()?;
    if live.next().is_some() || (r.pos.is_subset(&i.plus) && r.neg.is_subset(&i.minus)) {
        return None;
    }
    let next = PInterpretation::new(i.plus.union(&r.pos), i.minus.union(&r.neg));
    (next != *i).then_some((next, r))
}

fn al3(p: &Program, i: &PInterpretation) -> Option<(PInterpretation, TransitionTag)> {
    i.plus.iter().find_map(|a| {
        al3_instance(p, i, a).map(|(n, r)| {
            (
                n,
                TransitionTag::Al3 {
                    rule: r.index,
                    atom: a,
                },
            )
        })
    })
}

fn al4_instance(i: &PInterpretation, r: &Rule) -> Option<(PInterpretation, Atom)> {
    if !i.minus.contains(r.head) {
        return None;
    }
    let l = single_open_literal(r, i)?;
    if l.negated {
        (!i.plus.contains(l.atom)).then(|| (with_plus(i, l.atom), l.atom))
    } else {
        (!i.minus.contains(l.atom)).then(|| (with_minus(i, l.atom), l.atom))
    }
}

fn al4(p: &Program, i: &PInterpretation) -> Option<(PInterpretation, TransitionTag)> {
    i.minus.iter().find_map(|a| {
        p.rules_for(a).find_map(|r| {
            al4_instance(i, r).map(|(n, b)| {
                (
                    n,
                    TransitionTag::Al4 {
                        rule: r.index,
                        atom: b,
                    },
                )
            })
        })
    })
}

/// The first instance of case `c` (1 to 4) that changes `i`.
pub fn al_case(
    p: &Program,
    i: &PInterpretation,
    c: u8,
) -> Option<(PInterpretation, TransitionTag)> {
    match c {
        1 => al1(p, i),
        2 => al2(p, i),
        3 => al3(p, i),
        4 => al4(p, i),
        _ => None,
    }
}

/// One AtLeast step using the lowest applicable case; `None` when quiescent.
pub fn al_step(p: &Program, i: &PInterpretation) -> Option<(PInterpretation, TransitionTag)> {
    (1..=4).find_map(|c| al_case(p, i, c))
}

/// The result of the instance named by `tag` on `i`, if it is a valid
/// instance of its case that changes `i`.
pub fn al_apply(p: &Program, i: &PInterpretation, tag: &TransitionTag) -> Option<PInterpretation> {
    let rule = |k: usize| (k < p.rules().len()).then(|| p.rule(k));
    match *tag {
        TransitionTag::Al1 { rule: k, atom } => {
            let r = rule(k)?;
            (r.head == atom && !i.plus.contains(atom) && i.satisfies_body(r))
                .then(|| with_plus(i, atom))
        }
        TransitionTag::Al2 { atom } => (atom.index() < p.atom_count()
            && !i.is_assigned(atom)
            && p.rules_for(atom).all(|r| i.falsifies_body(r)))
        .then(|| with_minus(i, atom)),
        TransitionTag::Al3 { rule: k, atom } => {
            let (next, r) = al3_instance(p, i, atom)?;
            (r.index == k).then_some(next)
        }
        TransitionTag::Al4 { rule: k, atom } => {
            let (next, b) = al4_instance(i, rule(k)?)?;
            (b == atom).then_some(next)
        }
        _ => None,
    }
}

/// `I⁻` extended with the atoms outside the closure of `I⁺` under all
/// rules with negative bodies ignored.
pub fn at_most(p: &Program, i: &PInterpretation) -> PInterpretation {
    let reach = closure(p, &i.plus, |_| true);
    let mut minus = i.minus.clone();
    minus.extend_from(&p.all_atoms().difference(&reach));
    PInterpretation::new(i.plus.clone(), minus)
}

/// AtLeast to quiescence alternated with AtMost until neither changes the
/// state, stopping early on a conflict. Returns the recorded steps.
pub fn expand(
    p: &Program,
    s: &PInterpretation,
) -> (PInterpretation, Vec<(TransitionTag, PInterpretation)>) {
    let mut cur = s.clone();
    let mut steps = Vec::new();
    loop {
        if cur.is_conflicting() {
            return (cur, steps);
        }
        if let Some((next, tag)) = al_step(p, &cur) {
            steps.push((tag, next.clone()));
            cur = next;
            continue;
        }
        let next = at_most(p, &cur);
        if next == cur {
            return (cur, steps);
        }
        steps.push((TransitionTag::AtMost, next.clone()));
        cur = next;
    }
}

/// The smallest unknown atom of `NANT ∖ (WF⁺ ∪ WF⁻)`, or else the smallest
/// unknown atom.
pub fn choose(p: &Program, i: &PInterpretation, wf: &PInterpretation) -> Result<Atom, Error> {
    let eligible = p.nant().difference(&wf.plus).difference(&wf.minus);
    eligible
        .iter()
        .find(|&a| !i.is_assigned(a))
        .or_else(|| atoms(p).find(|&a| !i.is_assigned(a)))
        .ok_or(Error::NoChoice)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum SignOrder {
    /// Try the atom true first.
    #[default]
    TrueFirst,
    FalseFirst,
}

impl SignOrder {
    pub fn first(self) -> Sign {
        match self {
            SignOrder::TrueFirst => Sign::Plus,
            SignOrder::FalseFirst => Sign::Minus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub max_models: Option<usize>,
    pub sign_order: SignOrder,
    /// Record the full trace and the computation of every model.
    pub trace: bool,
    /// Discard models containing the atom `false`.
    pub kill_false: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_models: None,
            sign_order: SignOrder::TrueFirst,
            trace: true,
            kill_false: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    /// 1-based position in the enumeration.
    pub index: usize,
    pub model: Interpretation,
    /// The branch from `⟨∅,∅⟩` to the model, without backtracking.
    pub computation: Option<Computation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepEvent {
    Transition {
        tag: TransitionTag,
        state: PInterpretation,
    },
    Model(Model),
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Decision {
    atom: Atom,
    sign: Sign,
    flipped: bool,
    before: PInterpretation,
    path_len: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pending {
    None,
    Backtrack,
    Flip(Atom, Sign),
}

/// A resumable search. Every call to [`Solver::step`] applies at most one
/// transition.
#[derive(Clone, Debug)]
pub struct Solver {
    p: Arc<Program>,
    wf: PInterpretation,
    opts: SolveOptions,
    false_atom: Option<Atom>,
    current: PInterpretation,
    stack: Vec<Decision>,
    trace: Computation,
    path: Computation,
    pending: Pending,
    models: usize,
    done: bool,
}

impl Solver {
    pub fn new(p: Arc<Program>, opts: SolveOptions) -> Self {
        let wf = well_founded(&p).model.into_inner();
        let false_atom = if opts.kill_false {
            p.atom("false")
        } else {
            None
        };
        Solver {
            p,
            wf,
            opts,
            false_atom,
            current: PInterpretation::default(),
            stack: Vec::new(),
            trace: Computation::new(),
            path: Computation::new(),
            pending: Pending::None,
            models: 0,
            done: false,
        }
    }

    pub fn program(&self) -> &Arc<Program> {
        &self.p
    }

    pub fn current(&self) -> &PInterpretation {
        &self.current
    }

    /// Every transition so far, backtracking included.
    pub fn trace(&self) -> &Computation {
        &self.trace
    }

    /// The monotone branch leading to the current state.
    pub fn path(&self) -> &Computation {
        &self.path
    }

    /// `(atom, sign)` of the open decisions, outermost first.
    pub fn decisions(&self) -> Vec<(Atom, Sign)> {
        self.stack.iter().map(|d| (d.atom, d.sign)).collect()
    }

    pub fn models_found(&self) -> usize {
        self.models
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    pub fn options(&self) -> &SolveOptions {
        &self.opts
    }

    pub fn set_sign_order(&mut self, order: SignOrder) {
        self.opts.sign_order = order;
    }

    pub fn well_founded_model(&self) -> &PInterpretation {
        &self.wf
    }

    fn record(&mut self, tag: TransitionTag, state: PInterpretation) -> StepEvent {
        if self.opts.trace {
            self.trace.push(tag, state.clone());
            if tag.kind() != crate::online::TransitionKind::Backtrack {
                self.path.push(tag, state.clone());
            }
        }
        self.current = state.clone();
        if self.current.is_conflicting() {
            self.pending = Pending::Backtrack;
        }
        StepEvent::Transition { tag, state }
    }

    fn backtrack(&mut self) -> StepEvent {
        while let Some(d) = self.stack.pop() {
            if d.flipped {
                continue;
            }
            self.path.truncate(d.path_len);
            let ev = self.record(TransitionTag::Backtrack { atom: d.atom }, d.before);
            self.pending = Pending::Flip(d.atom, d.sign.flip());
            return ev;
        }
        self.done = true;
        StepEvent::Exhausted
    }

    fn decide(&mut self, atom: Atom, sign: Sign, flipped: bool) -> StepEvent {
        self.pending = Pending::None;
        self.stack.push(Decision {
            atom,
            sign,
            flipped,
            before: self.current.clone(),
            path_len: self.path.len(),
        });
        let next = match sign {
            Sign::Plus => with_plus(&self.current, atom),
            Sign::Minus => with_minus(&self.current, atom),
        };
        self.record(TransitionTag::Choice { atom, sign }, next)
    }

    /// Applies the next transition, or reports a model or exhaustion.
    pub fn step(&mut self) -> Result<StepEvent, Error> {
        if self.done {
            return Err(Error::Exhausted);
        }
        loop {
            match self.pending {
                Pending::Flip(atom, sign) => return Ok(self.decide(atom, sign, true)),
                Pending::Backtrack => return Ok(self.backtrack()),
                Pending::None => {}
            }
            let p = Arc::clone(&self.p);
            if let Some((next, tag)) = al_step(&p, &self.current) {
                return Ok(self.record(tag, next));
            }
            let next = at_most(&p, &self.current);
            if next != self.current {
                return Ok(self.record(TransitionTag::AtMost, next));
            }
            if !self.current.is_complete(p.atom_count()) {
                let atom = choose(&p, &self.current, &self.wf)?;
                let sign = self.opts.sign_order.first();
                return Ok(self.decide(atom, sign, false));
            }
            self.pending = Pending::Backtrack;
            let plus = &self.current.plus;
            let killed = self.false_atom.is_some_and(|f| plus.contains(f));
            if killed || !answer_set_check(&p, plus) {
                continue;
            }
            self.models += 1;
            if self.opts.max_models.is_some_and(|m| self.models >= m) {
                self.done = true;
            }
            let model = Interpretation::new(self.current.plus.clone(), self.current.minus.clone())
                .expect("a complete state without conflict");
            return Ok(StepEvent::Model(Model {
                index: self.models,
                model,
                computation: self.opts.trace.then(|| self.path.clone()),
            }));
        }
    }

    /// Steps until the next model; `None` once the search is exhausted.
    pub fn next_model(&mut self) -> Option<Model> {
        loop {
            match self.step() {
                Ok(StepEvent::Model(m)) => return Some(m),
                Ok(StepEvent::Transition { .. }) => {}
                Ok(StepEvent::Exhausted) | Err(_) => return None,
            }
        }
    }
}

impl Iterator for Solver {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        self.next_model()
    }
}

/// Enumerates the answer sets of `p`.
pub fn solve(p: &Program, opts: SolveOptions) -> Solver {
    Solver::new(Arc::new(p.clone()), opts)
}

/// The answer sets of `p` as positive parts, sorted.
pub fn answer_sets(p: &Program) -> Vec<AtomSet> {
    let mut out: Vec<AtomSet> = solve(
        p,
        SolveOptions {
            trace: false,
            ..SolveOptions::default()
        },
    )
    .map(|m| m.model.plus.clone())
    .collect();
    out.sort();
    out
}
