//! Acceptance suite. Each test checks one criterion and prints a single
//! `criterion N: PASS` or `criterion N: FAIL` line with the details.
//!
//! Run with `cargo test -p asjust-core --test acceptance -- --nocapture`.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use asjust_core::debugger::{BreakValue, Breakpoint, PauseReason, Session, Status};
use asjust_core::justification::{
    build_offline_justification, is_assumption, lce_neg, lce_pos, minimal_assumptions,
    negative_reduct, offline_justifications, tentative_assumptions, validate_offline, ENode, Lce,
    DEFAULT_ASSUMPTION_CAP,
};
use asjust_core::online::{
    final_snapshot_is_offline, gamma_delta, snapshot, Computation, Sign, Snapshot, SnapshotBuilder,
    TransitionTag,
};
use asjust_core::semantics::{
    brute_force_answer_sets, normal_form, well_founded, DEFAULT_ATOM_CAP,
};
use asjust_core::solver::{check_smodels_computation, check_trace, solve, SignOrder, SolveOptions};
use asjust_core::{AtomSet, Error, Interpretation, Literal, PInterpretation, Program};
use common::*;

const CORPUS_SIZE: usize = 200;
const CORPUS_SEED: u8 = 7;
const TRANSPARENCY_PROGRAMS: usize = 50;

/// Collects failed checks for one criterion and reports them.
struct Report {
    n: u32,
    what: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Report {
    fn new(n: u32, what: &'static str) -> Self {
        Report {
            n,
            what,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, got: T, want: T) {
        if got != want {
            self.failures
                .push(format!("{label}: got {got:?}, expected {want:?}"));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self) {
        let notes = if self.notes.is_empty() {
            String::new()
        } else {
            format!(" [{}]", self.notes.join("; "))
        };
        if self.failures.is_empty() {
            println!("criterion {}: PASS - {}{}", self.n, self.what, notes);
        } else {
            println!(
                "criterion {}: FAIL - {}{} ({} failed check(s))",
                self.n,
                self.what,
                notes,
                self.failures.len()
            );
            for f in self.failures.iter().take(20) {
                println!("    {f}");
            }
            panic!("criterion {} failed: {}", self.n, self.failures[0]);
        }
    }
}

/// Best of three runs, so that a busy test machine does not decide a
/// timing check.
fn timed<T>(mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut best = Duration::MAX;
    let mut out = None;
    for _ in 0..3 {
        let t = Instant::now();
        let v = f();
        best = best.min(t.elapsed());
        out = Some(v);
    }
    (out.unwrap(), best)
}

fn ms(d: Duration) -> String {
    format!("{:.2}ms", d.as_secs_f64() * 1e3)
}

fn interp(p: &Program, plus: &[&str], minus: &[&str]) -> Interpretation {
    Interpretation::new(set(p, plus), set(p, minus)).unwrap()
}

/// An LCE written as literal strings (`"q"`, `"not q"`) or a single marker
/// (`"assume"`, `"top"`, `"bot"`).
fn lce(p: &Program, items: &[&str]) -> Lce {
    match items {
        ["assume"] => Lce::Assume,
        ["top"] => Lce::Top,
        ["bot"] => Lce::Bot,
        _ => Lce::Literals(
            items
                .iter()
                .map(|s| match s.strip_prefix("not ") {
                    Some(a) => Literal::neg(p.atom(a).unwrap()),
                    None => Literal::pos(p.atom(s).unwrap()),
                })
                .collect(),
        ),
    }
}

fn lces(p: &Program, sets: &[&[&str]]) -> BTreeSet<Lce> {
    sets.iter().map(|s| lce(p, s)).collect()
}

fn models_of(p: &Program, opts: SolveOptions) -> BTreeSet<AtomSet> {
    solve(p, opts).map(|m| m.model.plus.clone()).collect()
}

#[test]
fn criterion_01_well_founded_fixtures() {
    let mut r = Report::new(1, "well-founded model fixtures");
    let limit = Duration::from_millis(10);

    let p1 = load(P1);
    let (wf, t) = timed(|| well_founded(&p1));
    r.eq("WF(P1)", (*wf.model).clone(), pi(&p1, &["a", "b"], &[]));
    r.eq("K0(P1)", wf.trace[0].k.clone(), set(&p1, &["a", "b"]));
    r.eq(
        "U0(P1)",
        wf.trace[0].u.clone(),
        set(&p1, &["a", "b", "p", "q"]),
    );
    r.check(t < limit, || format!("WF(P1) took {}", ms(t)));
    r.note(format!("P1 {}", ms(t)));

    let p5 = load(P5);
    let (wf, t) = timed(|| well_founded(&p5));
    r.eq(
        "WF(P5)",
        (*wf.model).clone(),
        pi(&p5, &["e", "f"], &["c", "d"]),
    );
    r.check(t < limit, || format!("WF(P5) took {}", ms(t)));
    r.note(format!("P5 {}", ms(t)));

    let pkw = load(PKW);
    let (wf, t) = timed(|| {
        let nr = negative_reduct(&pkw, &set(&pkw, &["a"]));
        well_founded(&nr)
    });
    r.eq(
        "WF(NR(PKW,{a}))",
        (*wf.model).clone(),
        pi(&pkw, &["e", "f", "b"], &["a", "c", "d", "k"]),
    );
    r.check(t < limit, || format!("WF(NR(PKW,{{a}})) took {}", ms(t)));
    r.note(format!("NR(PKW) {}", ms(t)));
    r.finish();
}

#[test]
fn criterion_02_answer_set_fixtures() {
    let mut r = Report::new(2, "answer set fixtures");
    let limit = Duration::from_millis(100);

    let p5 = load(P5);
    let (got, t) = timed(|| models_of(&p5, SolveOptions::default()));
    let want: BTreeSet<AtomSet> = [set(&p5, &["f", "e", "b"]), set(&p5, &["f", "e", "a"])].into();
    r.eq("solve(P5)", got, want);
    r.check(t < limit, || format!("solve(P5) took {}", ms(t)));

    let p6 = load(P6);
    let (got, t) = timed(|| {
        solve(&p6, SolveOptions::default())
            .map(|m| (*m.model).clone())
            .collect::<BTreeSet<_>>()
    });
    let want: BTreeSet<PInterpretation> = [pi(&p6, &["p"], &["q"]), pi(&p6, &["q"], &["p"])].into();
    r.eq("solve(P6)", got, want);
    r.check(t < limit, || format!("solve(P6) took {}", ms(t)));

    let p1 = load(P1);
    let (got, t) = timed(|| {
        solve(&p1, SolveOptions::default())
            .map(|m| (*m.model).clone())
            .collect::<BTreeSet<_>>()
    });
    let want: BTreeSet<PInterpretation> = [
        pi(&p1, &["a", "b", "q"], &["p"]),
        pi(&p1, &["a", "b", "p"], &["q"]),
    ]
    .into();
    r.eq("solve(P1)", got, want);
    r.check(t < limit, || format!("solve(P1) took {}", ms(t)));

    let ham = load(HAMILTON);
    let opts = SolveOptions {
        kill_false: true,
        trace: false,
        ..SolveOptions::default()
    };
    let (got, t) = timed(|| models_of(&ham, opts.clone()));
    let cycles = hamiltonian_cycles(&HAMILTON_VERTICES, &HAMILTON_EDGES);
    r.note(format!(
        "Hamiltonian: {} model(s), {} cycle(s) by enumeration, {}",
        got.len(),
        cycles.len(),
        ms(t)
    ));
    r.eq("Hamiltonian model count", got.len(), cycles.len());
    r.check(t < limit, || format!("solve(Hamiltonian) took {}", ms(t)));
    r.finish();
}

#[test]
fn criterion_03_lce_fixtures() {
    let mut r = Report::new(3, "local consistent explanation fixtures");
    let none = AtomSet::new();

    let p = load(EX3);
    let m = pi(&p, &["p", "q", "r"], &[]);
    let at = |n: &str| p.atom(n).unwrap();
    r.eq(
        "ex3 p+",
        lce_pos(&p, at("p"), &m, &none),
        lces(&p, &[&["q", "r"], &["assume"]]),
    );
    r.eq(
        "ex3 q+",
        lce_pos(&p, at("q"), &m, &none),
        lces(&p, &[&["top"], &["r"], &["assume"]]),
    );
    r.eq(
        "ex3 r+",
        lce_pos(&p, at("r"), &m, &none),
        lces(&p, &[&["top"], &["assume"]]),
    );

    let p = load(P6);
    let at = |n: &str| p.atom(n).unwrap();
    let m = pi(&p, &["p"], &[]);
    r.eq(
        "P6 (M,{}) p+",
        lce_pos(&p, at("p"), &m, &none),
        lces(&p, &[&["assume"]]),
    );
    // q is neither true nor false nor assumed here, so it has no LCE of
    // either sign.
    r.eq(
        "P6 (M,{}) q+",
        lce_pos(&p, at("q"), &m, &none),
        BTreeSet::new(),
    );
    r.eq(
        "P6 (M,{}) q-",
        lce_neg(&p, at("q"), &m, &none).unwrap(),
        BTreeSet::new(),
    );
    let u = set(&p, &["q"]);
    r.eq(
        "P6 (M,{q}) p+",
        lce_pos(&p, at("p"), &m, &u),
        lces(&p, &[&["assume"], &["not q"]]),
    );
    r.eq(
        "P6 (M,{q}) q-",
        lce_neg(&p, at("q"), &m, &u).unwrap(),
        lces(&p, &[&["assume"], &["not p"]]),
    );
    let m2 = pi(&p, &["p"], &["q"]);
    r.eq(
        "P6 (M',{}) p+",
        lce_pos(&p, at("p"), &m2, &none),
        lces(&p, &[&["assume"], &["not q"]]),
    );
    r.eq(
        "P6 (M',{}) q-",
        lce_neg(&p, at("q"), &m2, &none).unwrap(),
        lces(&p, &[&["assume"], &["not p"]]),
    );

    let p = load(P5);
    let at = |n: &str| p.atom(n).unwrap();
    let m1 = pi(&p, &["f", "e", "b"], &["a", "c", "d"]);
    r.eq(
        "P5 a-",
        lce_neg(&p, at("a"), &m1, &none).unwrap(),
        lces(&p, &[&["not b"], &["assume"]]),
    );
    r.eq(
        "P5 b+",
        lce_pos(&p, at("b"), &m1, &none),
        lces(&p, &[&["e", "not a"], &["assume"]]),
    );
    r.eq(
        "P5 e+",
        lce_pos(&p, at("e"), &m1, &none),
        lces(&p, &[&["top"], &["assume"]]),
    );
    r.eq(
        "P5 f+",
        lce_pos(&p, at("f"), &m1, &none),
        lces(&p, &[&["e"], &["assume"]]),
    );
    r.eq(
        "P5 d-",
        lce_neg(&p, at("d"), &m1, &none).unwrap(),
        lces(&p, &[&["c"], &["assume"]]),
    );
    r.eq(
        "P5 c-",
        lce_neg(&p, at("c"), &m1, &none).unwrap(),
        lces(&p, &[&["d"], &["assume"]]),
    );
    r.finish();
}

#[test]
fn criterion_04_assumptions() {
    let mut r = Report::new(4, "tentative and minimal assumptions");
    let minimal = |p: &Program, m: &Interpretation| -> BTreeSet<AtomSet> {
        minimal_assumptions(p, m, DEFAULT_ASSUMPTION_CAP)
            .unwrap()
            .into_iter()
            .map(|s| s.atoms)
            .collect()
    };

    let p6 = load(P6);
    let m = interp(&p6, &["p"], &["q"]);
    r.eq("TA(P6,M)", tentative_assumptions(&p6, &m), set(&p6, &["q"]));
    r.eq(
        "muAssumptions(P6,M)",
        minimal(&p6, &m),
        [set(&p6, &["q"])].into(),
    );

    let pkw = load(PKW);
    let m1 = interp(&pkw, &["f", "e", "b"], &["a", "c", "d", "k"]);
    r.eq(
        "TA(PKW,M1)",
        tentative_assumptions(&pkw, &m1),
        set(&pkw, &["a", "k"]),
    );
    r.eq(
        "muAssumptions(PKW,M1)",
        minimal(&pkw, &m1),
        [set(&pkw, &["a"])].into(),
    );
    r.check(
        is_assumption(&pkw, &m1, &set(&pkw, &["a", "k"])).unwrap(),
        || "{a,k} is not accepted as an assumption for PKW".into(),
    );

    let p5 = load(P5);
    for (plus, minus, want) in [
        (["f", "e", "b"], ["a", "c", "d"], "a"),
        (["f", "e", "a"], ["b", "c", "d"], "b"),
    ] {
        let m = interp(&p5, &plus, &minus);
        let ta: Vec<_> = tentative_assumptions(&p5, &m).iter().collect();
        // every subset of TA, not only the minimal ones
        let all: BTreeSet<AtomSet> = (0..1u32 << ta.len())
            .map(|bits| {
                ta.iter()
                    .enumerate()
                    .filter(|(i, _)| bits & (1 << i) != 0)
                    .map(|(_, a)| *a)
                    .collect::<AtomSet>()
            })
            .filter(|u| is_assumption(&p5, &m, u).unwrap())
            .collect();
        r.eq(
            &format!("Assumptions(P5,{plus:?})"),
            all,
            [set(&p5, &[want])].into(),
        );
    }
    r.finish();
}

#[test]
fn criterion_05_offline_graphs() {
    let mut r = Report::new(5, "off-line justifications of P5 w.r.t. (M1,{a})");
    let p = load(P5);
    let m1 = interp(&p, &["f", "e", "b"], &["a", "c", "d"]);
    let u = set(&p, &["a"]);
    let cases: [(&str, bool, &[&str]); 5] = [
        (
            "b",
            true,
            &["b+ e+ +", "b+ a- -", "a- assume -", "e+ top +"],
        ),
        ("f", true, &["f+ e+ +", "e+ top +"]),
        ("e", true, &["e+ top +"]),
        ("c", false, &["c- d- +", "d- c- +"]),
        ("a", false, &["a- assume -"]),
    ];
    for (atom, positive, edges) in cases {
        let n = ENode::annotated(p.atom(atom).unwrap(), positive);
        let label = node_name(&p, n);
        match build_offline_justification(&p, &m1, &u, n) {
            Ok(g) => {
                r.eq(&label, graph_edges(&p, &g), strs(edges));
                r.check(validate_offline(&p, &g, n, &m1, &u) && g.is_safe(), || {
                    format!("{label} is not a safe off-line graph")
                });
            }
            Err(e) => r.check(false, || format!("{label}: {e}")),
        }
    }
    r.finish();
}

struct Row<'a> {
    off: &'a [&'a str],
    on: &'a [&'a str],
    plus: &'a [&'a str],
    minus: &'a [&'a str],
}

fn check_rows(r: &mut Report, name: &str, p: &Program, snaps: &[Snapshot], rows: &[Row]) {
    r.eq(&format!("{name} row count"), snaps.len(), rows.len());
    for (k, (s, row)) in snaps.iter().zip(rows).enumerate() {
        r.eq(
            &format!("{name} S(M{k}) off"),
            edge_names(p, &s.off_edges()),
            strs(row.off),
        );
        r.eq(
            &format!("{name} S(M{k}) on"),
            edge_names(p, &s.on_edges()),
            strs(row.on),
        );
        r.eq(
            &format!("{name} S(M{k}) D"),
            s.d.clone(),
            pi(p, row.plus, row.minus),
        );
    }
}

#[test]
fn criterion_06_online_snapshots() {
    let mut r = Report::new(6, "on-line snapshot sequences");

    // P5 with the b rule first, so that the first choice is on b
    let p = load(P5_B_FIRST);
    let first = solve(&p, SolveOptions::default()).next().unwrap();
    let c = first.computation.unwrap();
    let states: Vec<_> = c.states().to_vec();
    let want_states = [
        pi(&p, &[], &[]),
        pi(&p, &["e"], &[]),
        pi(&p, &["e", "f"], &[]),
        pi(&p, &["e", "f"], &["c", "d"]),
        pi(&p, &["e", "f", "b"], &["c", "d"]),
        pi(&p, &["e", "f", "b"], &["c", "d", "a"]),
    ];
    r.eq("P5 computation", states, want_states.to_vec());
    let base = ["e+ top +", "f+ e+ +", "d- c- +", "c- d- +"];
    let full = [
        "e+ top +",
        "f+ e+ +",
        "d- c- +",
        "c- d- +",
        "a- assume -",
        "b+ e+ +",
        "b+ a- -",
    ];
    let rows = [
        Row {
            off: &[],
            on: &[],
            plus: &[],
            minus: &[],
        },
        Row {
            off: &["e+ top +"],
            on: &[],
            plus: &["e"],
            minus: &[],
        },
        Row {
            off: &["e+ top +", "f+ e+ +"],
            on: &[],
            plus: &["e", "f"],
            minus: &[],
        },
        Row {
            off: &base,
            on: &[],
            plus: &["e", "f"],
            minus: &["c", "d"],
        },
        Row {
            off: &base,
            on: &["b+ assume +"],
            plus: &["e", "f"],
            minus: &["c", "d"],
        },
        Row {
            off: &full,
            on: &[],
            plus: &["e", "f", "b"],
            minus: &["c", "d", "a"],
        },
    ];
    match asjust_core::online::online_justification(&p, &c) {
        Ok(snaps) => check_rows(&mut r, "P5", &p, &snaps, &rows),
        Err(e) => r.check(false, || format!("P5 snapshots: {e}")),
    }

    let p = load(PC);
    let mut solver = solve(
        &p,
        SolveOptions {
            sign_order: SignOrder::FalseFirst,
            ..SolveOptions::default()
        },
    );
    while solver.trace().len() < 4 {
        solver.step().unwrap();
    }
    let c = solver.trace().prefix(4);
    let (pa, q, ra) = (
        p.atom("p").unwrap(),
        p.atom("q").unwrap(),
        p.atom("r").unwrap(),
    );
    let tags: Vec<_> = c.tags().iter().map(|t| (t.kind(), t.atom())).collect();
    r.eq(
        "PC transitions",
        tags,
        vec![
            (
                TransitionTag::Choice {
                    atom: pa,
                    sign: Sign::Minus,
                }
                .kind(),
                Some(pa),
            ),
            (TransitionTag::Al1 { rule: 0, atom: q }.kind(), Some(q)),
            (TransitionTag::Al1 { rule: 0, atom: ra }.kind(), Some(ra)),
            (TransitionTag::Al1 { rule: 0, atom: pa }.kind(), Some(pa)),
        ],
    );
    let rows = [
        Row {
            off: &[],
            on: &[],
            plus: &[],
            minus: &[],
        },
        Row {
            off: &["p- assume -"],
            on: &[],
            plus: &[],
            minus: &["p"],
        },
        Row {
            off: &["p- assume -", "q+ p- -"],
            on: &[],
            plus: &["q"],
            minus: &["p"],
        },
        Row {
            off: &["p- assume -", "q+ p- -", "r+ p- -"],
            on: &[],
            plus: &["q", "r"],
            minus: &["p"],
        },
        Row {
            off: &["p- assume -", "q+ p- -", "r+ p- -", "p+ r+ +"],
            on: &[],
            plus: &["p", "q", "r"],
            minus: &["p"],
        },
    ];
    match asjust_core::online::online_justification(&p, &c) {
        Ok(snaps) => {
            check_rows(&mut r, "PC", &p, &snaps, &rows);
            let last = snaps.last().unwrap();
            r.check(
                last.graph_for(pa, true).is_some() && last.graph_for(pa, false).is_some(),
                || "PC S(M4) lacks a graph for p+ or p-".into(),
            );
        }
        Err(e) => r.check(false, || format!("PC snapshots: {e}")),
    }
    r.finish();
}

#[test]
fn criterion_07_oracle_equivalence() {
    let mut r = Report::new(7, "solver agrees with brute force on random programs");
    let start = Instant::now();
    let corpus = corpus(CORPUS_SIZE, CORPUS_SEED);
    for (i, p) in corpus.iter().enumerate() {
        let got = models_of(
            p,
            SolveOptions {
                trace: false,
                ..SolveOptions::default()
            },
        );
        let want: BTreeSet<AtomSet> = brute_force_answer_sets(p, DEFAULT_ATOM_CAP)
            .unwrap()
            .into_iter()
            .map(|m| m.plus.clone())
            .collect();
        r.check(got == want, || format!("program {i}:\n{}", p.render()));
    }
    let t = start.elapsed();
    r.note(format!("{} programs in {}", corpus.len(), ms(t)));
    r.check(t < Duration::from_secs(60), || format!("took {}", ms(t)));
    r.finish();
}

#[test]
fn criterion_08_property_suite() {
    let mut r = Report::new(8, "semantic properties on random programs");
    let corpus = corpus(CORPUS_SIZE, CORPUS_SEED);
    let mut rng = rng(CORPUS_SEED);
    let mut graphs = 0usize;
    for (i, p) in corpus.iter().enumerate() {
        let wf = well_founded(p);
        r.eq(
            &format!("program {i}: K/U vs normal form"),
            (*wf.model).clone(),
            (*normal_form(p).well_founded()).clone(),
        );
        r.eq(
            &format!("program {i}: Gamma(WF)"),
            gamma_delta(p, &wf.model).plus,
            wf.model.plus.clone(),
        );

        for _ in 0..5 {
            let (j, j2) = nested_pair(p, &mut rng);
            let (d, d2) = (gamma_delta(p, &j), gamma_delta(p, &j2));
            r.check(d.leq(&d2), || {
                format!("program {i}: monotonicity fails for {j:?} <= {j2:?}")
            });
        }

        for m in solve(p, SolveOptions::default()) {
            let mi = &m.model;
            r.eq(
                &format!("program {i}: Gamma/Delta at model"),
                gamma_delta(p, mi),
                (**mi).clone(),
            );
            let ta = tentative_assumptions(p, mi);
            let nr = negative_reduct(p, &ta);
            r.eq(
                &format!("program {i}: WF(NR(P,TA))"),
                (*well_founded(&nr).model).clone(),
                (**mi).clone(),
            );
            match offline_justifications(p, mi, &ta) {
                Ok(all) => {
                    for (n, g) in &all {
                        graphs += 1;
                        r.check(
                            g.is_safe()
                                && validate_offline(p, g, *n, mi, &ta)
                                && !g.has_negative_cycle(),
                            || format!("program {i}: bad justification of {}", node_name(p, *n)),
                        );
                    }
                }
                Err(e) => r.check(false, || format!("program {i}: {e}")),
            }
            let c = m.computation.as_ref().unwrap();
            r.eq(
                &format!("program {i}: final snapshot off-line"),
                final_snapshot_is_offline(p, c),
                Ok(true),
            );
        }
    }
    r.note(format!(
        "{} programs, {graphs} justifications",
        corpus.len()
    ));
    r.finish();
}

fn incremental_matches(p: &Program, c: &Computation) -> Result<(), String> {
    let mut b = SnapshotBuilder::new(p);
    for (k, (tag, next)) in c.tags().iter().zip(&c.states()[1..]).enumerate() {
        let s = b.advance(p, k + 1, tag, next).map_err(|e| e.to_string())?;
        if *s != snapshot(p, next) {
            return Err(format!("step {}", k + 1));
        }
    }
    Ok(())
}

#[test]
fn criterion_09_trace_validity() {
    let mut r = Report::new(9, "solver traces and incremental snapshots");
    let corpus = corpus(CORPUS_SIZE, CORPUS_SEED);
    let mut steps = 0usize;
    for (i, p) in corpus.iter().enumerate() {
        for order in [SignOrder::TrueFirst, SignOrder::FalseFirst] {
            let mut s = solve(
                p,
                SolveOptions {
                    sign_order: order,
                    ..SolveOptions::default()
                },
            );
            let models: Vec<_> = s.by_ref().collect();
            let trace = s.trace();
            steps += trace.len();
            if let Err(e) = check_trace(p, trace) {
                r.check(false, || {
                    format!("program {i} ({order:?}): trace rejected: {e}")
                });
            }
            for m in &models {
                if let Err(e) = check_smodels_computation(p, m.computation.as_ref().unwrap()) {
                    r.check(false, || {
                        format!("program {i}: model {} computation rejected: {e}", m.index)
                    });
                }
            }
            if let Err(e) = incremental_matches(p, trace) {
                r.check(false, || {
                    format!("program {i} ({order:?}): incremental snapshot differs at {e}")
                });
            }
        }
    }
    r.note(format!("{steps} transitions checked"));
    r.finish();
}

fn reference_models(p: &Program) -> Vec<(usize, PInterpretation)> {
    solve(p, SolveOptions::default())
        .map(|m| (m.index, (*m.model).clone()))
        .collect()
}

fn session_models(s: &Session) -> Vec<(usize, PInterpretation)> {
    s.models()
        .iter()
        .map(|m| (m.index, (*m.model).clone()))
        .collect()
}

#[test]
fn criterion_10_debugger() {
    let mut r = Report::new(10, "debugger breakpoints, checkpoints and transparency");

    // atom breakpoint on P5
    let p = Arc::new(load(P5));
    let a = p.atom("a").unwrap();
    let full = solve(&p, SolveOptions::default());
    let mut full = full;
    full.by_ref().for_each(drop);
    let first_a = full
        .trace()
        .states()
        .iter()
        .position(|s| s.plus.contains(a))
        .expect("a becomes true somewhere");
    let mut s = Session::new(Arc::clone(&p), SolveOptions::default());
    let bp = s.add_breakpoint(Breakpoint::Atom {
        atom: a,
        value: BreakValue::True,
    });
    let pause = s.run().unwrap();
    r.eq(
        "P5 atom(a,true) reason",
        pause.reason,
        PauseReason::Breakpoint(bp),
    );
    r.eq("P5 atom(a,true) step", pause.digest.step, first_a);
    r.eq(
        "P5 atom(a,true) transition",
        pause.digest.last,
        Some(TransitionTag::Choice {
            atom: a,
            sign: Sign::Plus,
        }),
    );
    r.check(!full.trace().states()[first_a - 1].plus.contains(a), || {
        "a was already true before the pause".into()
    });

    // conflict breakpoint on PC
    let p = Arc::new(load(PC));
    let mut s = Session::new(
        Arc::clone(&p),
        SolveOptions {
            sign_order: SignOrder::FalseFirst,
            ..SolveOptions::default()
        },
    );
    let bp = s.add_breakpoint(Breakpoint::Conflict);
    let pause = s.run().unwrap();
    r.eq(
        "PC conflict reason",
        pause.reason,
        PauseReason::Breakpoint(bp),
    );
    r.eq(
        "PC conflict state",
        PInterpretation::new(pause.digest.plus.clone(), pause.digest.minus.clone()),
        pi(&p, &["q", "r", "p"], &["p"]),
    );
    r.check(pause.digest.conflict, || {
        "PC pause is not flagged as a conflict".into()
    });

    // resuming any checkpoint yields the same downstream models
    let mut resumed = 0usize;
    for text in [P1, P5, P6, PC, PKW, PQRST] {
        let p = Arc::new(load(text));
        let want = reference_models(&p);
        let mut s = Session::new(Arc::clone(&p), SolveOptions::default());
        let mut ids = Vec::new();
        while s.status() != Status::Done {
            ids.push(s.step().unwrap().checkpoint);
        }
        r.eq(
            &format!("stepped models of {text}"),
            session_models(&s),
            want.clone(),
        );
        for id in ids {
            // the last checkpoint is already done, so there is nothing to run
            match s.resume_from(id, None) {
                Ok(_) | Err(Error::Exhausted) => {}
                Err(e) => panic!("resume from {id}: {e}"),
            }
            s.run_to_end().unwrap();
            resumed += 1;
            r.eq(
                &format!("{text}: resume from checkpoint {id}"),
                session_models(&s),
                want.clone(),
            );
        }
    }
    r.note(format!("{resumed} checkpoint resumes"));

    // random pauses do not change the outcome
    let mut rng = rng(CORPUS_SEED.wrapping_add(1));
    for (i, p) in corpus(TRANSPARENCY_PROGRAMS, CORPUS_SEED.wrapping_add(1))
        .into_iter()
        .enumerate()
    {
        let p = Arc::new(p);
        let want = reference_models(&p);
        let mut s = Session::new(Arc::clone(&p), SolveOptions::default());
        let atoms: Vec<_> = p.all_atoms().iter().collect();
        if !atoms.is_empty() {
            let a = atoms[below(&mut rng, atoms.len())];
            s.add_breakpoint(Breakpoint::Atom {
                atom: a,
                value: BreakValue::Any,
            });
        }
        s.add_breakpoint(Breakpoint::Conflict);
        let mut ids = Vec::new();
        while s.status() != Status::Done {
            let pause = if below(&mut rng, 2) == 0 {
                s.step()
            } else {
                s.run()
            };
            ids.push(pause.unwrap().checkpoint);
        }
        r.eq(
            &format!("program {i}: paused run"),
            session_models(&s),
            want.clone(),
        );
        if let Some(&id) = ids.get(below(&mut rng, ids.len().max(1))) {
            s.restore(id).unwrap();
            s.run_to_end().unwrap();
            r.eq(
                &format!("program {i}: after restore {id}"),
                session_models(&s),
                want,
            );
        }
    }
    r.finish();
}
