//! Fixtures, a random program generator and small helpers shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use asjust_core::justification::{EGraph, ENode, Edge, Label};
use asjust_core::{load_program, AtomSet, PInterpretation, Program};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const P1: &str = "q :- a, not p. p :- a, not q. a :- b. b.";
pub const P5: &str = "a :- f, not b. b :- e, not a. e. f :- e. d :- c, e. c :- d, f.";
/// P5 with the `b` rule first, so that `b` gets the smallest id.
pub const P5_B_FIRST: &str = "b :- e, not a. a :- f, not b. e. f :- e. d :- c, e. c :- d, f.";
pub const P6: &str = "p :- not q. q :- not p.";
pub const PKW: &str =
    "a :- f, not b. b :- e, not a. e. f :- e. d :- c, e. c :- d, f, not k. k :- a.";
pub const PC: &str = "p :- not q. q :- not p. r :- not p. p :- r.";
pub const PQRST: &str = "p :- not q. q :- not p. r :- p, s. t :- q, u. s.";
pub const EX3: &str = "p :- q, r. q. q :- r. r.";

pub const HAMILTON: &str = "
vertex(a). vertex(b). vertex(c). vertex(d).
edge(a,b). edge(a,c). edge(b,d). edge(b,c). edge(c,d). edge(d,a).
in(U,V) :- edge(U,V), not nin(U,V).
nin(U,V) :- edge(U,V), not in(U,V).
false :- vertex(U), vertex(V), vertex(W), V != W, in(U,V), in(U,W).
false :- vertex(U), vertex(V), vertex(W), U != V, in(U,W), in(V,W).
reachable(U) :- vertex(U), in(a,U).
reachable(V) :- vertex(V), vertex(U), reachable(U), in(U,V).
false :- vertex(U), U != a, not reachable(U).
";

pub const HAMILTON_VERTICES: [&str; 4] = ["a", "b", "c", "d"];
pub const HAMILTON_EDGES: [(&str, &str); 6] = [
    ("a", "b"),
    ("a", "c"),
    ("b", "d"),
    ("b", "c"),
    ("c", "d"),
    ("d", "a"),
];

pub fn load(text: &str) -> Program {
    load_program(text).unwrap()
}

pub fn set(p: &Program, names: &[&str]) -> AtomSet {
    p.atom_set(names).unwrap()
}

pub fn pi(p: &Program, plus: &[&str], minus: &[&str]) -> PInterpretation {
    PInterpretation::new(set(p, plus), set(p, minus))
}

pub fn node_name(p: &Program, n: ENode) -> String {
    match n {
        ENode::Pos(a) => format!("{}+", p.name(a)),
        ENode::Neg(a) => format!("{}-", p.name(a)),
        ENode::Assume => "assume".into(),
        ENode::Top => "top".into(),
        ENode::Bot => "bot".into(),
    }
}

/// Edges rendered as `"from to label"`, e.g. `"b+ a- -"`.
pub fn edge_names<'a>(p: &Program, edges: impl IntoIterator<Item = &'a Edge>) -> BTreeSet<String> {
    edges
        .into_iter()
        .map(|e| {
            let l = match e.label {
                Label::Plus => "+",
                Label::Minus => "-",
            };
            format!("{} {} {}", node_name(p, e.from), node_name(p, e.to), l)
        })
        .collect()
}

pub fn graph_edges(p: &Program, g: &EGraph) -> BTreeSet<String> {
    edge_names(p, g.edges())
}

pub fn strs(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Source text of a random ground program over at most `max_atoms` atoms
/// and `max_rules` rules; body literals are drawn without repetition.
pub fn program_text(max_atoms: usize, max_rules: usize) -> impl Strategy<Value = String> {
    (1..=max_atoms).prop_flat_map(move |n| {
        let lit = 0..n;
        let rule = (
            lit.clone(),
            prop::collection::btree_set(lit.clone(), 0..=3),
            prop::collection::btree_set(lit, 0..=2),
        );
        prop::collection::vec(rule, 0..=max_rules).prop_map(move |rules| {
            let name = |i: usize| format!("x{i}");
            let mut out = String::new();
            for (head, pos, neg) in rules {
                let body: Vec<String> = pos
                    .iter()
                    .map(|&i| name(i))
                    .chain(neg.iter().map(|&i| format!("not {}", name(i))))
                    .collect();
                if body.is_empty() {
                    out.push_str(&format!("{}.\n", name(head)));
                } else {
                    out.push_str(&format!("{} :- {}.\n", name(head), body.join(", ")));
                }
            }
            out
        })
    })
}

pub fn random_program() -> impl Strategy<Value = Program> {
    program_text(10, 20).prop_map(|t| load_program(&t).expect("generated text parses"))
}

/// A fixed corpus of `count` random programs.
pub fn corpus(count: usize, seed: u8) -> Vec<Program> {
    let mut runner = TestRunner::new_with_rng(Config::default(), rng(seed));
    let strategy = random_program();
    (0..count)
        .map(|_| strategy.new_tree(&mut runner).unwrap().current())
        .collect()
}

/// A random pair `J ⊑ J'` of consistent partial interpretations.
pub fn nested_pair(p: &Program, rng: &mut TestRng) -> (PInterpretation, PInterpretation) {
    let mut inner = PInterpretation::default();
    let mut outer = PInterpretation::default();
    for a in p.all_atoms() {
        let keep = rng.next_u32().is_multiple_of(2);
        match rng.next_u32() % 3 {
            1 => {
                outer.plus.insert(a);
                if keep {
                    inner.plus.insert(a);
                }
            }
            2 => {
                outer.minus.insert(a);
                if keep {
                    inner.minus.insert(a);
                }
            }
            _ => {}
        }
    }
    (inner, outer)
}

/// A number below `n` (which must be positive).
pub fn below(rng: &mut TestRng, n: usize) -> usize {
    rng.next_u32() as usize % n
}

pub fn rng(seed: u8) -> TestRng {
    TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32])
}

/// Hamiltonian cycles of a directed graph, found by permuting the vertices
/// after the first one.
pub fn hamiltonian_cycles(vertices: &[&str], edges: &[(&str, &str)]) -> Vec<Vec<String>> {
    fn permute(rest: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == rest.len() {
            out.push(rest.clone());
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            permute(rest, k + 1, out);
            rest.swap(k, i);
        }
    }
    let has = |u: usize, v: usize| edges.contains(&(vertices[u], vertices[v]));
    let mut orders = Vec::new();
    permute(&mut (1..vertices.len()).collect(), 0, &mut orders);
    orders
        .into_iter()
        .filter_map(|rest| {
            let cycle: Vec<usize> = std::iter::once(0).chain(rest).collect();
            let closed = (0..cycle.len()).all(|i| has(cycle[i], cycle[(i + 1) % cycle.len()]));
            closed.then(|| cycle.iter().map(|&i| vertices[i].to_string()).collect())
        })
        .collect()
}
