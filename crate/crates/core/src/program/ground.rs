//! Naive grounding over the constants of the program.

use alloc::collections::btree_map::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::parse::{BodyItem, SourceAtom, SourceProgram, SourceRule, Term};
use super::{AtomSet, AtomTable, Program};
use crate::Error;

fn constants(src: &SourceProgram) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut push = |t: &Term| {
        if let Term::Const(c) = t {
            if !out.contains(c) {
                out.push(c.clone());
            }
        }
    };
    for r in &src.rules {
        r.head.terms().for_each(&mut push);
        for item in &r.body {
            match item {
                BodyItem::Literal { atom, .. } => atom.terms().for_each(&mut push),
                BodyItem::Neq(a, b) => {
                    push(a);
                    push(b);
                }
            }
        }
    }
    out
}

fn variables(r: &SourceRule) -> Vec<&str> {
    let mut out: Vec<&str> = Vec::new();
    let terms = r.head.terms().chain(r.body.iter().flat_map(|i| match i {
        BodyItem::Literal { atom, .. } => atom.args.iter().collect::<Vec<_>>(),
        BodyItem::Neq(a, b) => alloc::vec![a, b],
    }));
    for t in terms {
        if let Term::Var(v) = t {
            if !out.contains(&v.as_str()) {
                out.push(v.as_str());
            }
        }
    }
    out
}

/// A variable under `not` must also occur in a positive body atom.
fn check_safety(r: &SourceRule) -> Result<(), Error> {
    let mut positive: Vec<&str> = Vec::new();
    for item in &r.body {
        if let BodyItem::Literal {
            atom,
            negated: false,
        } = item
        {
            for t in atom.terms() {
                if let Term::Var(v) = t {
                    positive.push(v);
                }
            }
        }
    }
    for item in &r.body {
        if let BodyItem::Literal {
            atom,
            negated: true,
        } = item
        {
            for t in atom.terms() {
                if let Term::Var(v) = t {
                    if !positive.contains(&v.as_str()) {
                        return Err(Error::UnsafeVariable {
                            variable: v.clone(),
                            line: r.line,
                            column: r.column,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

fn value<'a>(t: &'a Term, env: &BTreeMap<&str, &'a str>) -> &'a str {
    match t {
        Term::Const(c) => c,
        Term::Var(v) => env[v.as_str()],
    }
}

fn atom_name(a: &SourceAtom, env: &BTreeMap<&str, &str>) -> String {
    let mut s = a.predicate.clone();
    if !a.args.is_empty() {
        s.push('(');
        for (k, t) in a.args.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(value(t, env));
        }
        s.push(')');
    }
    s
}

/// Instantiates every rule over all constants of the program.
///
/// Atoms are interned in order of generation: rules in source order, their
/// instances in lexicographic order of the assignment, and within an
/// instance the head followed by the body in textual order.
pub fn ground(src: &SourceProgram) -> Result<Program, Error> {
    let consts = constants(src);
    let mut table = AtomTable::new();
    let mut rules = Vec::new();
    for r in &src.rules {
        check_safety(r)?;
        let vars = variables(r);
        if !vars.is_empty() && consts.is_empty() {
            return Err(Error::NoConstants);
        }
        let mut odometer = alloc::vec![0usize; vars.len()];
        'instances: loop {
            let env: BTreeMap<&str, &str> = vars
                .iter()
                .zip(&odometer)
                .map(|(v, &k)| (*v, consts[k].as_str()))
                .collect();
            let guards_hold = r.body.iter().all(|i| match i {
                BodyItem::Neq(a, b) => value(a, &env) != value(b, &env),
                BodyItem::Literal { .. } => true,
            });
            if guards_hold {
                let head = table.intern(&atom_name(&r.head, &env));
                let (mut pos, mut neg) = (AtomSet::new(), AtomSet::new());
                for item in &r.body {
                    if let BodyItem::Literal { atom, negated } = item {
                        let a = table.intern(&atom_name(atom, &env));
                        if *negated {
                            neg.insert(a);
                        } else {
                            pos.insert(a);
                        }
                    }
                }
                rules.push((head, pos, neg));
            }
            // the last variable moves fastest
            let mut k = vars.len();
            loop {
                if k == 0 {
                    break 'instances;
                }
                k -= 1;
                odometer[k] += 1;
                if odometer[k] < consts.len() {
                    break;
                }
                odometer[k] = 0;
            }
        }
    }
    Ok(Program::new(table, rules))
}
