//! Exhaustive answer set enumeration for small programs.

use alloc::vec::Vec;

use super::answer_set_check;
use crate::program::{Atom, AtomSet, Interpretation, Program};
use crate::Error;

pub const DEFAULT_ATOM_CAP: usize = 16;

/// All answer sets, found by checking every complete interpretation.
///
/// Candidates are visited in ascending order of the bitset of true atoms
/// (atom id `i` is bit `i`).
pub fn brute_force_answer_sets(p: &Program, atom_cap: usize) -> Result<Vec<Interpretation>, Error> {
    let n = p.atom_count();
    if n > atom_cap || n >= 32 {
        return Err(Error::CapExceeded {
            what: "brute-force atom",
            cap: atom_cap,
        });
    }
    let all = p.all_atoms();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let plus: AtomSet = (0..n as u32)
            .filter(|i| mask & (1 << i) != 0)
            .map(Atom::new)
            .collect();
        if answer_set_check(p, &plus) {
            let minus = all.difference(&plus);
            out.push(Interpretation::new(plus, minus).expect("disjoint by construction"));
        }
    }
    Ok(out)
}
