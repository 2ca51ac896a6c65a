//! Ground normal logic programs under answer set semantics.
//!
//! The crate covers parsing and grounding, the well-founded model, answer
//! set checking, justification graphs (off-line and on-line), an
//! Smodels-style solver that records its computation, and a stepping
//! debugger engine built on top of the solver.
//!
//! Everything here is `no_std` (with `alloc`).

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod debugger;
pub mod error;
pub mod justification;
pub mod online;
pub mod program;
pub mod semantics;
pub mod solver;

pub use error::Error;
pub use program::{
    Atom, AtomSet, AtomTable, Interpretation, Literal, PInterpretation, Program, Rule,
};

/// Parses and grounds program text in one go.
pub fn load_program(text: &str) -> Result<Program, Error> {
    let source = program::parse_program(text)?;
    program::ground(&source)
}
