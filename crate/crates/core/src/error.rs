use alloc::string::String;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsafe variable {variable} in rule at {line}:{column}")]
    UnsafeVariable {
        variable: String,
        line: usize,
        column: usize,
    },
    #[error("program has variables but no constants to ground them with")]
    NoConstants,
    #[error("interpretation sets overlap")]
    Overlap,
    #[error("program is not definite")]
    NotDefinite,
    #[error("interpretation is not complete")]
    Incomplete,
    #[error("interpretation is not an answer set")]
    NotAnswerSet,
    #[error("set is not an assumption for the interpretation")]
    NotAssumption,
    #[error("set is not contained in the tentative assumptions")]
    NotTentative,
    #[error("{what} cap of {cap} exceeded")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("node is not in the graph")]
    NodeNotFound,
    #[error("atom {0} cannot be justified from the given interpretation")]
    NotJustified(String),
    #[error("malformed computation at step {step}: {reason}")]
    MalformedComputation { step: usize, reason: &'static str },
    #[error("no atom left to choose")]
    NoChoice,
    #[error("search is exhausted")]
    Exhausted,
    #[error("unknown checkpoint {0}")]
    UnknownCheckpoint(u64),
    #[error("unknown breakpoint {0}")]
    UnknownBreakpoint(u32),
}
