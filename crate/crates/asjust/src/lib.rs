//! Command-line and HTTP front end for `asjust-core`.
//!
//! [`json`] and [`dot`] hold the wire encodings; [`server`] is the debugger
//! service.

pub mod dot;
pub mod json;
pub mod server;

pub use asjust_core as core;
