//! Command-line front end for the graded-extension workbench.
//!
//! The binary reads instance and module documents (JSON), runs one of the
//! core decision procedures, and emits a certificate report: a verdict
//! together with enough exact evidence to recheck it independently.
//! Reports are deterministic — byte-identical for a fixed input, command,
//! and seed — unless timing is explicitly requested.
//!
//! Exit codes: `0` the command ran and produced a verdict (even a negative
//! one), `2` the input or invocation was invalid, `3` an internal
//! consistency guard failed (a certificate did not recheck, or a fuzz lane
//! found a counterexample).

pub mod commands;
pub use gradext_core::document;
pub mod report;
