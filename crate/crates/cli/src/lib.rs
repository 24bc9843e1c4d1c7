//! Command-line front end for `lights-core`.
//!
//! [`run`] takes an argument vector and returns the exit code, the report
//! and the rendered output, so the binary and the tests share one path.

pub mod app;
pub mod report;

pub use app::{run, Command, Outcome, Verb};
pub use report::{Cell, Report, Violation};
