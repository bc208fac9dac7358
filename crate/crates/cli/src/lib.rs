//! Command-line front end for cyclic equalizability.
//!
//! Wraps the `cyceq-core` library with word parsing, a line-delimited
//! certificate document format, plain-text table rendering, and the four
//! subcommands `check`, `equalize`, `verify`, and `oracle`.
//!
//! Exit codes across all subcommands: 0 for a positive answer (equalizable,
//! valid, found), 1 for a negative one (not equalizable, invalid, not
//! found), 2 for usage errors, malformed documents, and infeasible budgets.

pub mod app;
pub mod document;
pub mod syntax;
pub mod tables;

pub use app::run;
