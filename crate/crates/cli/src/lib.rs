//! Command-line front end for the regularity engine: .dreg problem files,
//! canonical reports and the verdict-coded `dreg` binary.

pub mod cmd;
pub mod parse;
pub mod print;
pub mod report;

pub use cmd::run_command;
pub use parse::{parse_problem, ParseError, ProblemFile};
