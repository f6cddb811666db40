//! Parsing, printing and report plumbing behind the `cosym` binary.

pub mod parse;
pub mod print;
pub mod report;
