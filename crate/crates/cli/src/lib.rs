//! Library surface of the command line: the expression grammar and the
//! command dispatcher, kept separate from `main` so tests can drive them
//! in process.

pub mod commands;
pub mod expr;
