//! Command-line front end: curve parsing, subcommands and JSON output.

pub mod commands;
pub mod parse;

pub use commands::{run, Cli, InputError, Outcome};
pub use parse::{parse_curve, parse_rationals, ParseError};
