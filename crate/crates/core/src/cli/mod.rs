//! Command-line surface: expression parsing, commands and reports.

mod commands;
pub mod parse;
mod report;

pub use commands::{execute, run, Cli, Command};
pub use parse::{parse_map, parse_poly, ParseError};
pub use report::{Report, Status};
