use std::io::Write;

use clap::Parser;

use stame_core::cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let (text, code) = execute(&cli);
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{text}");
    std::process::exit(code);
}
