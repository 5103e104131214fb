use std::process::ExitCode;

use clap::Parser;
use twisted_pairing_cli::{run, Cli};

fn main() -> ExitCode {
    ExitCode::from(run(&Cli::parse()))
}
