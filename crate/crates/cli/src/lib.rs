//! Command-line front end for the `twisted-pairing` library.
//!
//! Every subcommand reads the same JSON graph document, prints a
//! human-readable summary (or the JSON report with `--json`) and exits with
//! one of the codes below.

pub mod commands;
pub mod document;
pub mod error;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use twisted_pairing::sweep::Execution;
use twisted_pairing::tropical::SubdivisionMode;

use crate::commands::VerifyParams;
use crate::document::InputDocument;
pub use crate::error::CliError;
use crate::report::Outcome;

pub const EXIT_OK: u8 = 0;
/// Unreadable or malformed input (also used by argument parsing).
pub const EXIT_INPUT: u8 = 2;
/// Valid input that the command cannot accept.
pub const EXIT_PRECONDITION: u8 = 3;
/// A verification found a counterexample.
pub const EXIT_COUNTEREXAMPLE: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "twisted-pairing",
    version,
    about = "Homology pairings, double covers and torsion counts on dual graphs"
)]
pub struct Cli {
    /// Print the JSON report instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Genus, cycle and cocycle bases, and the pairing Gram matrix.
    Homology {
        /// Graph document, or `-` for standard input.
        #[arg(long)]
        graph: PathBuf,
    },
    /// Lift a simple cycle to the double cover classified by a cochain.
    Cover {
        #[arg(long)]
        graph: PathBuf,
        /// Support of the cochain, as comma-separated edge indices.
        #[arg(long, default_value = "")]
        gamma: String,
        /// Edges of the simple cycle.
        #[arg(long)]
        alpha: String,
        /// Write the cover in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Two-torsion order and Weil form of a twisted-curve model.
    Torsion {
        #[arg(long)]
        graph: PathBuf,
    },
    /// r-torsion in the critical group of the r-subdivision.
    Tropical {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: u64,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
    },
    /// Exhaustive sweeps over all small connected multigraphs.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        /// Comma-separated torsion orders.
        #[arg(long, default_value = "2,3,4,5")]
        r: String,
        /// Corrupt one pairing Gram bit to check that failures are reported.
        #[arg(long)]
        inject_fault: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Subdivide every edge.
    All,
    /// Subdivide only edges that lie on a cycle.
    Nonsep,
    /// Do not subdivide (diagnostic).
    None,
}

impl From<Mode> for SubdivisionMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::All => SubdivisionMode::AllEdges,
            Mode::Nonsep => SubdivisionMode::NonSeparating,
            Mode::None => SubdivisionMode::Unsubdivided,
        }
    }
}

/// Parses `"1,2, 3"`; the empty string is the empty list.
pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Input(format!("bad {what} entry `{s}`")))
        })
        .collect()
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match &cli.command {
        Command::Homology { graph } => commands::homology(&InputDocument::load(graph)?),
        Command::Cover {
            graph,
            gamma,
            alpha,
            dot,
        } => {
            let doc = InputDocument::load(graph)?;
            let gamma: Vec<usize> = parse_list(gamma, "gamma")?;
            let alpha: Vec<usize> = parse_list(alpha, "alpha")?;
            commands::cover(&doc, &gamma, &alpha, dot.as_deref())
        }
        Command::Torsion { graph } => commands::torsion(&InputDocument::load(graph)?),
        Command::Tropical { graph, r, mode } => {
            commands::tropical(&InputDocument::load(graph)?, *r, (*mode).into())
        }
        Command::Verify {
            max_edges,
            r,
            inject_fault,
        } => {
            let params = VerifyParams {
                max_edges: *max_edges,
                rs: parse_list(r, "r")?,
                inject_fault: *inject_fault,
            };
            commands::verify(&params, exec)
        }
    }
}

/// Runs the parsed command, prints its output and returns the exit code.
pub fn run(cli: &Cli) -> u8 {
    match execute(cli) {
        Ok(outcome) => {
            let text = if cli.json {
                outcome.report.to_json() + "\n"
            } else {
                outcome.text
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if outcome.counterexample {
                EXIT_COUNTEREXAMPLE
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
