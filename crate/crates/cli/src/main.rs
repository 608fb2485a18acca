//! `eokit`: command-line access to explanation-type modeling.
//!
//! Exit codes: 0 success, 1 validation errors, 2 usage or input errors.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "eokit", version, about = "Explanation-type modeling toolkit")]
pub struct Cli {
    /// Turtle document extending the seed knowledge base.
    #[arg(long, global = true, value_name = "FILE")]
    pub seed_overlay: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned text for reading.
    Table,
    /// Stable TOML tree for scripts and golden files.
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a Turtle file against the ontology.
    Validate {
        /// Turtle file, or "-" for stdin.
        file: PathBuf,
    },
    /// List explanation-type memberships per node.
    Classify {
        file: PathBuf,
        /// Drop asserted explanation types before classifying.
        #[arg(long)]
        derive_only: bool,
        /// Print the evaluation trace for each membership.
        #[arg(long)]
        explain: bool,
    },
    /// Print the sufficiency condition of an explanation type.
    Sufficiency {
        /// Type token such as `scientific` or `trace-based`.
        kind: String,
    },
    /// List the AI methods recorded as generators of an explanation type.
    Methods { kind: String },
    /// List example questions for an explanation type.
    Questions { kind: String },
    /// Recommend explanation types for a capability profile.
    Recommend {
        /// Profile document (TOML).
        #[arg(long, value_name = "FILE")]
        profile: PathBuf,
        /// Question document (TOML); answers that question instead of ranking all types.
        #[arg(long, value_name = "FILE")]
        question: Option<PathBuf>,
    },
    /// Run a graph-pattern query over the ontology and optional data files.
    Query {
        /// Query file (.rq), or "-" for stdin.
        query: PathBuf,
        /// Turtle data files merged into the queried graph.
        data: Vec<PathBuf>,
    },
    /// Check whether one node satisfies an explanation type or class expression.
    Check {
        file: PathBuf,
        /// Node as a CURIE (e.g. `:ContrastiveExpInstance`) or `<iri>`.
        #[arg(long)]
        node: String,
        /// Explanation type token.
        #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
        kind: Option<String>,
        /// Manchester expression file (.mos).
        #[arg(long, value_name = "FILE")]
        expr: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
