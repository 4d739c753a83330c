//! `oml`: validate finite orthomodular lattices, check identities, and
//! report congruences.
//!
//! Exit codes: 0 success or identity holds, 1 a definite negative finding
//! (counterexample, invalid lattice), 2 usage or input error.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use oml_core::{LatticeSpec, DEFAULT_MAX_SIZE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "oml", version, about = "Finite orthomodular lattice toolkit")]
pub struct Cli {
    /// Lattice: bool<k>, mo<n>, free2, benzene, file:<path>, prod:<name>,<name>
    #[arg(long, global = true, value_parser = parse_spec)]
    lattice: Option<LatticeSpec>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Refuse to build lattices with more elements than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SIZE)]
    max_size: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the lattice axioms and the orthomodular law.
    Validate,
    /// Check an equation `lhs = rhs` under every assignment.
    Identity { equation: String },
    /// Print the operation table of a term in one or two variables.
    Table { term: String },
    /// Print the commutativity and perspectivity relations.
    Relations,
    /// Print the free OML on two generators in Navara coordinates.
    Free,
    /// List p-ideals, their congruences, and congruence properties.
    Congruences,
}

fn parse_spec(s: &str) -> Result<LatticeSpec, String> {
    s.parse().map_err(|e: oml_core::CatalogError| e.to_string())
}

/// Failure modes that map onto exit codes.
#[derive(Debug)]
pub enum Outcome {
    Ok,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context {
        format: cli.format,
        max_size: cli.max_size,
        lattice: cli.lattice,
    };
    let result = match cli.command {
        Command::Validate => commands::validate(&ctx),
        Command::Identity { equation } => commands::identity(&ctx, &equation),
        Command::Table { term } => commands::table(&ctx, &term),
        Command::Relations => commands::relations(&ctx),
        Command::Free => commands::free(&ctx),
        Command::Congruences => commands::congruences(&ctx),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
