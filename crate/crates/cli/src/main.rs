mod commands;
mod load;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Exact traces and linearity coefficients for colimits over finite categories.
#[derive(Debug, Parser)]
#[command(name = "lintrace", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a category file and report its properties.
    Validate { cat: String },
    /// List conjugacy classes of endomorphisms.
    Classes { cat: String },
    /// Coefficient vector by the chosen method.
    Coeffs {
        /// hofin, group, groupoid, ei, desouza, leinster, or table:<name>.
        #[arg(long)]
        method: String,
        /// Category; optional for table methods.
        cat: Option<String>,
    },
    /// Homotopy colimit of a diagram with its induced endomorphism.
    Hocolim { cat: String, diagram: String },
    /// Lefschetz number on the homotopy colimit next to the coefficient formula.
    Trace { cat: String, diagram: String },
    /// Component vector of the trace computed with profunctors.
    BicatTrace { cat: String, diagram: String },
    /// Run verification suites.
    Verify {
        /// linearity, cofiber, component, burnside, ei, realiz, sets, leinster, multiplicativity, or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases per suite; defaults depend on the suite.
        #[arg(long)]
        cases: Option<usize>,
        /// Directory for witnesses of failing cases.
        #[arg(long, default_value = "lintrace-failures")]
        artifacts: std::path::PathBuf,
        /// Include per-case timings (makes output vary between runs).
        #[arg(long)]
        timing: bool,
    },
    /// Generate a random category or diagram.
    Gen {
        /// hofin, diagram (needs --category), or hofin-diagram.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        category: Option<String>,
        #[arg(long, default_value_t = 5)]
        max_objects: usize,
        #[arg(long, default_value_t = 8)]
        max_edges: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = 0)]
        lo: i32,
        #[arg(long, default_value_t = 2)]
        hi: i32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
            ExitCode::from(out.code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
