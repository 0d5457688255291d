//! Argument parsing and dispatch.

use std::path::PathBuf;

use bicross_core::quadrature::QuadConfig;
use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{self, CocycleChoice, ExampleArgs, ExampleKind, Outcome, Session};
use crate::error::CliError;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "BICROSS_THREADS";

#[derive(Debug, Parser)]
#[command(name = "bicross", version, about = "Matched pairs, cocycles and bicrossed product quantum groups")]
pub struct Cli {
    /// Write the bundled fixture files (group and pair JSON) to DIR.
    #[arg(long, value_name = "DIR")]
    pub fixtures: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the matched pair of an exact factorization G = H1·H2.
    Factorize {
        group: PathBuf,
        /// Ambient indices of H1, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        h1: Vec<usize>,
        /// Ambient indices of H2, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        h2: Vec<usize>,
        #[arg(long)]
        name: Option<String>,
        /// Also write a pair file that the other subcommands accept.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Compute the group of extensions Γ.
    Extgroup { pair: PathBuf },
    /// One cocycle per class of order dividing d.
    Cocycles {
        pair: PathBuf,
        #[arg(long, value_name = "d")]
        order: u64,
        /// Write each representative as class-<k>.json.
        #[arg(long, value_name = "DIR")]
        out_dir: Option<PathBuf>,
    },
    /// Run the axiom suite of the bicrossed product.
    Verify {
        pair: PathBuf,
        /// `trivial`, `all` (every class representative) or a cocycle file.
        #[arg(long, default_value = "trivial")]
        cocycle: CocycleChoice,
        /// Write W as an operator dump.
        #[arg(long, value_name = "FILE")]
        dump_w: Option<PathBuf>,
    },
    /// Check Θ built from (U, V): factorization, multiplicativity, pointwise equation.
    Theta {
        pair: PathBuf,
        /// `trivial` or a cocycle file.
        #[arg(long)]
        cocycle: CocycleChoice,
    },
    /// Sampled checks of the continuous examples.
    Example {
        #[arg(value_enum)]
        which: ExampleArg,
        /// λ = 4n/π for `cocycle` and `infinitesimal`.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        n: i64,
        /// Sample count (10000 for axb/sl2, 1000 for cocycle).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random (a,b,c,d) for the full-line principal value.
        #[arg(long, default_value_t = 100)]
        line_points: usize,
        /// Size of each cocycle configuration bank.
        #[arg(long, default_value_t = 20)]
        bank: usize,
        #[arg(long, default_value_t = QuadConfig::default().abs_tol)]
        abs_tol: f64,
        #[arg(long, default_value_t = QuadConfig::default().rel_tol)]
        rel_tol: f64,
        /// Quadrature budget in integrand evaluations per integral.
        #[arg(long, default_value_t = QuadConfig::default().max_evals)]
        max_evals: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleArg {
    Axb,
    Sl2,
    Cocycle,
    Infinitesimal,
}

impl From<ExampleArg> for ExampleKind {
    fn from(a: ExampleArg) -> Self {
        match a {
            ExampleArg::Axb => ExampleKind::Axb,
            ExampleArg::Sl2 => ExampleKind::Sl2,
            ExampleArg::Cocycle => ExampleKind::Cocycle,
            ExampleArg::Infinitesimal => ExampleKind::Infinitesimal,
        }
    }
}

/// Runs the parsed command line, recording every input file in `session`.
pub fn run(cli: &Cli, session: &mut Session) -> Result<Outcome, CliError> {
    match (&cli.fixtures, &cli.command) {
        (Some(dir), None) => commands::write_fixtures(dir),
        (Some(_), Some(_)) => Err(CliError::Usage(String::from("--fixtures takes no subcommand"))),
        (None, None) => Err(CliError::Usage(String::from("a subcommand or --fixtures DIR is required"))),
        (None, Some(cmd)) => match cmd {
            Command::Factorize { group, h1, h2, name, out } => {
                commands::factorize(session, group, h1, h2, name.as_deref(), out.as_deref())
            }
            Command::Extgroup { pair } => commands::extgroup(session, pair),
            Command::Cocycles { pair, order, out_dir } => {
                commands::cocycles(session, pair, *order, out_dir.as_deref())
            }
            Command::Verify { pair, cocycle, dump_w } => {
                commands::verify(session, pair, cocycle, dump_w.as_deref())
            }
            Command::Theta { pair, cocycle } => commands::theta(session, pair, cocycle),
            Command::Example { which, n, samples, seed, line_points, bank, abs_tol, rel_tol, max_evals } => {
                commands::example(&ExampleArgs {
                    kind: (*which).into(),
                    n: *n,
                    samples: *samples,
                    seed: *seed,
                    line_points: *line_points,
                    bank: *bank,
                    quad: QuadConfig { abs_tol: *abs_tol, rel_tol: *rel_tol, max_evals: *max_evals },
                })
            }
        },
    }
}
