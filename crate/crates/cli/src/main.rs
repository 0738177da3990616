//! `diversify`: majorization comparisons, diversification measures and
//! minimal-turnover rebalancing plans from weight files.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "diversify", version, about = "Naive diversification toolkit: majorization, measures, rebalancing")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Output format; defaults to json for rebalance/axioms, csv for lorenz, table otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Decimal digits for floats in table output.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub precision: u8,

    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare two allocations under majorization.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Compare Lorenz curves instead (allows different lengths).
        #[arg(long)]
        lorenz: bool,
    },
    /// Evaluate diversification measures.
    Measures {
        file: PathBuf,
        /// Comma-separated measure ids; defaults to the whole registry.
        #[arg(long, value_delimiter = ',')]
        measure: Vec<String>,
    },
    /// Plan a minimal-turnover rebalancing.
    Rebalance {
        file: PathBuf,
        /// `equal` or a weight file majorized by the source.
        #[arg(long, default_value = "equal")]
        target: String,
        /// Proportional cost per unit of traded notional.
        #[arg(long, default_value_t = 0.0)]
        cost_rate: f64,
    },
    /// Emit Lorenz curve breakpoints.
    Lorenz {
        file: PathBuf,
        /// Extra comma-separated abscissas in [0, 1] to interpolate.
        #[arg(long, value_delimiter = ',')]
        points: Vec<String>,
    },
    /// Run the axiom harness on a measure.
    Axioms {
        #[arg(long)]
        measure: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Inequality aversion coefficient of a reference allocation.
    Aversion {
        #[arg(long)]
        d: PathBuf,
    },
    /// Schur-Ostrowski check of a measure in utility orientation.
    SchurCheck {
        #[arg(long)]
        measure: String,
        /// Check at this interior point; otherwise at seeded random interior points.
        #[arg(long)]
        point: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1e-5)]
        step: f64,
    },
    /// Multivariate majorization: find doubly stochastic P with X = Y P.
    MultiCheck { x: PathBuf, y: PathBuf },
}

/// Exit code for a violated mathematical precondition.
const EXIT_PRECONDITION: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let precondition = matches!(err.downcast_ref::<diversify::Error>(), Some(diversify::Error::NotMajorized));
            ExitCode::from(if precondition { EXIT_PRECONDITION } else { 1 })
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let g = &cli.global;
    let text = match cli.command {
        Command::Compare { a, b, lorenz } => commands::compare(g, &a, &b, lorenz)?,
        Command::Measures { file, measure } => commands::measures(g, &file, &measure)?,
        Command::Rebalance { file, target, cost_rate } => commands::rebalance(g, &file, &target, cost_rate)?,
        Command::Lorenz { file, points } => commands::lorenz(g, &file, &points)?,
        Command::Axioms { measure, n, samples } => commands::axioms(g, &measure, n, samples)?,
        Command::Aversion { d } => commands::aversion(g, &d)?,
        Command::SchurCheck { measure, point, n, samples, step } => {
            commands::schur_check(g, &measure, point.as_deref(), n, samples, step)?
        }
        Command::MultiCheck { x, y } => commands::multi_check(g, &x, &y)?,
    };
    output::emit(g.out.as_deref(), &text)
}
