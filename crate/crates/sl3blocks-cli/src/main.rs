//! Command-line front end: tableau listings, PDE verification suites, web
//! change-of-basis matrices, scaling-limit probabilities and finite-lattice
//! convergence tables.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "sl3blocks",
    version,
    about = "Exact W3 conformal blocks, sl3 webs and triple dimers"
)]
struct Cli {
    /// Report format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "SL3BLOCKS_FORMAT",
        default_value = "text"
    )]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Which {
    Bpz,
    Ward,
    Global,
    Covariance,
    Asymptotics,
    SpechtPde,
    Alpha,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SModeArg {
    LastK,
    ValenceTwo,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the row-strict tableaux of a signature in canonical order.
    Tableaux {
        #[arg(long)]
        sigma: String,
    },
    /// Run one verification suite.
    Verify {
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Also run the three-column non-rectangular block through the Ward suite.
        #[arg(long)]
        nonrectangular: bool,
        /// Largest number of boxes for the Specht PDE suite.
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Reduced webs and the matrix between them and the block basis.
    Webs {
        #[arg(long)]
        sigma: String,
    },
    /// Scaling-limit connection probabilities at given points.
    Prob {
        #[arg(long)]
        sigma: String,
        /// 1-based position of the reference tableau.
        #[arg(long)]
        tableau: usize,
        /// Strictly increasing rationals such as `0,1/2,2,3`.
        #[arg(long)]
        points: String,
    },
    /// Finite-lattice connection probabilities against their scaling limit.
    Dimer {
        #[arg(long)]
        sigma: String,
        /// Grid widths; each grid is half as tall as it is wide.
        #[arg(long, value_delimiter = ',', default_value = "8,12,16")]
        sizes: Vec<usize>,
        /// Reference tableau; defaults to the last one.
        #[arg(long)]
        tableau: Option<usize>,
        #[arg(long, value_enum, default_value = "exact")]
        backend: BackendArg,
        #[arg(long, value_enum, default_value = "last-k")]
        s_mode: SModeArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Tableaux { sigma } => commands::tableaux(&sigma),
        Command::Verify {
            sigma,
            which,
            seed,
            nonrectangular,
            max_n,
        } => commands::verify(sigma.as_deref(), which, seed, nonrectangular, max_n),
        Command::Webs { sigma } => commands::webs(&sigma),
        Command::Prob {
            sigma,
            tableau,
            points,
        } => commands::prob(&sigma, tableau, &points),
        Command::Dimer {
            sigma,
            sizes,
            tableau,
            backend,
            s_mode,
        } => commands::dimer(&sigma, &sizes, tableau, backend, s_mode),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
