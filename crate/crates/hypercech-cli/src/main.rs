//! `hypercech`: batch driver for scenario files.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure, 2 on usage, parse or
//! input errors.

mod commands;
mod num;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Common, Outcome};

#[derive(Parser)]
#[command(name = "hypercech", version, about = "Čech hypercohomology, 2-groups and cocycle integration")]
struct Cli {
    /// Also write the report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Gauss–Legendre order for simplex integrals.
    #[arg(long, global = true)]
    quadrature_order: Option<usize>,
    /// Residual tolerance for integrated identities.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Worker threads; 0 lets the runtime choose.
    #[arg(long, global = true, env = "HYPERCECH_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the degree-4 cocycle equations (and a coboundary, if given).
    CheckComplex { scenario: PathBuf },
    /// Brute-force hypercohomology of a finite instance.
    Cohomology {
        scenario: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Use only normalized cochains.
        #[arg(long)]
        normalized: bool,
        /// Truncate to simplicial levels at least this large.
        #[arg(long, default_value_t = 0)]
        min_level: usize,
    },
    /// Build the 2-group of a cocycle, check its axioms and optionally write its tables.
    #[command(name = "build-2group")]
    Build2group {
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    #[command(name = "verify-2group")]
    /// Check a 2-group: the crossed module of the complex, or the 2-group of a cocycle and
    /// the equivalence induced by a coboundary.
    Verify2group { scenario: PathBuf },
    /// Integrate a Lie algebra cocycle (geometric) or exact synthetic data and report the
    /// differentiable cocycle identities.
    Integrate {
        scenario: PathBuf,
        /// Synthetic regime: write the emitted cocycle as a scenario file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let common = Common { report: cli.report, quadrature_order: cli.quadrature_order, tolerance: cli.tolerance };
    let result = match &cli.command {
        Command::CheckComplex { scenario } => commands::check_complex(scenario, &common),
        Command::Cohomology { scenario, degree, normalized, min_level } => {
            commands::cohomology(scenario, *degree, *normalized, *min_level)
        }
        Command::Build2group { scenario, out } => commands::build_2group(scenario, out.as_deref(), &common),
        Command::Verify2group { scenario } => commands::verify_2group(scenario, &common),
        Command::Integrate { scenario, out } => commands::integrate(scenario, out.as_deref(), &common),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
