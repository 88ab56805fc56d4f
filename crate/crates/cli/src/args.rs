use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use negmom::{Region, SpectrumBound};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "negmom",
    version,
    about = "Optimal negative momentum for strongly-monotone games"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal rates and parameters for one (mu, L) pair.
    Rate(RateArgs),
    /// Tabulate rates and parameters over a list of condition numbers.
    Sweep(SweepArgs),
    /// Run GDA / OGDA / negative momentum on a seeded quadratic game.
    Simulate(SimulateArgs),
    /// Run the built-in consistency checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Strong monotonicity constant.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "kappa")]
    pub mu: Option<f64>,
    /// Lipschitz constant.
    #[arg(
        long = "L",
        value_name = "L",
        allow_negative_numbers = true,
        conflicts_with = "kappa"
    )]
    pub lipschitz: Option<f64>,
    /// Condition number L/mu (sets mu = 1).
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
}

impl BoundArgs {
    pub fn resolve(&self) -> Result<SpectrumBound, CliError> {
        let s = match (self.kappa, self.mu, self.lipschitz) {
            (Some(k), _, _) => SpectrumBound::from_kappa(k)?,
            (None, mu, Some(l)) => SpectrumBound::new(mu.unwrap_or(1.0), l)?,
            (None, _, None) => return Err(CliError::Invalid("pass --L (with --mu) or --kappa".into())),
        };
        if s.kappa() <= 1.0 {
            return Err(CliError::Invalid(format!("need L > mu, got kappa = {}", s.kappa())));
        }
        Ok(s)
    }
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[command(flatten)]
    pub bound: BoundArgs,
    /// Machine-readable output instead of the text table.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated condition numbers, each > 1. May be empty.
    #[arg(long, allow_hyphen_values = true)]
    pub kappa_list: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Number of 2x2 blocks (the game has 2*dim variables).
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
    pub dim: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5000, value_parser = clap::value_parser!(u32).range(1..))]
    pub t_max: u32,
    /// Comma-separated: gda, ogda, nm, nm-grid, cheb.
    #[arg(long, default_value = "gda,nm,ogda")]
    pub methods: String,
    /// Sandwich polygon used for the analytic NM and CHEB parameters.
    #[arg(long, default_value = "k1")]
    pub region: Region,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Trace file; with csv a `<out>.json` sidecar is written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Flip the sign of every derived momentum (harness self-test).
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}
