//! Front end for `negmom`: rate tables, κ-sweeps, seeded game simulations
//! and a self-check suite. The binary in `main.rs` only parses arguments
//! and maps errors to exit codes; everything else lives here so tests can
//! call it directly.

pub mod args;
pub mod commands;
mod error;
pub mod output;
pub mod verify;

pub use args::{Cli, Command};
pub use error::CliError;

/// Runs one parsed command line, writing human output to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn std::io::Write) -> Result<(), CliError> {
    match cli.command {
        Command::Rate(a) => commands::cmd_rate(&a, stdout),
        Command::Sweep(a) => commands::cmd_sweep(&a, stdout),
        Command::Simulate(a) => commands::cmd_simulate(&a, stdout),
        Command::Verify(a) => verify::cmd_verify(&a, stdout),
    }
}
