use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use translab::cli::{execute, Command};

/// Numerical experiments on completeness of translate systems.
#[derive(Parser)]
#[command(name = "translab", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reciprocal and Blaschke sums plus the divergence verdict of a translation set.
    Classify(Args),
    /// Least-squares residual sweep and optional annihilator margin.
    Approx(Args),
    /// Shift-reduction convergence table.
    Reduce(Args),
    /// Exact recursion polynomials.
    Polys(Args),
}

#[derive(clap::Args)]
struct Args {
    /// Experiment config (JSON, schema_version "1").
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides the config's "output".
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Classify(a) => (Command::Classify, a),
        Cmd::Approx(a) => (Command::Approx, a),
        Cmd::Reduce(a) => (Command::Reduce, a),
        Cmd::Polys(a) => (Command::Polys, a),
    };
    let code = execute(command, &args.config, args.out.as_deref());
    ExitCode::from(code as u8)
}
