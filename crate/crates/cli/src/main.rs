use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mtsp_cli::benchmark::{cmd_benchmark, BenchmarkArgs};
use mtsp_cli::solve::{cmd_solve, SolveArgs};

/// Min-max multiple traveling salesman solver and benchmark harness.
#[derive(Parser)]
#[command(name = "mtsp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance with repeated seeded runs.
    Solve(SolveArgs),
    /// Run an instance grid and aggregate per-cell statistics.
    Benchmark(BenchmarkArgs),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Benchmark(args) => cmd_benchmark(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
