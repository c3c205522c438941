use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    pareto_robust_service::cli::main(pareto_robust_service::cli::Cli::parse())
}
