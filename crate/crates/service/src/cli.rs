//! `run`, `compare` and `serve` subcommands.

use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pareto_robust::artifact::RunArtifact;
use pareto_robust::compare::compare;
use pareto_robust::run::{self, RunConfig};

use crate::registry::Registry;

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_EMPTY_FRONT: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "pareto-robust", version, about = "Nominal and robust Pareto fronts under discrete scenarios")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a front from a JSON run config and write its artifact.
    Run {
        config: PathBuf,
        /// Artifact path. Defaults to the config's `output`, then `<run_id>.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compare artifacts of the same problem.
    Compare {
        #[arg(required = true, num_args = 2..)]
        artifacts: Vec<PathBuf>,
        /// CSV report path. The text summary goes next to it with a `.txt` extension.
        #[arg(long)]
        report: PathBuf,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "runs")]
        data: PathBuf,
        /// Static files served under `/`.
        #[arg(long)]
        ui: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        workers: usize,
    },
}

pub fn main(cli: Cli) -> ExitCode {
    let code = match cli.command {
        Command::Run { config, out, seed } => run_cmd(&config, out, seed),
        Command::Compare { artifacts, report } => compare_cmd(&artifacts, &report),
        Command::Serve { port, data, ui, workers } => serve_cmd(port, data, ui, workers),
    };
    ExitCode::from(code)
}

fn fail(e: &pareto_robust::Error) -> u8 {
    eprintln!("error: {e}");
    if e.is_validation() {
        EXIT_INVALID
    } else {
        EXIT_FAILURE
    }
}

fn run_cmd(config_path: &Path, out: Option<PathBuf>, seed: Option<u64>) -> u8 {
    let text = match std::fs::read_to_string(config_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", config_path.display());
            return EXIT_FAILURE;
        }
    };
    let mut config = match RunConfig::from_json(&text) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    if let Some(seed) = seed {
        config.seed = seed;
    }
    let artifact = match run::execute(&config) {
        Ok(a) => a,
        Err(e) => return fail(&e),
    };
    let path = out
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| PathBuf::from(format!("{}.json", artifact.run_id)));
    if let Err(e) = artifact.write(&path) {
        return fail(&e);
    }
    println!("{} {} points -> {}", artifact.run_id, artifact.points.len(), path.display());
    if artifact.points.is_empty() {
        eprintln!("error: empty front");
        return EXIT_EMPTY_FRONT;
    }
    0
}

fn compare_cmd(paths: &[PathBuf], report: &Path) -> u8 {
    let mut runs = Vec::with_capacity(paths.len());
    for path in paths {
        match RunArtifact::read(path) {
            Ok(a) => {
                let label = path.file_stem().map_or_else(|| a.run_id.clone(), |s| s.to_string_lossy().into_owned());
                runs.push((label, a));
            }
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_FAILURE;
            }
        }
    }
    let result = compare(&runs).and_then(|r| Ok((r.to_csv()?, r.to_text())));
    let (csv, text) = match result {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let text_path = report.with_extension("txt");
    if let Some(dir) = report.parent().filter(|d| !d.as_os_str().is_empty()) {
        if let Err(e) = std::fs::create_dir_all(dir) {
            eprintln!("error: {}: {e}", dir.display());
            return EXIT_FAILURE;
        }
    }
    for (path, body) in [(report, &csv), (text_path.as_path(), &text)] {
        if let Err(e) = std::fs::write(path, body) {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_FAILURE;
        }
    }
    print!("{text}");
    0
}

fn serve_cmd(port: u16, data: PathBuf, ui: Option<PathBuf>, workers: usize) -> u8 {
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAILURE;
        }
    };
    let result = runtime.block_on(async move {
        let registry = Registry::open(data, workers)?;
        let app = crate::api::router(registry, ui.as_deref());
        let addr = SocketAddr::from(([0, 0, 0, 0], port));
        let listener = tokio::net::TcpListener::bind(addr).await?;
        log::info!("listening on {}", listener.local_addr()?);
        axum::serve(listener, app).await
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}
