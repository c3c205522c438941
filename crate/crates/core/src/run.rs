//! Run configuration (the JSON document accepted by the CLI and the service)
//! and run execution.

use std::path::PathBuf;
use std::time::Instant;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::artifact::{self, RunArtifact};
use crate::builtin::{self, ProblemOverrides};
use crate::error::{Error, Result};
use crate::nlp::SolverConfig;
use crate::problem::{make_explicit_scenarios, make_oat_scenarios, Problem, ScenarioSet};
use crate::robust::{self, FrontSpec, Method};

pub const MAX_POINTS: usize = 500;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScenarioStrategy {
    Oat,
    Explicit { rows: Vec<IndexMap<String, f64>> },
}

/// Solver settings of a run. The seed lives on [`RunConfig`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSettings {
    pub feas_tol: f64,
    pub opt_tol: f64,
    pub max_iter: usize,
    pub multistart_count: usize,
    pub fd_step: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        let d = SolverConfig::default();
        Self {
            feas_tol: d.feas_tol,
            opt_tol: d.opt_tol,
            max_iter: d.max_iter,
            multistart_count: d.multistart_count,
            fd_step: d.fd_step,
        }
    }
}

impl SolverSettings {
    pub fn with_seed(&self, seed: u64) -> SolverConfig {
        SolverConfig {
            feas_tol: self.feas_tol,
            opt_tol: self.opt_tol,
            max_iter: self.max_iter,
            multistart_count: self.multistart_count,
            seed,
            fd_step: self.fd_step,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Built-in problem id.
    pub problem: String,
    #[serde(default, skip_serializing_if = "ProblemOverrides::is_empty")]
    pub overrides: ProblemOverrides,
    pub method: Method,
    #[serde(default = "default_scenarios")]
    pub scenarios: ScenarioStrategy,
    #[serde(default = "default_scalarization")]
    pub scalarization: FrontSpec,
    #[serde(default)]
    pub solver: SolverSettings,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
}

fn default_scenarios() -> ScenarioStrategy {
    ScenarioStrategy::Oat
}

fn default_scalarization() -> FrontSpec {
    FrontSpec::EpsilonConstraint { n_points: 21 }
}

impl RunConfig {
    pub fn new(problem: impl Into<String>, method: Method) -> Self {
        Self {
            problem: problem.into(),
            overrides: ProblemOverrides::default(),
            method,
            scenarios: default_scenarios(),
            scalarization: default_scalarization(),
            solver: SolverSettings::default(),
            output: None,
            seed: 0,
        }
    }

    pub fn with_points(mut self, n_points: usize) -> Self {
        self.scalarization = FrontSpec::EpsilonConstraint { n_points };
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn solver_config(&self) -> SolverConfig {
        self.solver.with_seed(self.seed)
    }

    /// Problem, scenario set and solver configuration of a valid config.
    pub fn prepare(&self) -> Result<(Problem, ScenarioSet, SolverConfig)> {
        let problem = builtin::build(&self.problem, &self.overrides)?;
        let scenarios = match &self.scenarios {
            ScenarioStrategy::Oat => make_oat_scenarios(&problem.uncertain),
            ScenarioStrategy::Explicit { rows } => make_explicit_scenarios(&problem.uncertain, rows)?,
        };
        match &self.scalarization {
            FrontSpec::EpsilonConstraint { n_points } => {
                if !(1..=MAX_POINTS).contains(n_points) {
                    return Err(Error::Config(format!("n_points must be in 1..={MAX_POINTS}, got {n_points}")));
                }
                if problem.n_objectives() != 2 {
                    return Err(Error::Config("epsilon_constraint runs need two objectives".into()));
                }
            }
            FrontSpec::WeightedSum { weights } => {
                if weights.is_empty() || weights.len() > MAX_POINTS {
                    return Err(Error::Config(format!("weights must list 1..={MAX_POINTS} vectors")));
                }
                for w in weights {
                    crate::pareto::normalize_weights(w, problem.n_objectives())?;
                }
            }
        }
        let cfg = self.solver_config();
        cfg.validate()?;
        Ok((problem, scenarios, cfg))
    }

    pub fn validate(&self) -> Result<()> {
        self.prepare().map(|_| ())
    }

    /// Content hash of the config: the first 16 hex digits of SHA-256 over its
    /// canonical JSON, with the output path left out.
    pub fn digest(&self) -> String {
        let mut canonical = self.clone();
        canonical.output = None;
        let bytes = artifact::to_json_bytes(&canonical).unwrap_or_default();
        hex::encode(Sha256::digest(&bytes))[..16].to_string()
    }
}

/// Runs a config to completion. The artifact's run id is the config digest.
pub fn execute(config: &RunConfig) -> Result<RunArtifact> {
    let (problem, scenarios, cfg) = config.prepare()?;
    let started = Instant::now();
    let front = robust::compute_front(&problem, &scenarios, config.method, &config.scalarization, &cfg)?;
    let costs = if config.method == Method::Nominal {
        None
    } else {
        Some(robust::front_costs(&problem, &scenarios, &front, &cfg)?)
    };
    log::info!(
        "{} {} run: {} points, {} skipped, {:.2?}",
        config.problem,
        config.method,
        front.points.len(),
        front.skipped.len(),
        started.elapsed()
    );
    Ok(RunArtifact::assemble(config.digest(), config, &problem, scenarios, front, costs))
}
