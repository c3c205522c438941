//! Serialized run results and their byte-stable JSON encoding.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::builtin::{self, ProblemDescriptor};
use crate::error::{Error, Result};
use crate::nlp::SolverStatus;
use crate::pareto::Scalarization;
use crate::problem::{Problem, ScenarioSet};
use crate::robust::{self, AffineRule, CostOfRobustness, Method, RobustFront, ScatterStats, ScenarioTable};
use crate::run::RunConfig;

pub const FORMAT_VERSION: u32 = 1;

/// Pretty JSON with every float written to 17 significant digits, so that a
/// read-write cycle reproduces the file byte for byte.
pub struct StableFormatter {
    inner: PrettyFormatter<'static>,
}

impl Default for StableFormatter {
    fn default() -> Self {
        Self {
            inner: PrettyFormatter::with_indent(b"  "),
        }
    }
}

fn write_float<W: ?Sized + Write>(w: &mut W, v: f64) -> io::Result<()> {
    if v.is_finite() {
        write!(w, "{v:.16e}")
    } else {
        w.write_all(b"null")
    }
}

impl Formatter for StableFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write_float(w, v)
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        write_float(w, v as f64)
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

/// Serializes with [`StableFormatter`], followed by a newline.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, StableFormatter::default());
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WsvRecord {
    Single(IndexMap<String, f64>),
    /// Entry `k` belongs to scenario `k`.
    PerScenario(Vec<IndexMap<String, f64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArtifactPoint {
    pub id: usize,
    pub scalarization: Scalarization,
    pub solver_status: SolverStatus,
    pub hnv: IndexMap<String, f64>,
    pub wsv: WsvRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine_rule: Option<AffineRule>,
    pub nominal_objectives: Vec<f64>,
    pub worst_case_objectives: Vec<f64>,
    /// Nominal values for nominal runs, worst-case values otherwise.
    pub displayed_objectives: Vec<f64>,
    pub scenario_table: ScenarioTable,
    pub scatter: ScatterStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost_of_robustness: Option<CostOfRobustness>,
}

/// Deterministic work counters. Wall-clock times are logged, not stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkCounters {
    pub function_evaluations: u64,
    pub subproblems: usize,
    pub skipped_subproblems: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunArtifact {
    pub format_version: u32,
    pub run_id: String,
    pub config: RunConfig,
    pub problem: ProblemDescriptor,
    pub method: Method,
    pub objective_names: Vec<String>,
    pub scenarios: ScenarioSet,
    pub ideal: Vec<f64>,
    pub nadir_estimate: Vec<f64>,
    pub points: Vec<ArtifactPoint>,
    pub skipped: Vec<Scalarization>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    pub work: WorkCounters,
}

impl RunArtifact {
    pub(crate) fn assemble(
        run_id: String,
        config: &RunConfig,
        problem: &Problem,
        scenarios: ScenarioSet,
        front: RobustFront,
        costs: Option<Vec<CostOfRobustness>>,
    ) -> Self {
        let mut echo = config.clone();
        echo.output = None;
        let method = front.method;
        let skipped_subproblems = front.skipped.len();
        let subproblems = front.points.len() + skipped_subproblems;
        let (description, constants) = builtin::descriptors()
            .into_iter()
            .find(|d| d.id == config.problem)
            .map(|d| (d.description, d.override_schema.constants))
            .unwrap_or_default();
        let points = front
            .points
            .into_iter()
            .enumerate()
            .map(|(id, pt)| {
                let (hnv, mut rows) = robust::named_values(problem, &pt.decision);
                let wsv = match pt.decision.wsv {
                    robust::WsvValues::Single(_) => WsvRecord::Single(rows.remove(0)),
                    robust::WsvValues::PerScenario(_) => WsvRecord::PerScenario(rows),
                };
                ArtifactPoint {
                    id,
                    scalarization: pt.pareto.scalarization.clone(),
                    solver_status: pt.pareto.solver_status,
                    hnv,
                    wsv,
                    affine_rule: pt.decision.affine_rule.clone(),
                    displayed_objectives: pt.displayed(method).to_vec(),
                    nominal_objectives: pt.nominal_objectives,
                    worst_case_objectives: pt.worst_case_objectives,
                    scenario_table: pt.table,
                    scatter: pt.stats,
                    cost_of_robustness: costs.as_ref().map(|c| c[id].clone()),
                }
            })
            .collect();
        RunArtifact {
            format_version: FORMAT_VERSION,
            run_id,
            config: echo,
            problem: builtin::describe(problem, &config.problem, &description, constants),
            method,
            objective_names: problem.objectives.iter().map(|e| e.name.clone()).collect(),
            scenarios,
            ideal: front.ideal,
            nadir_estimate: front.nadir_estimate,
            points,
            skipped: front.skipped,
            diagnostic: front.diagnostic,
            work: WorkCounters {
                function_evaluations: front.evaluations,
                subproblems,
                skipped_subproblems,
            },
        }
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        to_json_bytes(self)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, self.to_bytes()?)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn point(&self, id: usize) -> Result<&ArtifactPoint> {
        self.points.get(id).ok_or(Error::UnknownPoint(id))
    }

    pub fn displayed(&self) -> Vec<&[f64]> {
        self.points.iter().map(|p| p.displayed_objectives.as_slice()).collect()
    }

    pub fn front_summary(&self) -> FrontSummary {
        FrontSummary {
            run_id: self.run_id.clone(),
            method: self.method,
            objective_names: self.objective_names.clone(),
            points: self
                .points
                .iter()
                .map(|p| FrontEntry {
                    id: p.id,
                    objectives: p.displayed_objectives.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontEntry {
    pub id: usize,
    pub objectives: Vec<f64>,
}

/// Displayed objective vectors of a run, ordered by objective 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontSummary {
    pub run_id: String,
    pub method: Method,
    pub objective_names: Vec<String>,
    pub points: Vec<FrontEntry>,
}
