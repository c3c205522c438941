//! Nominal, component-wise robust and adjustable-robust formulations built
//! from a [`Problem`] and a finite [`ScenarioSet`].
//!
//! Decision layouts, with `x` the HNV values, `y` the WSV values and `K` the
//! number of scenarios in the assembly:
//!
//! | method              | layout               |
//! |---------------------|----------------------|
//! | `Nominal`, `Rmo`    | `(x, y)`             |
//! | `MaroReplication`   | `(x, y_1, ..., y_K)` |
//! | `MaroAffine`        | `(x, a, B)`          |
//!
//! The affine rule is stored in deviation form, `y_k = a + B (u_k - u_nom)`
//! with `B` row-major (`|y|` rows, `P` columns), so `a` is the nominal
//! response.

use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nlp::{ScalarFn, SolverConfig};
use crate::pareto::{self, MaxObjective, ParetoPoint, Scalarization, ScalarSpec, VectorProblem};
use crate::problem::{evaluate_vars, merge_into, validate_problem, Problem, ScenarioSet, VarKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "nominal")]
    Nominal,
    #[serde(rename = "rmo")]
    Rmo,
    #[serde(rename = "maro", alias = "maro_replication")]
    MaroReplication,
    #[serde(rename = "maro_affine")]
    MaroAffine,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Nominal, Method::Rmo, Method::MaroReplication, Method::MaroAffine];

    pub fn label(self) -> &'static str {
        match self {
            Method::Nominal => "nominal",
            Method::Rmo => "rmo",
            Method::MaroReplication => "maro",
            Method::MaroAffine => "maro_affine",
        }
    }

    pub fn is_adjustable(self) -> bool {
        matches!(self, Method::MaroReplication | Method::MaroAffine)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nominal" => Ok(Method::Nominal),
            "rmo" => Ok(Method::Rmo),
            "maro" | "maro_replication" => Ok(Method::MaroReplication),
            "maro_affine" => Ok(Method::MaroAffine),
            other => Err(Error::Config(format!(
                "unknown method {other:?} (expected nominal, rmo, maro, maro_affine)"
            ))),
        }
    }
}

/// Affine decision rule `y(u) = offset + gain (u - reference)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineRule {
    pub offset: Vec<f64>,
    /// One row per WSV, one column per uncertain parameter.
    pub gain: Vec<Vec<f64>>,
    pub reference: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WsvValues {
    /// One WSV vector shared by every scenario.
    Single(Vec<f64>),
    /// Row `k` belongs to scenario `k`.
    PerScenario(Vec<Vec<f64>>),
}

impl WsvValues {
    pub fn for_scenario(&self, k: usize) -> &[f64] {
        match self {
            WsvValues::Single(y) => y,
            WsvValues::PerScenario(rows) => &rows[k],
        }
    }
}

/// HNV and WSV values of one assembled decision vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub hnv: Vec<f64>,
    pub wsv: WsvValues,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine_rule: Option<AffineRule>,
}

#[derive(Debug, Clone)]
pub struct Layout {
    pub method: Method,
    pub n_hnv: usize,
    pub n_wsv: usize,
    pub n_scenarios: usize,
    pub n_params: usize,
    nominal: usize,
    source_len: usize,
    source_nominal: usize,
    wsv_lower: Vec<f64>,
    wsv_upper: Vec<f64>,
    deviations: Vec<Vec<f64>>,
    reference: Vec<f64>,
}

impl Layout {
    pub fn dim(&self) -> usize {
        self.n_hnv
            + match self.method {
                Method::Nominal | Method::Rmo => self.n_wsv,
                Method::MaroReplication => self.n_scenarios * self.n_wsv,
                Method::MaroAffine => self.n_wsv * (1 + self.n_params),
            }
    }

    /// WSV values at scenario `k` (unclamped for the affine rule).
    fn raw_wsv(&self, d: &[f64], k: usize, out: &mut Vec<f64>) {
        out.clear();
        let h = self.n_hnv;
        let n = self.n_wsv;
        match self.method {
            Method::Nominal | Method::Rmo => out.extend_from_slice(&d[h..h + n]),
            Method::MaroReplication => out.extend_from_slice(&d[h + k * n..h + (k + 1) * n]),
            Method::MaroAffine => {
                let p = self.n_params;
                let gain = &d[h + n..];
                for j in 0..n {
                    let row = &gain[j * p..(j + 1) * p];
                    out.push(d[h + j] + row.iter().zip(&self.deviations[k]).map(|(b, du)| b * du).sum::<f64>());
                }
            }
        }
    }

    fn wsv(&self, d: &[f64], k: usize, out: &mut Vec<f64>) {
        self.raw_wsv(d, k, out);
        for ((v, lo), hi) in out.iter_mut().zip(&self.wsv_lower).zip(&self.wsv_upper) {
            *v = v.clamp(*lo, *hi);
        }
    }

    pub fn decode(&self, d: &[f64]) -> Decision {
        let hnv = d[..self.n_hnv].to_vec();
        let mut buf = Vec::new();
        let wsv = match self.method {
            Method::Nominal | Method::Rmo => WsvValues::Single(d[self.n_hnv..self.n_hnv + self.n_wsv].to_vec()),
            _ => WsvValues::PerScenario(
                (0..self.n_scenarios)
                    .map(|k| {
                        self.wsv(d, k, &mut buf);
                        buf.clone()
                    })
                    .collect(),
            ),
        };
        let affine_rule = (self.method == Method::MaroAffine).then(|| {
            let h = self.n_hnv;
            let n = self.n_wsv;
            let p = self.n_params;
            AffineRule {
                offset: d[h..h + n].to_vec(),
                gain: (0..n).map(|j| d[h + n + j * p..h + n + (j + 1) * p].to_vec()).collect(),
                reference: self.reference.clone(),
            }
        });
        Decision { hnv, wsv, affine_rule }
    }

    /// Decision vector for this layout from HNV values and WSV values given
    /// either once or per scenario. Adjustable layouts start from the
    /// nominal-scenario response with a zero gain.
    pub fn encode(&self, hnv: &[f64], wsv: &WsvValues) -> Vec<f64> {
        let nominal_wsv = match wsv {
            WsvValues::Single(y) => y.as_slice(),
            WsvValues::PerScenario(rows) if rows.len() == self.n_scenarios => &rows[self.nominal],
            WsvValues::PerScenario(rows) if rows.len() == self.source_len => &rows[self.source_nominal],
            WsvValues::PerScenario(rows) => &rows[0],
        };
        let mut d = hnv.to_vec();
        match self.method {
            Method::Nominal | Method::Rmo => d.extend_from_slice(nominal_wsv),
            Method::MaroReplication => {
                for k in 0..self.n_scenarios {
                    match wsv {
                        WsvValues::PerScenario(rows) if rows.len() == self.n_scenarios => d.extend_from_slice(&rows[k]),
                        _ => d.extend_from_slice(nominal_wsv),
                    }
                }
            }
            Method::MaroAffine => {
                d.extend_from_slice(nominal_wsv);
                d.extend(std::iter::repeat_n(0.0, self.n_wsv * self.n_params));
            }
        }
        d
    }
}

/// Vector problem of one method plus the information needed to decode its
/// decision vectors.
#[derive(Debug, Clone)]
pub struct RobustAssembly {
    pub method: Method,
    pub layout: Arc<Layout>,
    pub vector: VectorProblem,
    /// Ids (in the caller's scenario set) of the scenarios in the assembly.
    pub scenario_ids: Vec<usize>,
}

struct Shared {
    problem: Problem,
    layout: Arc<Layout>,
    params: Vec<Vec<f64>>,
}

impl Shared {
    fn vars(&self, d: &[f64], k: usize) -> Vec<f64> {
        let mut y = Vec::with_capacity(self.layout.n_wsv);
        self.layout.wsv(d, k, &mut y);
        let mut vars = Vec::with_capacity(self.problem.variables.len());
        merge_into(&self.problem.variables, &d[..self.layout.n_hnv], &y, &mut vars);
        vars
    }
}

/// Assembles the vector problem of `method`. `Nominal` uses only the nominal
/// scenario; the other methods take the worst case over all of `ss`.
pub fn build_vector_problem(p: &Problem, ss: &ScenarioSet, method: Method) -> Result<RobustAssembly> {
    let issues = validate_problem(p);
    if !issues.is_empty() {
        return Err(Error::InvalidProblem(issues));
    }
    if ss.is_empty() {
        return Err(Error::Scenario("scenario set is empty".into()));
    }
    let all = ss.value_matrix(&p.uncertain)?;
    let nominal_id = ss.nominal_index();
    let scenario_ids: Vec<usize> = match method {
        Method::Nominal => vec![nominal_id],
        _ => (0..ss.len()).collect(),
    };
    let params: Vec<Vec<f64>> = scenario_ids.iter().map(|&k| all[k].clone()).collect();
    let nominal = scenario_ids.iter().position(|&k| k == nominal_id).unwrap_or(0);
    let reference = all[nominal_id].clone();

    let hnv: Vec<_> = p.hnv().collect();
    let wsv: Vec<_> = p.wsv().collect();
    let layout = Arc::new(Layout {
        method,
        n_hnv: hnv.len(),
        n_wsv: wsv.len(),
        n_scenarios: params.len(),
        n_params: p.uncertain.len(),
        nominal,
        source_len: ss.len(),
        source_nominal: nominal_id,
        wsv_lower: wsv.iter().map(|v| v.lower).collect(),
        wsv_upper: wsv.iter().map(|v| v.upper).collect(),
        deviations: params
            .iter()
            .map(|u| u.iter().zip(&reference).map(|(a, b)| a - b).collect())
            .collect(),
        reference,
    });

    let mut lower: Vec<f64> = hnv.iter().map(|v| v.lower).collect();
    let mut upper: Vec<f64> = hnv.iter().map(|v| v.upper).collect();
    let wsv_copies = match method {
        Method::Nominal | Method::Rmo | Method::MaroAffine => 1,
        Method::MaroReplication => layout.n_scenarios,
    };
    for _ in 0..wsv_copies {
        lower.extend(wsv.iter().map(|v| v.lower));
        upper.extend(wsv.iter().map(|v| v.upper));
    }
    if method == Method::MaroAffine {
        for v in &wsv {
            for u in &p.uncertain {
                let span = u.upper - u.lower;
                let limit = if span > 0.0 { 2.0 * (v.upper - v.lower) / span } else { 1.0 };
                lower.push(-limit);
                upper.push(limit);
            }
        }
    }
    debug_assert_eq!(lower.len(), layout.dim());

    let shared = Arc::new(Shared {
        problem: p.clone(),
        layout: layout.clone(),
        params,
    });
    let k_count = layout.n_scenarios;
    let mut vector = VectorProblem::new(lower, upper);
    for m in 0..p.n_objectives() {
        let pieces = (0..k_count)
            .map(|k| {
                let s = shared.clone();
                Arc::new(move |d: &[f64]| s.problem.objectives[m].call(&s.vars(d, k), &s.params[k])) as ScalarFn
            })
            .collect();
        vector.objectives.push(MaxObjective { pieces });
    }
    for k in 0..k_count {
        for j in 0..p.constraints.len() {
            let s = shared.clone();
            vector
                .inequalities
                .push(Arc::new(move |d: &[f64]| s.problem.constraints[j].call(&s.vars(d, k), &s.params[k])));
        }
    }
    if method == Method::MaroAffine {
        for k in 0..k_count {
            for j in 0..layout.n_wsv {
                for upper_side in [false, true] {
                    let l = layout.clone();
                    vector.inequalities.push(Arc::new(move |d: &[f64]| {
                        let mut y = Vec::with_capacity(l.n_wsv);
                        l.raw_wsv(d, k, &mut y);
                        if upper_side {
                            y[j] - l.wsv_upper[j]
                        } else {
                            l.wsv_lower[j] - y[j]
                        }
                    }));
                }
            }
        }
    }
    Ok(RobustAssembly {
        method,
        layout,
        vector,
        scenario_ids,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRow {
    pub scenario_id: usize,
    pub objectives: Vec<f64>,
    pub max_violation: f64,
    pub wsv: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScenarioTable {
    pub rows: Vec<ScenarioRow>,
}

impl ScenarioTable {
    /// Component-wise maximum of the objective rows.
    pub fn worst_case(&self) -> Vec<f64> {
        let m = self.rows.first().map_or(0, |r| r.objectives.len());
        (0..m)
            .map(|i| self.rows.iter().map(|r| r.objectives[i]).fold(f64::NEG_INFINITY, f64::max))
            .collect()
    }

    pub fn max_violation(&self) -> f64 {
        self.rows.iter().map(|r| r.max_violation).fold(0.0, f64::max)
    }

    pub fn row(&self, scenario_id: usize) -> Option<&ScenarioRow> {
        self.rows.iter().find(|r| r.scenario_id == scenario_id)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterStats {
    /// Per objective: max minus min over scenarios.
    pub range: Vec<f64>,
    /// Per objective: population standard deviation over scenarios.
    pub std: Vec<f64>,
}

impl ScatterStats {
    pub fn of(table: &ScenarioTable) -> Self {
        let m = table.rows.first().map_or(0, |r| r.objectives.len());
        let n = table.rows.len() as f64;
        let mut range = Vec::with_capacity(m);
        let mut std = Vec::with_capacity(m);
        for i in 0..m {
            let col: Vec<f64> = table.rows.iter().map(|r| r.objectives[i]).collect();
            let (lo, hi) = col
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(*v), b.max(*v)));
            let mean = col.iter().sum::<f64>() / n;
            let var = col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
            range.push(hi - lo);
            std.push(var.sqrt());
        }
        Self { range, std }
    }
}

/// Evaluates a decision under every scenario of `ss`. A single WSV vector is
/// reused for all scenarios; per-scenario WSV must have one row per scenario.
pub fn sensitivity_scatter(p: &Problem, ss: &ScenarioSet, decision: &Decision) -> Result<(ScenarioTable, ScatterStats)> {
    let params = ss.value_matrix(&p.uncertain)?;
    if let WsvValues::PerScenario(rows) = &decision.wsv {
        if rows.len() != ss.len() {
            return Err(Error::Dimension {
                what: "per-scenario WSV rows",
                expected: ss.len(),
                got: rows.len(),
            });
        }
    }
    let mut vars = Vec::new();
    let mut rows = Vec::with_capacity(ss.len());
    for (k, u) in params.iter().enumerate() {
        let y = decision.wsv.for_scenario(k);
        merge_into(&p.variables, &decision.hnv, y, &mut vars);
        let e = evaluate_vars(p, &vars, u)?;
        rows.push(ScenarioRow {
            scenario_id: k,
            objectives: e.objectives,
            max_violation: e.max_violation,
            wsv: y.to_vec(),
        });
    }
    let table = ScenarioTable { rows };
    let stats = ScatterStats::of(&table);
    Ok((table, stats))
}

/// Component-wise worst case over a subset of the table's scenarios. For
/// adjustable methods this is an upper bound on the subset's adjustable-robust
/// value, since the per-scenario WSV are not re-optimized.
pub fn worstcase_over_subset(table: &ScenarioTable, scenario_ids: &[usize]) -> Result<Vec<f64>> {
    if scenario_ids.is_empty() {
        return Err(Error::EmptySubset);
    }
    let rows = scenario_ids
        .iter()
        .map(|&id| table.row(id).ok_or(Error::UnknownScenario(id)))
        .collect::<Result<Vec<_>>>()?;
    let m = rows[0].objectives.len();
    Ok((0..m)
        .map(|i| rows.iter().map(|r| r.objectives[i]).fold(f64::NEG_INFINITY, f64::max))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustPoint {
    pub decision: Decision,
    /// Objectives at the nominal scenario.
    pub nominal_objectives: Vec<f64>,
    /// Component-wise maximum over the scenario table.
    pub worst_case_objectives: Vec<f64>,
    pub table: ScenarioTable,
    pub stats: ScatterStats,
    pub pareto: ParetoPoint,
}

impl RobustPoint {
    /// Nominal values for nominal runs, worst-case values otherwise.
    pub fn displayed(&self, method: Method) -> &[f64] {
        match method {
            Method::Nominal => &self.nominal_objectives,
            _ => &self.worst_case_objectives,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustFront {
    pub method: Method,
    pub points: Vec<RobustPoint>,
    pub ideal: Vec<f64>,
    pub nadir_estimate: Vec<f64>,
    pub skipped: Vec<Scalarization>,
    pub evaluations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

/// How a front is traced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FrontSpec {
    EpsilonConstraint { n_points: usize },
    WeightedSum { weights: Vec<Vec<f64>> },
}

/// Front of `method` with a full scenario table per point. The table always
/// covers every scenario of `ss`, also for nominal fronts.
pub fn compute_front(
    p: &Problem,
    ss: &ScenarioSet,
    method: Method,
    spec: &FrontSpec,
    cfg: &SolverConfig,
) -> Result<RobustFront> {
    let asm = build_vector_problem(p, ss, method)?;
    let front = match spec {
        FrontSpec::EpsilonConstraint { n_points } => pareto::epsilon_constraint_front(&asm.vector, *n_points, cfg),
        FrontSpec::WeightedSum { weights } => pareto::weighted_sum_front(&asm.vector, weights, cfg),
    };
    let front = match front {
        Ok(f) => f,
        Err(Error::Infeasible(msg)) => {
            return Ok(RobustFront {
                method,
                points: Vec::new(),
                ideal: Vec::new(),
                nadir_estimate: Vec::new(),
                skipped: Vec::new(),
                evaluations: 0,
                diagnostic: Some(format!("no feasible anchor: {msg}")),
            })
        }
        Err(e) => return Err(e),
    };
    let points = front
        .points
        .into_iter()
        .map(|pt| robust_point(p, ss, &asm, pt))
        .collect::<Result<Vec<_>>>()?;
    let diagnostic = points
        .is_empty()
        .then(|| format!("all {} scalarized subproblems were infeasible", front.skipped.len()));
    Ok(RobustFront {
        method,
        points,
        ideal: front.ideal,
        nadir_estimate: front.nadir_estimate,
        skipped: front.skipped,
        evaluations: front.evaluations,
        diagnostic,
    })
}

fn robust_point(p: &Problem, ss: &ScenarioSet, asm: &RobustAssembly, pt: ParetoPoint) -> Result<RobustPoint> {
    let decision = asm.layout.decode(&pt.decision);
    let (table, stats) = sensitivity_scatter(p, ss, &decision)?;
    let nominal_objectives = table.rows[ss.nominal_index()].objectives.clone();
    let worst_case_objectives = table.worst_case();
    Ok(RobustPoint {
        decision,
        nominal_objectives,
        worst_case_objectives,
        table,
        stats,
        pareto: pt,
    })
}

const REFERENCE_TOL_FACTOR: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostOfRobustness {
    /// The robust decision evaluated at the nominal scenario.
    pub nominal_objectives: Vec<f64>,
    /// Per objective, how far the nominal value lies above the best nominal
    /// value reachable without worsening any other objective.
    pub gaps: Vec<f64>,
    /// Per objective, the nominal-front point the gap is measured against.
    pub references: Vec<Vec<f64>>,
}

/// Cost of robustness of a robust or adjustable point. Gap `m` is
/// `nominal_m - min { f_m : f_j <= nominal_j for j != m }` over the nominal
/// problem, solved from the point's own nominal decision, so gaps are never
/// meaningfully negative.
pub fn cost_of_robustness(p: &Problem, ss: &ScenarioSet, point: &RobustPoint, cfg: &SolverConfig) -> Result<CostOfRobustness> {
    let nominal = build_vector_problem(p, ss, Method::Nominal)?;
    let k = ss.nominal_index();
    let y = point.decision.wsv.for_scenario(k).to_vec();
    let start = nominal.layout.encode(&point.decision.hnv, &WsvValues::Single(y));
    let nominal_objectives = nominal.vector.evaluate(&start);
    let m_count = nominal_objectives.len();
    // Cap slack near a flat end of the front would show up as a spurious gap of
    // order sqrt(feas_tol), so the reference solves run with a tighter tolerance.
    let tight = SolverConfig {
        feas_tol: cfg.feas_tol * REFERENCE_TOL_FACTOR,
        ..cfg.clone()
    };
    let shift = 0.5 * tight.feas_tol;
    let mut gaps = Vec::with_capacity(m_count);
    let mut references = Vec::with_capacity(m_count);
    for m in 0..m_count {
        let mut weights = vec![0.0; m_count];
        weights[m] = 1.0;
        let caps = (0..m_count)
            .map(|j| (j != m).then_some(nominal_objectives[j] - shift))
            .collect();
        match pareto::solve_scalarized(&nominal.vector, &ScalarSpec { weights, caps }, &tight, std::slice::from_ref(&start)) {
            Ok(o) => {
                gaps.push(nominal_objectives[m] - o.objectives[m]);
                references.push(o.objectives);
            }
            Err(Error::Infeasible(msg)) => {
                log::warn!("cost-of-robustness subproblem {m} infeasible: {msg}");
                gaps.push(0.0);
                references.push(nominal_objectives.clone());
            }
            Err(e) => return Err(e),
        }
    }
    Ok(CostOfRobustness {
        nominal_objectives,
        gaps,
        references,
    })
}

/// Bi-objective gaps against a sampled nominal front by linear interpolation
/// between adjacent front points. `None` where the other objective's value
/// falls outside the front's range.
pub fn interpolated_gaps(nominal_objectives: &[f64], front: &[Vec<f64>]) -> Vec<Option<f64>> {
    if nominal_objectives.len() != 2 || front.is_empty() {
        return vec![None; nominal_objectives.len()];
    }
    (0..2)
        .map(|m| {
            let other = 1 - m;
            let mut pts: Vec<(f64, f64)> = front.iter().map(|f| (f[other], f[m])).collect();
            pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
            let at = nominal_objectives[other];
            interpolate(&pts, at).map(|v| nominal_objectives[m] - v)
        })
        .collect()
}

fn interpolate(pts: &[(f64, f64)], at: f64) -> Option<f64> {
    if pts.len() == 1 {
        return ((pts[0].0 - at).abs() <= 1e-12 * (1.0 + at.abs())).then_some(pts[0].1);
    }
    pts.windows(2).find_map(|w| {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if at < x0 || at > x1 {
            None
        } else if x1 == x0 {
            Some(y0.min(y1))
        } else {
            Some(y0 + (y1 - y0) * (at - x0) / (x1 - x0))
        }
    })
}

/// Weighted-sum optimum of one method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodOptimum {
    pub method: Method,
    /// `sum_m w_m F_m` with the normalized weights.
    pub value: f64,
    pub point: ParetoPoint,
    pub decision: Decision,
}

/// Weighted-sum optima of all four methods for one weight vector. Each method
/// is warm-started from the previous one's optimum (robust, affine,
/// replication, nominal), so every step starts from a point that is feasible
/// for it with an objective no worse than the previous optimum.
pub fn weighted_sum_chain(p: &Problem, ss: &ScenarioSet, w: &[f64], cfg: &SolverConfig) -> Result<Vec<MethodOptimum>> {
    let weights = pareto::normalize_weights(w, p.n_objectives())?;
    let order = [Method::Rmo, Method::MaroAffine, Method::MaroReplication, Method::Nominal];
    let mut out: Vec<MethodOptimum> = Vec::with_capacity(order.len());
    for method in order {
        let asm = build_vector_problem(p, ss, method)?;
        let warm: Vec<Vec<f64>> = out
            .last()
            .map(|prev| vec![asm.layout.encode(&prev.decision.hnv, &prev.decision.wsv)])
            .unwrap_or_default();
        let point = pareto::weighted_sum_point_from(&asm.vector, &weights, cfg, &warm)?;
        let value = weights.iter().zip(&point.objectives).map(|(a, b)| a * b).sum();
        let decision = asm.layout.decode(&point.decision);
        out.push(MethodOptimum {
            method,
            value,
            point,
            decision,
        });
    }
    out.sort_by_key(|o| o.method);
    Ok(out)
}

/// Cost-of-robustness records for every point of a robust front, in order.
pub fn front_costs(p: &Problem, ss: &ScenarioSet, front: &RobustFront, cfg: &SolverConfig) -> Result<Vec<CostOfRobustness>> {
    front
        .points
        .par_iter()
        .map(|pt| cost_of_robustness(p, ss, pt, cfg))
        .collect()
}

/// Named HNV and WSV values of a decision.
pub fn named_values(p: &Problem, decision: &Decision) -> (IndexMap<String, f64>, Vec<IndexMap<String, f64>>) {
    let hnv = p.hnv().map(|v| v.name.clone()).zip(decision.hnv.iter().copied()).collect();
    let names: Vec<String> = p.variables.iter().filter(|v| v.kind == VarKind::Wsv).map(|v| v.name.clone()).collect();
    let rows = match &decision.wsv {
        WsvValues::Single(y) => vec![y.clone()],
        WsvValues::PerScenario(rows) => rows.clone(),
    };
    let wsv = rows
        .iter()
        .map(|y| names.iter().cloned().zip(y.iter().copied()).collect())
        .collect();
    (hnv, wsv)
}
