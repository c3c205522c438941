//! Vector minimization by scalarization, plus Pareto dominance utilities.
//!
//! A [`VectorProblem`] objective is the pointwise maximum of one or more smooth
//! pieces. Single-piece objectives enter scalar subproblems directly; a
//! multi-piece objective that is being minimized is replaced by an auxiliary
//! bound `t` with one smooth constraint `piece(d) - t <= 0` per piece, and a
//! multi-piece objective that is capped by `eps` becomes one constraint per
//! piece. Every subproblem handed to the NLP solver is therefore smooth.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nlp::{self, NlpProblem, ScalarFn, SmoothFn, SolverConfig, SolverStatus};
use crate::sequence;

/// Default tolerance for dominance tests between front points.
pub const DOMINANCE_TOL: f64 = 1e-9;
/// Default duplicate-merge tolerance, relative to each objective's range.
pub const DUPLICATE_TOL: f64 = 1e-7;

/// Objective given as the maximum over smooth pieces.
#[derive(Clone)]
pub struct MaxObjective {
    pub pieces: Vec<ScalarFn>,
}

impl MaxObjective {
    pub fn single(f: ScalarFn) -> Self {
        Self { pieces: vec![f] }
    }

    pub fn eval(&self, d: &[f64]) -> f64 {
        self.pieces
            .iter()
            .map(|p| p(d))
            .fold(f64::NEG_INFINITY, |a, v| if v.is_nan() { f64::NAN } else { a.max(v) })
    }
}

impl std::fmt::Debug for MaxObjective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MaxObjective({} pieces)", self.pieces.len())
    }
}

#[derive(Clone)]
pub struct VectorProblem {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub objectives: Vec<MaxObjective>,
    pub inequalities: Vec<ScalarFn>,
}

impl std::fmt::Debug for VectorProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VectorProblem")
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("objectives", &self.objectives)
            .field("inequalities", &self.inequalities.len())
            .finish()
    }
}

impl VectorProblem {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        Self {
            lower,
            upper,
            objectives: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn objective<F>(mut self, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        self.objectives.push(MaxObjective::single(Arc::new(f)));
        self
    }

    pub fn inequality<F>(mut self, g: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        self.inequalities.push(Arc::new(g));
        self
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn n_objectives(&self) -> usize {
        self.objectives.len()
    }

    pub fn evaluate(&self, d: &[f64]) -> Vec<f64> {
        self.objectives.iter().map(|o| o.eval(d)).collect()
    }

    pub fn max_violation(&self, d: &[f64]) -> f64 {
        self.inequalities
            .iter()
            .map(|g| g(d))
            .fold(0.0, |a: f64, v| if v.is_nan() { f64::INFINITY } else { a.max(v) })
    }

    fn check(&self) -> Result<()> {
        if self.objectives.len() < 2 {
            return Err(Error::Config("vector problem needs M ≥ 2 objectives".into()));
        }
        if self.lower.len() != self.upper.len() {
            return Err(Error::Dimension {
                what: "vector problem bounds",
                expected: self.lower.len(),
                got: self.upper.len(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Scalarization {
    /// Minimize objective `free` subject to `objective_m <= eps[m]` for every
    /// `m != free` (`eps[free]` is `None`).
    EpsilonConstraint { free: usize, eps: Vec<Option<f64>> },
    WeightedSum { weights: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParetoPoint {
    pub decision: Vec<f64>,
    pub objectives: Vec<f64>,
    pub scalarization: Scalarization,
    pub solver_status: SolverStatus,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub annotations: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParetoFront {
    pub points: Vec<ParetoPoint>,
    pub ideal: Vec<f64>,
    pub nadir_estimate: Vec<f64>,
    /// Scalarizations whose subproblem had no feasible solution.
    #[serde(default)]
    pub skipped: Vec<Scalarization>,
    #[serde(default)]
    pub evaluations: u64,
}

/// `a` dominates `b`: no worse than `b + tol` anywhere, better than `b - tol`
/// somewhere.
pub fn dominates(a: &[f64], b: &[f64], tol: f64) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            what: "objective vectors",
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(dominates_unchecked(a, b, tol))
}

#[inline]
pub(crate) fn dominates_unchecked(a: &[f64], b: &[f64], tol: f64) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if *x > y + tol {
            return false;
        }
        if *x < y - tol {
            strict = true;
        }
    }
    strict
}

/// Indices of the points not dominated by any other point, in input order.
/// Points equal within `tol` in every component keep only the earliest.
pub fn nondominated_filter<T: AsRef<[f64]>>(points: &[T], tol: f64) -> Vec<usize> {
    let dims = points.first().map_or(0, |p| p.as_ref().len());
    nondominated_filter_with(points, tol, &vec![tol; dims])
}

/// Like [`nondominated_filter`] with separate dominance and per-objective
/// duplicate tolerances.
pub fn nondominated_filter_with<T: AsRef<[f64]>>(points: &[T], dominance_tol: f64, duplicate_tol: &[f64]) -> Vec<usize> {
    let is_duplicate = |a: &[f64], b: &[f64]| {
        a.iter()
            .zip(b)
            .zip(duplicate_tol)
            .all(|((x, y), t)| (x - y).abs() <= *t)
    };
    (0..points.len())
        .filter(|&i| {
            let p = points[i].as_ref();
            points.iter().enumerate().all(|(j, q)| {
                let q = q.as_ref();
                j == i || !(dominates_unchecked(q, p, dominance_tol) || (j < i && is_duplicate(q, p)))
            })
        })
        .collect()
}

/// Scalar subproblem description: minimize `sum_m weights[m] * F_m` subject to
/// `F_m <= caps[m]` where a cap is present.
#[derive(Debug, Clone)]
pub(crate) struct ScalarSpec {
    pub weights: Vec<f64>,
    pub caps: Vec<Option<f64>>,
}

pub(crate) struct ScalarOutcome {
    pub decision: Vec<f64>,
    pub objectives: Vec<f64>,
    pub status: SolverStatus,
    pub evaluations: u64,
}

struct Epigraph {
    objective: usize,
    lower: f64,
    upper: f64,
}

fn build_scalar_nlp(vp: &VectorProblem, spec: &ScalarSpec, epis: &[Epigraph]) -> Result<NlpProblem> {
    let nd = vp.dim();
    let mut lower = vp.lower.clone();
    let mut upper = vp.upper.clone();
    for e in epis {
        lower.push(e.lower);
        upper.push(e.upper);
    }

    let mut direct: Vec<(f64, MaxObjective)> = Vec::new();
    let mut epi_weights: Vec<(usize, f64)> = Vec::new();
    for (m, w) in spec.weights.iter().enumerate() {
        if *w == 0.0 {
            continue;
        }
        match epis.iter().position(|e| e.objective == m) {
            Some(k) => epi_weights.push((nd + k, *w)),
            None => direct.push((*w, vp.objectives[m].clone())),
        }
    }
    let objective = SmoothFn::new(move |z: &[f64]| {
        let d = &z[..nd];
        let mut acc = 0.0;
        for (w, o) in &direct {
            acc += w * o.eval(d);
        }
        for (idx, w) in &epi_weights {
            acc += w * z[*idx];
        }
        acc
    });
    let mut nlp = NlpProblem::new(lower, upper, objective)?;

    for g in &vp.inequalities {
        let g = g.clone();
        nlp = nlp.inequality(SmoothFn::new(move |z: &[f64]| g(&z[..nd])));
    }
    for (k, e) in epis.iter().enumerate() {
        for piece in &vp.objectives[e.objective].pieces {
            let piece = piece.clone();
            let idx = nd + k;
            nlp = nlp.inequality(SmoothFn::new(move |z: &[f64]| piece(&z[..nd]) - z[idx]));
        }
    }
    for (m, cap) in spec.caps.iter().enumerate() {
        if let Some(eps) = *cap {
            for piece in &vp.objectives[m].pieces {
                let piece = piece.clone();
                nlp = nlp.inequality(SmoothFn::new(move |z: &[f64]| piece(&z[..nd]) - eps));
            }
        }
    }
    Ok(nlp)
}

const EPIGRAPH_SAMPLES: usize = 64;
const RESTORE_STEPS: usize = 50;

/// Solves one scalarized subproblem from the warm starts followed by
/// `cfg.multistart_count` quasi-random starts.
pub(crate) fn solve_scalarized(
    vp: &VectorProblem,
    spec: &ScalarSpec,
    cfg: &SolverConfig,
    warm: &[Vec<f64>],
) -> Result<ScalarOutcome> {
    vp.check()?;
    let nd = vp.dim();
    let mut starts: Vec<Vec<f64>> = warm.iter().filter(|w| w.len() == nd).cloned().collect();
    for s in &mut starts {
        for ((v, l), u) in s.iter_mut().zip(&vp.lower).zip(&vp.upper) {
            *v = v.clamp(*l, *u);
        }
    }
    starts.extend(sequence::box_points(&vp.lower, &vp.upper, cfg.multistart_count, cfg.seed));

    let needs_epigraph: Vec<usize> = (0..vp.n_objectives())
        .filter(|&m| spec.weights[m] != 0.0 && vp.objectives[m].pieces.len() > 1)
        .collect();

    // Epigraph bound boxes from the range of each objective over samples and starts.
    let samples = sequence::box_points(&vp.lower, &vp.upper, EPIGRAPH_SAMPLES, cfg.seed ^ 0x9e37_79b9);
    let mut epis: Vec<Epigraph> = needs_epigraph
        .iter()
        .map(|&m| {
            let (lo, hi) = samples
                .iter()
                .chain(&starts)
                .map(|d| vp.objectives[m].eval(d))
                .filter(|v| v.is_finite())
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
            let span = (hi - lo).max(1e-3 * (1.0 + lo.abs().max(hi.abs())));
            Epigraph {
                objective: m,
                lower: lo - span,
                upper: hi + 0.1 * span,
            }
        })
        .collect();

    let mut evaluations = 0;
    for _ in 0..4 {
        let nlp = build_scalar_nlp(vp, spec, &epis)?;
        let full_starts: Vec<Vec<f64>> = starts
            .iter()
            .map(|d| {
                let mut z = d.clone();
                for e in &epis {
                    z.push(vp.objectives[e.objective].eval(d).clamp(e.lower, e.upper));
                }
                z
            })
            .collect();
        let r = nlp::multistart_solve_from(&nlp, &full_starts, cfg);
        evaluations += r.evaluations;
        if !r.is_feasible(cfg) {
            return Err(Error::Infeasible(format!(
                "scalarized subproblem: smallest violation {:.3e}",
                r.max_violation
            )));
        }
        // An epigraph variable resting on its lower bound means the box was too tight.
        let mut widened = false;
        for (k, e) in epis.iter_mut().enumerate() {
            let t = r.z_star[nd + k];
            let span = e.upper - e.lower;
            if t <= e.lower + 1e-9 * span {
                e.lower -= 10.0 * span;
                widened = true;
            }
        }
        if widened {
            continue;
        }
        let decision = r.z_star[..nd].to_vec();
        let objectives = vp.evaluate(&decision);
        return Ok(ScalarOutcome {
            decision,
            objectives,
            status: r.status,
            evaluations,
        });
    }
    Err(Error::Infeasible("epigraph bounds did not stabilize".into()))
}

#[derive(Debug, Clone)]
pub struct Anchors {
    pub ideal: Vec<f64>,
    pub nadir_estimate: Vec<f64>,
    /// Decision vector of the anchor point of each objective.
    pub minimizers: Vec<Vec<f64>>,
    pub objectives: Vec<Vec<f64>>,
    pub evaluations: u64,
}

const POLISH_GAIN: f64 = 1e-3;

/// Minimizes each objective on its own. Each anchor is then polished by
/// minimizing the sum of the remaining objectives while holding its own
/// objective at the optimum; the polished point replaces the anchor when it
/// improves the others materially, which keeps weakly optimal anchors out of
/// the nadir estimate.
pub fn anchor_points(vp: &VectorProblem, cfg: &SolverConfig) -> Result<Anchors> {
    vp.check()?;
    let m_count = vp.n_objectives();
    let mut ideal = vec![0.0; m_count];
    let mut minimizers = Vec::with_capacity(m_count);
    let mut objectives = Vec::with_capacity(m_count);
    let mut evaluations = 0;
    for m in 0..m_count {
        let mut weights = vec![0.0; m_count];
        weights[m] = 1.0;
        let first = solve_scalarized(
            vp,
            &ScalarSpec {
                weights,
                caps: vec![None; m_count],
            },
            cfg,
            &[],
        )?;
        evaluations += first.evaluations;
        let best = first.objectives[m];
        let mut caps = vec![None; m_count];
        caps[m] = Some(best);
        let mut weights = vec![1.0; m_count];
        weights[m] = 0.0;
        let polished = solve_scalarized(vp, &ScalarSpec { weights, caps: caps.clone() }, cfg, std::slice::from_ref(&first.decision)).map(|mut p| {
            let restored = restore_caps(vp, &caps, &p.decision, cfg.feas_tol);
            if restored != p.decision {
                p.objectives = vp.evaluate(&restored);
                p.decision = restored;
            }
            p
        });
        let others = |o: &[f64]| o.iter().enumerate().filter(|(j, _)| *j != m).map(|(_, v)| v).sum::<f64>();
        let chosen = match polished {
            Ok(p) => {
                evaluations += p.evaluations;
                let before = others(&first.objectives);
                if before - others(&p.objectives) > POLISH_GAIN * (1.0 + before.abs()) {
                    p
                } else {
                    first
                }
            }
            Err(_) => first,
        };
        ideal[m] = best.min(chosen.objectives[m]);
        minimizers.push(chosen.decision);
        objectives.push(chosen.objectives);
    }
    let nadir_estimate = (0..m_count)
        .map(|m| objectives.iter().map(|o| o[m]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    Ok(Anchors {
        ideal,
        nadir_estimate,
        minimizers,
        objectives,
        evaluations,
    })
}

/// Uniform grid of `n` values over `[lo, hi]`; a single value sits at `hi`.
pub fn epsilon_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![hi],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Bi-objective ε-constraint front: for each ε on an `n_points` grid over
/// `[ideal_1, nadir_1]`, minimize objective 2 subject to objective 1 ≤ ε.
pub fn epsilon_constraint_front(vp: &VectorProblem, n_points: usize, cfg: &SolverConfig) -> Result<ParetoFront> {
    vp.check()?;
    if vp.n_objectives() != 2 {
        return Err(Error::Config(
            "grid ε-constraint needs M = 2; use epsilon_constraint_front_with_grid".into(),
        ));
    }
    if n_points == 0 {
        return Err(Error::Config("n_points must be ≥ 1".into()));
    }
    let anchors = anchor_points(vp, cfg)?;
    let grid: Vec<Vec<Option<f64>>> = epsilon_grid(anchors.ideal[0], anchors.nadir_estimate[0], n_points)
        .into_iter()
        .map(|e| vec![Some(e), None])
        .collect();
    front_from_grid(vp, 1, &grid, cfg, anchors)
}

/// ε-constraint front over a caller-supplied grid. Each grid entry gives the
/// caps for every objective except `free`, whose entry is ignored.
pub fn epsilon_constraint_front_with_grid(
    vp: &VectorProblem,
    free: usize,
    grid: &[Vec<Option<f64>>],
    cfg: &SolverConfig,
) -> Result<ParetoFront> {
    vp.check()?;
    if free >= vp.n_objectives() {
        return Err(Error::Config(format!("free objective {free} out of range")));
    }
    if let Some(bad) = grid.iter().find(|g| g.len() != vp.n_objectives()) {
        return Err(Error::Dimension {
            what: "ε grid entry",
            expected: vp.n_objectives(),
            got: bad.len(),
        });
    }
    let anchors = anchor_points(vp, cfg)?;
    front_from_grid(vp, free, grid, cfg, anchors)
}

/// Largest cap excess `F_m - cap_m`, floored at 0.
fn cap_violation(vp: &VectorProblem, caps: &[Option<f64>], d: &[f64]) -> f64 {
    caps.iter()
        .zip(vp.evaluate(d))
        .filter_map(|(c, v)| c.map(|c| v - c))
        .fold(0.0, |a: f64, v| if v.is_nan() { f64::INFINITY } else { a.max(v) })
}

/// Pushes `d` back inside the objective caps by Newton steps on the most
/// violated cap piece, projected on the box. Returns `d` unchanged if the caps
/// already hold, if the steps fail to meet them, or if an inequality ends up
/// violated beyond `feas_tol`.
fn restore_caps(vp: &VectorProblem, caps: &[Option<f64>], d: &[f64], feas_tol: f64) -> Vec<f64> {
    if cap_violation(vp, caps, d) <= 0.0 {
        return d.to_vec();
    }
    let mut z = d.to_vec();
    for _ in 0..RESTORE_STEPS {
        let worst = caps
            .iter()
            .enumerate()
            .filter_map(|(m, c)| c.map(|c| (m, c)))
            .flat_map(|(m, c)| vp.objectives[m].pieces.iter().map(move |f| (f, c)))
            .map(|(f, c)| (f, f(&z) - c))
            .max_by(|a, b| a.1.total_cmp(&b.1));
        let Some((f, excess)) = worst else { break };
        if excess <= 0.0 {
            break;
        }
        let target = excess + 1e-15 * (1.0 + f(&z).abs());
        let grad: Vec<f64> = (0..z.len())
            .map(|i| {
                let h = 1e-7 * (1.0 + z[i].abs());
                let mut up = z.clone();
                let mut dn = z.clone();
                up[i] += h;
                dn[i] -= h;
                (f(&up) - f(&dn)) / (2.0 * h)
            })
            .collect();
        let norm2: f64 = grad.iter().map(|g| g * g).sum();
        if !(norm2 > 0.0) {
            break;
        }
        for (i, g) in grad.iter().enumerate() {
            z[i] = (z[i] - target * g / norm2).clamp(vp.lower[i], vp.upper[i]);
        }
    }
    if cap_violation(vp, caps, &z) <= 0.0 && vp.max_violation(&z) <= vp.max_violation(d).max(feas_tol) {
        z
    } else {
        d.to_vec()
    }
}

fn front_from_grid(
    vp: &VectorProblem,
    free: usize,
    grid: &[Vec<Option<f64>>],
    cfg: &SolverConfig,
    anchors: Anchors,
) -> Result<ParetoFront> {
    let m_count = vp.n_objectives();
    let results: Vec<(Scalarization, Result<ScalarOutcome>)> = grid
        .par_iter()
        .map(|caps| {
            let mut caps = caps.clone();
            caps[free] = None;
            let mut weights = vec![0.0; m_count];
            weights[free] = 1.0;
            let scal = Scalarization::EpsilonConstraint {
                free,
                eps: caps.clone(),
            };
            let spec = ScalarSpec { weights, caps };
            let outcome = solve_scalarized(vp, &spec, cfg, &anchors.minimizers).map(|mut o| {
                let restored = restore_caps(vp, &spec.caps, &o.decision, cfg.feas_tol);
                if restored != o.decision {
                    o.objectives = vp.evaluate(&restored);
                    o.decision = restored;
                }
                o
            });
            (scal, outcome)
        })
        .collect();

    let mut evaluations = anchors.evaluations;
    let mut candidates = Vec::new();
    let mut skipped = Vec::new();
    for (scal, outcome) in results {
        match outcome {
            Ok(o) => {
                evaluations += o.evaluations;
                candidates.push(ParetoPoint {
                    decision: o.decision,
                    objectives: o.objectives,
                    scalarization: scal,
                    solver_status: o.status,
                    annotations: BTreeMap::new(),
                });
            }
            Err(e) => {
                log::info!("skipping {scal:?}: {e}");
                skipped.push(scal);
            }
        }
    }
    Ok(assemble_front(candidates, anchors.ideal, anchors.nadir_estimate, skipped, evaluations))
}

/// Filters dominated and duplicate candidates and sorts by objective 1.
pub(crate) fn assemble_front(
    candidates: Vec<ParetoPoint>,
    ideal: Vec<f64>,
    nadir_estimate: Vec<f64>,
    skipped: Vec<Scalarization>,
    evaluations: u64,
) -> ParetoFront {
    let m_count = ideal.len();
    let duplicate_tol: Vec<f64> = (0..m_count)
        .map(|m| {
            let (lo, hi) = candidates
                .iter()
                .map(|p| p.objectives[m])
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
            DUPLICATE_TOL * (hi - lo).max(1e-12)
        })
        .collect();
    let objs: Vec<&[f64]> = candidates.iter().map(|p| p.objectives.as_slice()).collect();
    let keep = nondominated_filter_with(&objs, DOMINANCE_TOL, &duplicate_tol);
    let mut points: Vec<ParetoPoint> = keep.into_iter().map(|i| candidates[i].clone()).collect();
    points.sort_by(|a, b| {
        a.objectives
            .iter()
            .zip(&b.objectives)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    ParetoFront {
        points,
        ideal,
        nadir_estimate,
        skipped,
        evaluations,
    }
}

/// Minimizes `sum_m w_m F_m`. `w` must be strictly positive; it is normalized
/// to sum to one.
pub fn weighted_sum_point(vp: &VectorProblem, w: &[f64], cfg: &SolverConfig) -> Result<ParetoPoint> {
    weighted_sum_point_from(vp, w, cfg, &[])
}

/// [`weighted_sum_point`] with extra warm starts tried before the
/// quasi-random ones.
pub fn weighted_sum_point_from(
    vp: &VectorProblem,
    w: &[f64],
    cfg: &SolverConfig,
    warm: &[Vec<f64>],
) -> Result<ParetoPoint> {
    vp.check()?;
    let weights = normalize_weights(w, vp.n_objectives())?;
    let outcome = solve_scalarized(
        vp,
        &ScalarSpec {
            weights: weights.clone(),
            caps: vec![None; vp.n_objectives()],
        },
        cfg,
        warm,
    )?;
    Ok(ParetoPoint {
        decision: outcome.decision,
        objectives: outcome.objectives,
        scalarization: Scalarization::WeightedSum { weights },
        solver_status: outcome.status,
        annotations: BTreeMap::new(),
    })
}

pub fn normalize_weights(w: &[f64], m: usize) -> Result<Vec<f64>> {
    if w.len() != m {
        return Err(Error::Dimension {
            what: "weight vector",
            expected: m,
            got: w.len(),
        });
    }
    if w.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::Config(format!("weights must be strictly positive, got {w:?}")));
    }
    let total: f64 = w.iter().sum();
    Ok(w.iter().map(|v| v / total).collect())
}

/// Weighted-sum front over several weight vectors.
pub fn weighted_sum_front(vp: &VectorProblem, weights: &[Vec<f64>], cfg: &SolverConfig) -> Result<ParetoFront> {
    vp.check()?;
    let results: Vec<Result<ParetoPoint>> = weights
        .par_iter()
        .map(|w| weighted_sum_point(vp, w, cfg))
        .collect();
    let m_count = vp.n_objectives();
    let mut candidates = Vec::new();
    let mut skipped = Vec::new();
    for (w, r) in weights.iter().zip(results) {
        match r {
            Ok(p) => candidates.push(p),
            Err(Error::Infeasible(msg)) => {
                log::info!("skipping weights {w:?}: {msg}");
                skipped.push(Scalarization::WeightedSum { weights: w.clone() });
            }
            Err(e) => return Err(e),
        }
    }
    let ideal = (0..m_count)
        .map(|m| candidates.iter().map(|p| p.objectives[m]).fold(f64::INFINITY, f64::min))
        .collect();
    let nadir = (0..m_count)
        .map(|m| candidates.iter().map(|p| p.objectives[m]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    Ok(assemble_front(candidates, ideal, nadir, skipped, 0))
}
