//! Smooth box- and inequality-constrained scalar minimization.
//!
//! Every front in this crate reduces to a sequence of [`NlpProblem`] solves.
//! [`solve`] runs an augmented-Lagrangian outer loop (PHR penalty for
//! `g(z) <= 0`) around a projected BFGS inner loop on the box. Box bounds are
//! enforced by projection, so iterates never leave the box. Gradients come from
//! central finite differences unless analytic ones are attached.

mod augmented;
mod kkt;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence;

pub use kkt::{check_kkt, fd_gradient, nnls};

pub type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
pub type GradientFn = Arc<dyn Fn(&[f64], &mut [f64]) + Send + Sync>;

/// A scalar function of the decision vector with an optional analytic gradient.
#[derive(Clone)]
pub struct SmoothFn {
    pub value: ScalarFn,
    pub gradient: Option<GradientFn>,
}

impl SmoothFn {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            value: Arc::new(f),
            gradient: None,
        }
    }

    pub fn with_gradient<G>(mut self, g: G) -> Self
    where
        G: Fn(&[f64], &mut [f64]) + Send + Sync + 'static,
    {
        self.gradient = Some(Arc::new(g));
        self
    }

    #[inline]
    pub fn eval(&self, z: &[f64]) -> f64 {
        (self.value)(z)
    }
}

impl fmt::Debug for SmoothFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothFn")
            .field("analytic_gradient", &self.gradient.is_some())
            .finish()
    }
}

#[derive(Debug, Clone)]
pub struct NlpProblem {
    lower: Vec<f64>,
    upper: Vec<f64>,
    objective: SmoothFn,
    inequalities: Vec<SmoothFn>,
}

impl NlpProblem {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, objective: SmoothFn) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::Dimension {
                what: "box bounds",
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::Config("NLP needs at least one variable".into()));
        }
        for (i, (l, u)) in lower.iter().zip(&upper).enumerate() {
            if !(l.is_finite() && u.is_finite() && l < u) {
                return Err(Error::Config(format!(
                    "box bound {i}: need finite lower < upper, got [{l}, {u}]"
                )));
            }
        }
        Ok(Self {
            lower,
            upper,
            objective,
            inequalities: Vec::new(),
        })
    }

    /// Adds `g(z) <= 0`.
    pub fn inequality(mut self, g: SmoothFn) -> Self {
        self.inequalities.push(g);
        self
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn objective(&self) -> &SmoothFn {
        &self.objective
    }

    pub fn inequalities(&self) -> &[SmoothFn] {
        &self.inequalities
    }

    pub fn project(&self, z: &mut [f64]) {
        for ((zi, l), u) in z.iter_mut().zip(&self.lower).zip(&self.upper) {
            *zi = zi.clamp(*l, *u);
        }
    }

    pub fn max_violation(&self, z: &[f64]) -> f64 {
        self.inequalities
            .iter()
            .map(|g| g.eval(z))
            .fold(0.0, |acc: f64, v| if v.is_nan() { f64::INFINITY } else { acc.max(v) })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub feas_tol: f64,
    pub opt_tol: f64,
    /// Inner quasi-Newton iterations allowed per augmented-Lagrangian round.
    pub max_iter: usize,
    pub multistart_count: usize,
    pub seed: u64,
    pub fd_step: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            feas_tol: 1e-8,
            opt_tol: 1e-8,
            max_iter: 500,
            multistart_count: 8,
            seed: 0,
            fd_step: 1e-6,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("feas_tol", self.feas_tol),
            ("opt_tol", self.opt_tol),
            ("fd_step", self.fd_step),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be > 0, got {v}")));
            }
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be ≥ 1".into()));
        }
        if self.multistart_count == 0 {
            return Err(Error::Config("multistart_count must be ≥ 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverStatus {
    Converged,
    MaxIter,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverResult {
    pub z_star: Vec<f64>,
    pub f_star: f64,
    pub status: SolverStatus,
    pub max_violation: f64,
    pub stationarity_residual: f64,
    /// Function evaluations spent (objective and constraints counted alike).
    pub evaluations: u64,
}

impl SolverResult {
    pub fn is_feasible(&self, cfg: &SolverConfig) -> bool {
        self.status != SolverStatus::Infeasible && self.max_violation <= cfg.feas_tol
    }
}

/// Local solve from `start` (projected into the box first).
pub fn solve(nlp: &NlpProblem, start: &[f64], cfg: &SolverConfig) -> SolverResult {
    assert_eq!(start.len(), nlp.dim(), "start dimension");
    augmented::solve(nlp, start, cfg)
}

/// `count` seeded quasi-random starting points in the box of `nlp`.
pub fn multistart_points(nlp: &NlpProblem, count: usize, seed: u64) -> Vec<Vec<f64>> {
    sequence::box_points(&nlp.lower, &nlp.upper, count, seed)
}

/// Solves from `cfg.multistart_count` quasi-random starts and keeps the best
/// feasible result.
pub fn multistart_solve(nlp: &NlpProblem, cfg: &SolverConfig) -> SolverResult {
    let starts = multistart_points(nlp, cfg.multistart_count, cfg.seed);
    multistart_solve_from(nlp, &starts, cfg)
}

/// Solves from each start in order. Returns the feasible result with the
/// smallest `f_star` (earliest start on ties); if none is feasible, the
/// result with the smallest violation, marked `Infeasible`.
pub fn multistart_solve_from(nlp: &NlpProblem, starts: &[Vec<f64>], cfg: &SolverConfig) -> SolverResult {
    assert!(!starts.is_empty(), "at least one start required");
    let mut best: Option<SolverResult> = None;
    let mut least_infeasible: Option<SolverResult> = None;
    let mut evaluations = 0;
    for start in starts {
        let r = solve(nlp, start, cfg);
        evaluations += r.evaluations;
        if r.is_feasible(cfg) {
            if best.as_ref().is_none_or(|b| r.f_star < b.f_star) {
                best = Some(r);
            }
        } else if least_infeasible
            .as_ref()
            .is_none_or(|b| r.max_violation < b.max_violation)
        {
            least_infeasible = Some(r);
        }
    }
    let mut out = best.or(least_infeasible).expect("non-empty starts");
    out.evaluations = evaluations;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    fn quadratic() -> NlpProblem {
        NlpProblem::new(vec![0.0], vec![3.0], SmoothFn::new(|z| (z[0] - 1.0).powi(2))).unwrap()
    }

    fn disk() -> NlpProblem {
        NlpProblem::new(vec![-2.0; 2], vec![2.0; 2], SmoothFn::new(|z| z[0] + z[1]))
            .unwrap()
            .inequality(SmoothFn::new(|z| z[0] * z[0] + z[1] * z[1] - 1.0))
    }

    #[test]
    fn unconstrained_quadratic() {
        let cfg = SolverConfig::default();
        let r = solve(&quadratic(), &[0.0], &cfg);
        assert_eq!(r.status, SolverStatus::Converged);
        assert!((r.z_star[0] - 1.0).abs() < 1e-7, "{r:?}");
        assert!(r.f_star < 1e-14);
    }

    #[test]
    fn disk_minimum() {
        let cfg = SolverConfig::default();
        let r = solve(&disk(), &[0.0, 0.0], &cfg);
        assert_eq!(r.status, SolverStatus::Converged, "{r:?}");
        let h = SQRT_2 / 2.0;
        assert!((r.z_star[0] + h).abs() < 1e-6 && (r.z_star[1] + h).abs() < 1e-6, "{r:?}");
        assert!((r.f_star + SQRT_2).abs() < 1e-8);
        assert!(r.max_violation <= cfg.feas_tol);
    }

    #[test]
    fn toy_epsilon_subproblem() {
        let cfg = SolverConfig::default();
        let eps = 0.29289;
        let nlp = NlpProblem::new(vec![0.0], vec![FRAC_PI_2], SmoothFn::new(|z| 1.0 - z[0].sin()))
            .unwrap()
            .inequality(SmoothFn::new(move |z| 1.0 - z[0].cos() - eps));
        let r = solve(&nlp, &[0.0], &cfg);
        assert_eq!(r.status, SolverStatus::Converged, "{r:?}");
        let t = (1.0 - eps).acos();
        assert!((r.z_star[0] - t).abs() < 1e-7);
        assert!((r.z_star[0] - FRAC_PI_4).abs() < 1e-4);
        assert!((r.f_star - (1.0 - t.sin())).abs() < 1e-7, "{r:?} {}", 1.0 - t.sin());
    }

    #[test]
    fn multistart_finds_global_cosine_minimum() {
        let nlp = NlpProblem::new(vec![0.0], vec![3.0], SmoothFn::new(|z| (5.0 * z[0]).cos())).unwrap();
        let r = multistart_solve(&nlp, &SolverConfig::default());
        assert!((r.f_star + 1.0).abs() < 1e-6, "{r:?}");
        let near = [PI / 5.0, 3.0 * PI / 5.0, PI]
            .iter()
            .any(|m| (r.z_star[0] - m).abs() < 1e-3);
        assert!(near, "{r:?}");
    }

    #[test]
    fn multistart_matches_single_solve_on_convex() {
        let cfg = SolverConfig::default();
        let single = solve(&disk(), &[0.5, -0.5], &cfg);
        let multi = multistart_solve(&disk(), &cfg);
        assert!((single.f_star - multi.f_star).abs() <= cfg.opt_tol);
    }

    #[test]
    fn multistart_is_deterministic() {
        let cfg = SolverConfig {
            seed: 42,
            ..Default::default()
        };
        let a = multistart_solve(&disk(), &cfg);
        let b = multistart_solve(&disk(), &cfg);
        assert_eq!(a, b);
        assert_eq!(a.f_star.to_bits(), b.f_star.to_bits());
    }

    #[test]
    fn infeasible_problem_is_reported() {
        let nlp = NlpProblem::new(vec![0.0], vec![1.0], SmoothFn::new(|z| z[0]))
            .unwrap()
            .inequality(SmoothFn::new(|z| 2.0 - z[0]));
        let r = multistart_solve(&nlp, &SolverConfig::default());
        assert_eq!(r.status, SolverStatus::Infeasible);
        assert!((r.max_violation - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_boxes_and_configs() {
        assert!(NlpProblem::new(vec![1.0], vec![1.0], SmoothFn::new(|_| 0.0)).is_err());
        assert!(NlpProblem::new(vec![0.0], vec![f64::INFINITY], SmoothFn::new(|_| 0.0)).is_err());
        let cfg = SolverConfig {
            feas_tol: 0.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        assert!(SolverConfig::default().validate().is_ok());
    }

    #[test]
    fn analytic_gradient_is_used() {
        let nlp = NlpProblem::new(
            vec![-3.0; 2],
            vec![3.0; 2],
            SmoothFn::new(|z| (z[0] - 1.0).powi(2) + 10.0 * (z[1] + 0.5).powi(2)).with_gradient(|z, g| {
                g[0] = 2.0 * (z[0] - 1.0);
                g[1] = 20.0 * (z[1] + 0.5);
            }),
        )
        .unwrap();
        let r = solve(&nlp, &[0.0, 0.0], &SolverConfig::default());
        assert_eq!(r.status, SolverStatus::Converged);
        assert!((r.z_star[0] - 1.0).abs() < 1e-8 && (r.z_star[1] + 0.5).abs() < 1e-8);
    }
}
