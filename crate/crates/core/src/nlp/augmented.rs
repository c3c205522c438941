//! Augmented-Lagrangian outer loop with a projected BFGS inner loop.
//!
//! Work happens in unit-box coordinates `s = (z - lower) / (upper - lower)`.
//! The objective and each constraint are scaled by the inverse of their
//! gradient magnitude at the start so that multipliers and penalties are of
//! order one regardless of the units of the model.

use super::kkt::{gradient_of, kkt_report};
use super::{NlpProblem, SolverConfig, SolverResult, SolverStatus};

const MAX_OUTER: usize = 40;
const MAX_BACKTRACKS: usize = 40;
const RHO_INIT: f64 = 10.0;
const RHO_MAX: f64 = 1e12;

struct Workspace<'a> {
    nlp: &'a NlpProblem,
    cfg: &'a SolverConfig,
    span: Vec<f64>,
    obj_scale: f64,
    con_scale: Vec<f64>,
    evaluations: u64,
    z: Vec<f64>,
}

/// State of the augmented Lagrangian at one point.
struct Sample {
    s: Vec<f64>,
    phi: f64,
    grad: Vec<f64>,
}

impl<'a> Workspace<'a> {
    fn to_z(&mut self, s: &[f64]) {
        for i in 0..s.len() {
            self.z[i] = self.nlp.lower[i] + self.span[i] * s[i];
        }
        // Exact bounds at the faces of the unit box.
        for i in 0..s.len() {
            if s[i] <= 0.0 {
                self.z[i] = self.nlp.lower[i];
            } else if s[i] >= 1.0 {
                self.z[i] = self.nlp.upper[i];
            }
        }
    }

    fn constraint_values(&mut self, s: &[f64]) -> (f64, Vec<f64>) {
        self.to_z(s);
        let nlp = self.nlp;
        self.evaluations += 1 + nlp.inequalities.len() as u64;
        let f = nlp.objective.eval(&self.z);
        let g = nlp.inequalities.iter().map(|g| g.eval(&self.z)).collect();
        (f, g)
    }

    fn phi_value(&self, f: f64, g: &[f64], lambda: &[f64], rho: f64) -> f64 {
        let mut phi = self.obj_scale * f;
        for ((gj, lj), cj) in g.iter().zip(lambda).zip(&self.con_scale) {
            let shifted = (lj + rho * cj * gj).max(0.0);
            phi += (shifted * shifted - lj * lj) / (2.0 * rho);
        }
        if phi.is_nan() {
            f64::INFINITY
        } else {
            phi
        }
    }

    fn sample(&mut self, s: Vec<f64>, lambda: &[f64], rho: f64, with_grad: bool) -> Sample {
        let (f, g) = self.constraint_values(&s);
        let phi = self.phi_value(f, &g, lambda, rho);
        let mut grad = Vec::new();
        if with_grad && phi.is_finite() {
            grad = self.phi_gradient(&s, f, &g, lambda, rho);
        }
        Sample { s, phi, grad }
    }

    fn phi_gradient(&mut self, s: &[f64], f: f64, g: &[f64], lambda: &[f64], rho: f64) -> Vec<f64> {
        let n = s.len();
        self.to_z(s);
        let z = self.z.clone();
        let nlp = self.nlp;
        let mut buf = vec![0.0; n];
        let mut grad = vec![0.0; n];
        self.evaluations += gradient_of(&nlp.objective, &z, nlp, self.cfg.fd_step, Some(f), &mut buf);
        for i in 0..n {
            grad[i] = self.obj_scale * buf[i];
        }
        for (j, con) in nlp.inequalities.iter().enumerate() {
            let weight = (lambda[j] + rho * self.con_scale[j] * g[j]).max(0.0);
            if weight == 0.0 {
                continue;
            }
            self.evaluations += gradient_of(con, &z, nlp, self.cfg.fd_step, Some(g[j]), &mut buf);
            for i in 0..n {
                grad[i] += weight * self.con_scale[j] * buf[i];
            }
        }
        for i in 0..n {
            grad[i] *= self.span[i];
        }
        grad
    }

    fn compute_scales(&mut self, s: &[f64]) {
        let n = s.len();
        self.to_z(s);
        let z = self.z.clone();
        let nlp = self.nlp;
        let mut buf = vec![0.0; n];
        let mut norm = |fun: &super::SmoothFn, evals: &mut u64| {
            *evals += gradient_of(fun, &z, nlp, self.cfg.fd_step, None, &mut buf);
            buf.iter()
                .zip(&self.span)
                .map(|(g, w)| (g * w).abs())
                .fold(0.0_f64, f64::max)
        };
        let mut evals = 0;
        let gf = norm(&nlp.objective, &mut evals);
        let scales: Vec<f64> = nlp
            .inequalities
            .iter()
            .map(|g| {
                let gn = norm(g, &mut evals);
                if gn.is_finite() {
                    1.0 / gn.max(1.0)
                } else {
                    1.0
                }
            })
            .collect();
        self.evaluations += evals;
        self.obj_scale = if gf.is_finite() { 1.0 / gf.max(1.0) } else { 1.0 };
        self.con_scale = scales;
    }
}

fn projected_residual(s: &[f64], grad: &[f64]) -> f64 {
    s.iter()
        .zip(grad)
        .map(|(si, gi)| (si - (si - gi).clamp(0.0, 1.0)).abs())
        .fold(0.0, f64::max)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dense inverse-Hessian approximation.
struct InverseHessian {
    n: usize,
    h: Vec<f64>,
    fresh: bool,
}

impl InverseHessian {
    fn identity(n: usize) -> Self {
        let mut h = vec![0.0; n * n];
        for i in 0..n {
            h[i * n + i] = 1.0;
        }
        Self { n, h, fresh: true }
    }

    fn reset(&mut self) {
        *self = Self::identity(self.n);
    }

    fn direction(&self, grad: &[f64], free: &[bool]) -> Vec<f64> {
        let n = self.n;
        let mut d = vec![0.0; n];
        for i in 0..n {
            if !free[i] {
                continue;
            }
            let mut acc = 0.0;
            for j in 0..n {
                if free[j] {
                    acc += self.h[i * n + j] * grad[j];
                }
            }
            d[i] = -acc;
        }
        d
    }

    fn update(&mut self, step: &[f64], dgrad: &[f64]) {
        let n = self.n;
        let sy = dot(step, dgrad);
        let yy = dot(dgrad, dgrad);
        let ss = dot(step, step);
        if !(sy > 1e-12 * (ss * yy).sqrt()) || !sy.is_finite() {
            return;
        }
        if self.fresh {
            let gamma = sy / yy;
            for v in self.h.iter_mut() {
                *v *= gamma;
            }
            self.fresh = false;
        }
        let r = 1.0 / sy;
        // hy = H y
        let hy: Vec<f64> = (0..n).map(|i| dot(&self.h[i * n..(i + 1) * n], dgrad)).collect();
        let yhy = dot(dgrad, &hy);
        for i in 0..n {
            for j in 0..n {
                self.h[i * n + j] += -r * (hy[i] * step[j] + step[i] * hy[j])
                    + (r * r * yhy + r) * step[i] * step[j];
            }
        }
    }
}

/// Minimizes the augmented Lagrangian over the unit box, starting at `cur`.
fn inner(ws: &mut Workspace<'_>, mut cur: Sample, lambda: &[f64], rho: f64, tol: f64) -> Sample {
    let n = cur.s.len();
    let mut hess = InverseHessian::identity(n);
    if cur.grad.is_empty() {
        return cur;
    }
    for _ in 0..ws.cfg.max_iter {
        if projected_residual(&cur.s, &cur.grad) <= tol {
            break;
        }
        let free: Vec<bool> = (0..n)
            .map(|i| !((cur.s[i] <= 0.0 && cur.grad[i] > 0.0) || (cur.s[i] >= 1.0 && cur.grad[i] < 0.0)))
            .collect();
        let mut accepted = None;
        for attempt in 0..2 {
            let mut d = hess.direction(&cur.grad, &free);
            if dot(&d, &cur.grad) >= 0.0 {
                hess.reset();
                d = hess.direction(&cur.grad, &free);
            }
            if hess.fresh {
                // Keep the first steepest-descent step inside a unit move.
                let big = d.iter().fold(0.0_f64, |a, b| a.max(b.abs()));
                if big > 1.0 {
                    d.iter_mut().for_each(|v| *v /= big);
                }
            }
            let mut alpha = 1.0;
            for _ in 0..MAX_BACKTRACKS {
                let trial: Vec<f64> = cur
                    .s
                    .iter()
                    .zip(&d)
                    .map(|(s, di)| (s + alpha * di).clamp(0.0, 1.0))
                    .collect();
                let moved: Vec<f64> = trial.iter().zip(&cur.s).map(|(a, b)| a - b).collect();
                let decrease = dot(&cur.grad, &moved);
                if moved.iter().all(|m| *m == 0.0) {
                    break;
                }
                let (f, g) = ws.constraint_values(&trial);
                let phi = ws.phi_value(f, &g, lambda, rho);
                if phi <= cur.phi + 1e-4 * decrease && decrease < 0.0 {
                    let grad = ws.phi_gradient(&trial, f, &g, lambda, rho);
                    accepted = Some(Sample { s: trial, phi, grad });
                    break;
                }
                alpha *= 0.5;
            }
            if accepted.is_some() || attempt == 1 || hess.fresh {
                break;
            }
            hess.reset();
        }
        let Some(next) = accepted else {
            break;
        };
        let step: Vec<f64> = next.s.iter().zip(&cur.s).map(|(a, b)| a - b).collect();
        let dgrad: Vec<f64> = next.grad.iter().zip(&cur.grad).map(|(a, b)| a - b).collect();
        hess.update(&step, &dgrad);
        cur = next;
    }
    cur
}

struct Candidate {
    z: Vec<f64>,
    f: f64,
}

pub(super) fn solve(nlp: &NlpProblem, start: &[f64], cfg: &SolverConfig) -> SolverResult {
    let n = nlp.dim();
    let span: Vec<f64> = nlp.lower.iter().zip(&nlp.upper).map(|(l, u)| u - l).collect();
    let s0: Vec<f64> = start
        .iter()
        .zip(nlp.lower.iter().zip(&span))
        .map(|(z, (l, w))| ((z - l) / w).clamp(0.0, 1.0))
        .collect();
    let m = nlp.inequalities.len();
    let mut ws = Workspace {
        nlp,
        cfg,
        span,
        obj_scale: 1.0,
        con_scale: vec![1.0; m],
        evaluations: 0,
        z: vec![0.0; n],
    };
    ws.compute_scales(&s0);

    let mut lambda = vec![0.0; m];
    let mut rho = RHO_INIT;
    let mut tol = 1e-3;
    let mut cur = ws.sample(s0.clone(), &lambda, rho, true);

    let mut feasible: Vec<Candidate> = Vec::new();
    let start_feasible;
    {
        ws.to_z(&s0);
        let z = ws.z.clone();
        let (f, g) = ws.constraint_values(&s0);
        if f.is_finite() && crate::problem::max_violation(&g) <= cfg.feas_tol {
            feasible.push(Candidate { z, f });
        }
        start_feasible = !feasible.is_empty();
    }

    let mut prev_measure = f64::INFINITY;
    let mut prev_f = f64::INFINITY;
    let mut quiet_rounds = 0;
    let mut converged_at: Option<usize> = None;

    for _ in 0..MAX_OUTER {
        cur = inner(&mut ws, cur, &lambda, rho, tol);
        let (f, g) = ws.constraint_values(&cur.s);
        let violation = g.iter().fold(0.0_f64, |a, &v| if v.is_nan() { f64::INFINITY } else { a.max(v) });

        let mut measure = 0.0_f64;
        for j in 0..m {
            let c = ws.con_scale[j] * g[j];
            measure = measure.max((-c).min(lambda[j] / rho).abs());
            lambda[j] = (lambda[j] + rho * c).max(0.0);
        }

        ws.to_z(&cur.s);
        let z = ws.z.clone();
        if violation <= cfg.feas_tol && f.is_finite() {
            feasible.push(Candidate { z: z.clone(), f });
            if tol <= 1e-6 {
                let report = kkt_report(nlp, &z, cfg);
                ws.evaluations += report.evaluations;
                if report.stationarity <= cfg.opt_tol {
                    converged_at = Some(feasible.len() - 1);
                    break;
                }
            }
            if (prev_f - f).abs() <= 1e-14 * (1.0 + f.abs()) && tol <= 1e-10 {
                quiet_rounds += 1;
                if quiet_rounds >= 2 {
                    break;
                }
            } else {
                quiet_rounds = 0;
            }
            prev_f = f;
        }

        if measure > 0.25 * prev_measure {
            rho = (rho * 10.0).min(RHO_MAX);
        }
        prev_measure = measure;
        tol = (tol * 0.1).max(1e-12);
        cur = ws.sample(cur.s, &lambda, rho, true);
        if !cur.phi.is_finite() {
            break;
        }
    }

    let chosen = match converged_at {
        Some(idx) => {
            // A converged point still loses to a strictly better feasible start.
            let best = &feasible[idx];
            let start_better =
                start_feasible && idx != 0 && feasible[0].f < best.f - 1e-14 * (1.0 + best.f.abs());
            if start_better { 0 } else { idx }
        }
        None => {
            let mut best: Option<usize> = None;
            for (i, c) in feasible.iter().enumerate() {
                let better = match best {
                    None => true,
                    Some(b) => c.f <= feasible[b].f,
                };
                if better {
                    best = Some(i);
                }
            }
            best.unwrap_or(usize::MAX)
        }
    };

    let z_star = if chosen == usize::MAX {
        ws.to_z(&cur.s);
        ws.z.clone()
    } else {
        feasible[chosen].z.clone()
    };
    let report = kkt_report(nlp, &z_star, cfg);
    ws.evaluations += report.evaluations + 1;
    let f_star = nlp.objective.eval(&z_star);
    let status = if report.max_violation > cfg.feas_tol || !f_star.is_finite() {
        SolverStatus::Infeasible
    } else if report.stationarity <= cfg.opt_tol {
        SolverStatus::Converged
    } else {
        SolverStatus::MaxIter
    };
    SolverResult {
        z_star,
        f_star,
        status,
        max_violation: report.max_violation,
        stationarity_residual: report.stationarity,
        evaluations: ws.evaluations,
    }
}
