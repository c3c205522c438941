use nalgebra::{DMatrix, DVector};

use super::{NlpProblem, SmoothFn, SolverConfig};

/// Finite-difference gradient of `f` at `z`, staying inside `[lower, upper]`.
///
/// Central differences with step `step * max(1, |z_i|)`; next to a bound the
/// second-order one-sided formula is used instead. Returns the number of
/// function evaluations.
pub fn fd_gradient(
    f: &dyn Fn(&[f64]) -> f64,
    z: &[f64],
    lower: &[f64],
    upper: &[f64],
    step: f64,
    f0: Option<f64>,
    out: &mut [f64],
) -> u64 {
    let mut work = z.to_vec();
    let mut evals = 0;
    let mut base = f0;
    for i in 0..z.len() {
        let zi = z[i];
        let h = (step * zi.abs().max(1.0)).min(0.25 * (upper[i] - lower[i]));
        let mut at = |v: f64| {
            work[i] = v;
            let r = f(&work);
            work[i] = zi;
            r
        };
        out[i] = if zi - h >= lower[i] && zi + h <= upper[i] {
            evals += 2;
            (at(zi + h) - at(zi - h)) / (2.0 * h)
        } else {
            let c = match base {
                Some(c) => c,
                None => {
                    evals += 1;
                    let c = f(z);
                    base = Some(c);
                    c
                }
            };
            evals += 2;
            if zi - h < lower[i] {
                (-3.0 * c + 4.0 * at(zi + h) - at(zi + 2.0 * h)) / (2.0 * h)
            } else {
                (3.0 * c - 4.0 * at(zi - h) + at(zi - 2.0 * h)) / (2.0 * h)
            }
        };
    }
    evals
}

pub(crate) fn gradient_of(
    g: &SmoothFn,
    z: &[f64],
    nlp: &NlpProblem,
    step: f64,
    f0: Option<f64>,
    out: &mut [f64],
) -> u64 {
    match &g.gradient {
        Some(grad) => {
            grad(z, out);
            1
        }
        None => fd_gradient(&*g.value, z, &nlp.lower, &nlp.upper, step, f0, out),
    }
}

/// Non-negative least squares `min ||A x - b||, x >= 0` (Lawson–Hanson).
pub fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let n = a.ncols();
    let mut x = DVector::zeros(n);
    if n == 0 {
        return x;
    }
    let scale = a.amax().max(b.amax()).max(1.0);
    let tol = 1e-12 * scale * scale * (a.nrows().max(n) as f64);
    let mut passive = vec![false; n];
    for _ in 0..3 * n + 10 {
        let w = a.tr_mul(&(b - a * &x));
        let candidate = (0..n)
            .filter(|&j| !passive[j])
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        match candidate {
            Some(j) if w[j] > tol => passive[j] = true,
            _ => break,
        }
        for _ in 0..3 * n + 10 {
            let idx: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
            let sub = a.select_columns(&idx);
            let sol = sub
                .svd(true, true)
                .solve(b, 1e-13)
                .unwrap_or_else(|_| DVector::zeros(idx.len()));
            if sol.iter().all(|&v| v > 0.0) {
                x.fill(0.0);
                for (k, &j) in idx.iter().enumerate() {
                    x[j] = sol[k];
                }
                break;
            }
            let mut alpha = f64::INFINITY;
            for (k, &j) in idx.iter().enumerate() {
                if sol[k] <= 0.0 {
                    let denom = x[j] - sol[k];
                    if denom > 0.0 {
                        alpha = alpha.min(x[j] / denom);
                    } else {
                        alpha = 0.0;
                    }
                }
            }
            for (k, &j) in idx.iter().enumerate() {
                x[j] += alpha * (sol[k] - x[j]);
                if x[j] <= 1e-15 * scale {
                    x[j] = 0.0;
                    passive[j] = false;
                }
            }
            if idx.iter().all(|&j| !passive[j]) {
                break;
            }
        }
    }
    x
}

pub(crate) struct KktReport {
    pub max_violation: f64,
    pub stationarity: f64,
    pub evaluations: u64,
}

pub(crate) fn kkt_report(nlp: &NlpProblem, z: &[f64], cfg: &SolverConfig) -> KktReport {
    let n = nlp.dim();
    let mut evaluations = 1 + nlp.inequalities.len() as u64;
    let f0 = nlp.objective.eval(z);
    let g_vals: Vec<f64> = nlp.inequalities.iter().map(|g| g.eval(z)).collect();
    let max_violation = g_vals
        .iter()
        .fold(0.0_f64, |acc, &v| if v.is_nan() { f64::INFINITY } else { acc.max(v) });
    if !f0.is_finite() {
        return KktReport {
            max_violation,
            stationarity: f64::INFINITY,
            evaluations,
        };
    }

    let mut grad_f = vec![0.0; n];
    evaluations += gradient_of(&nlp.objective, z, nlp, cfg.fd_step, Some(f0), &mut grad_f);

    let mut active_grads: Vec<Vec<f64>> = Vec::new();
    for (g, &v) in nlp.inequalities.iter().zip(&g_vals) {
        let mut grad = vec![0.0; n];
        evaluations += gradient_of(g, z, nlp, cfg.fd_step, Some(v), &mut grad);
        let norm = grad.iter().fold(0.0_f64, |a, b| a.max(b.abs()));
        let activity = (100.0 * cfg.feas_tol).max(1e-6 * (1.0 + norm));
        if v >= -activity {
            active_grads.push(grad);
        }
    }

    let at_bound = |i: usize| {
        let span = nlp.upper[i] - nlp.lower[i];
        z[i] <= nlp.lower[i] + 1e-12 * span || z[i] >= nlp.upper[i] - 1e-12 * span
    };
    let free: Vec<usize> = (0..n).filter(|&i| !at_bound(i)).collect();

    let mut multipliers = DVector::zeros(active_grads.len());
    if !active_grads.is_empty() && !free.is_empty() {
        let a = DMatrix::from_fn(free.len(), active_grads.len(), |r, c| active_grads[c][free[r]]);
        let b = DVector::from_iterator(free.len(), free.iter().map(|&i| -grad_f[i]));
        multipliers = nnls(&a, &b);
    }

    let mut stationarity = 0.0_f64;
    for i in 0..n {
        let gi = grad_f[i]
            + active_grads
                .iter()
                .zip(multipliers.iter())
                .map(|(g, l)| l * g[i])
                .sum::<f64>();
        let r = z[i] - (z[i] - gi).clamp(nlp.lower[i], nlp.upper[i]);
        stationarity = stationarity.max(r.abs());
    }
    KktReport {
        max_violation,
        stationarity,
        evaluations,
    }
}

/// Feasibility residual `max(0, max_j g_j(z))` and the projected-gradient
/// stationarity residual of the Lagrangian, with multipliers for nearly active
/// constraints estimated by non-negative least squares.
pub fn check_kkt(nlp: &NlpProblem, z: &[f64], cfg: &SolverConfig) -> (f64, f64) {
    let r = kkt_report(nlp, z, cfg);
    (r.max_violation, r.stationarity)
}
