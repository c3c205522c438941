//! Side-by-side comparison of run artifacts of the same problem.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::artifact::RunArtifact;
use crate::error::{Error, Result};
use crate::pareto::{dominates_unchecked, DOMINANCE_TOL};
use crate::robust::{interpolated_gaps, Method};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub label: String,
    pub run_id: String,
    pub method: Method,
    pub points: usize,
    /// Per objective, mean scenario range over the run's points.
    pub mean_range: Vec<f64>,
    /// Per objective, mean scenario standard deviation over the run's points.
    pub mean_std: Vec<f64>,
    /// Per objective, mean and max cost-of-robustness gap (robust runs only).
    pub mean_gap: Option<Vec<f64>>,
    pub max_gap: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairStats {
    pub a: String,
    pub b: String,
    /// Points of `a` strictly dominated by at least one point of `b`.
    pub dominated: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRow {
    pub run: String,
    pub method: Method,
    pub point_id: usize,
    pub displayed: Vec<f64>,
    pub nominal: Vec<f64>,
    pub gaps: Option<Vec<f64>>,
    /// Gaps against the first nominal run by linear interpolation.
    pub interpolated_gaps: Vec<Option<f64>>,
    pub range: Vec<f64>,
    pub std: Vec<f64>,
    /// Labels of the runs with a point that strictly dominates this one.
    pub dominated_by: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub problem: String,
    pub objective_names: Vec<String>,
    pub runs: Vec<RunSummary>,
    pub pairs: Vec<PairStats>,
    pub rows: Vec<PointRow>,
}

fn mean_columns(rows: impl Iterator<Item = Vec<f64>>, m: usize) -> Vec<f64> {
    let mut sum = vec![0.0; m];
    let mut n = 0usize;
    for r in rows {
        for (s, v) in sum.iter_mut().zip(&r) {
            *s += v;
        }
        n += 1;
    }
    sum.into_iter().map(|s| if n > 0 { s / n as f64 } else { 0.0 }).collect()
}

/// Compares labelled artifacts on their displayed objectives. All artifacts
/// must share the problem and the objective count.
pub fn compare(runs: &[(String, RunArtifact)]) -> Result<CompareReport> {
    let Some((_, first)) = runs.first() else {
        return Err(Error::Config("compare needs at least one artifact".into()));
    };
    let m = first.objective_names.len();
    for (label, a) in runs {
        if a.problem.id != first.problem.id || a.objective_names.len() != m {
            return Err(Error::Config(format!(
                "{label}: problem {} with {} objectives does not match {} with {m}",
                a.problem.id,
                a.objective_names.len(),
                first.problem.id
            )));
        }
    }

    let nominal_front: Option<Vec<Vec<f64>>> = runs
        .iter()
        .find(|(_, a)| a.method == Method::Nominal)
        .map(|(_, a)| a.points.iter().map(|p| p.nominal_objectives.clone()).collect());

    let summaries = runs
        .iter()
        .map(|(label, a)| {
            let gaps: Vec<Vec<f64>> = a
                .points
                .iter()
                .filter_map(|p| p.cost_of_robustness.as_ref().map(|c| c.gaps.clone()))
                .collect();
            let has_gaps = !gaps.is_empty();
            RunSummary {
                label: label.clone(),
                run_id: a.run_id.clone(),
                method: a.method,
                points: a.points.len(),
                mean_range: mean_columns(a.points.iter().map(|p| p.scatter.range.clone()), m),
                mean_std: mean_columns(a.points.iter().map(|p| p.scatter.std.clone()), m),
                mean_gap: has_gaps.then(|| mean_columns(gaps.iter().cloned(), m)),
                max_gap: has_gaps.then(|| {
                    (0..m)
                        .map(|i| gaps.iter().map(|g| g[i]).fold(f64::NEG_INFINITY, f64::max))
                        .collect()
                }),
            }
        })
        .collect();

    let dominated_by = |obj: &[f64], b: &RunArtifact| {
        b.points
            .iter()
            .any(|q| dominates_unchecked(&q.displayed_objectives, obj, DOMINANCE_TOL))
    };
    let mut pairs = Vec::new();
    for (i, (la, a)) in runs.iter().enumerate() {
        for (j, (lb, b)) in runs.iter().enumerate() {
            if i == j {
                continue;
            }
            pairs.push(PairStats {
                a: la.clone(),
                b: lb.clone(),
                dominated: a.points.iter().filter(|p| dominated_by(&p.displayed_objectives, b)).count(),
                total: a.points.len(),
            });
        }
    }

    let mut rows = Vec::new();
    for (label, a) in runs {
        for p in &a.points {
            rows.push(PointRow {
                run: label.clone(),
                method: a.method,
                point_id: p.id,
                displayed: p.displayed_objectives.clone(),
                nominal: p.nominal_objectives.clone(),
                gaps: p.cost_of_robustness.as_ref().map(|c| c.gaps.clone()),
                interpolated_gaps: match (&nominal_front, a.method) {
                    (Some(front), method) if method != Method::Nominal => interpolated_gaps(&p.nominal_objectives, front),
                    _ => vec![None; m],
                },
                range: p.scatter.range.clone(),
                std: p.scatter.std.clone(),
                dominated_by: runs
                    .iter()
                    .filter(|(other, _)| other != label)
                    .filter(|(_, b)| dominated_by(&p.displayed_objectives, b))
                    .map(|(other, _)| other.clone())
                    .collect(),
            });
        }
    }

    Ok(CompareReport {
        problem: first.problem.id.clone(),
        objective_names: first.objective_names.clone(),
        runs: summaries,
        pairs,
        rows,
    })
}

fn cell(v: f64) -> String {
    format!("{v}")
}

impl CompareReport {
    /// One row per point; `.` decimal separator, comma delimiter, header row.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["run".to_string(), "method".into(), "point_id".into()];
        for prefix in ["", "nominal_", "gap_", "interp_gap_", "range_", "std_"] {
            header.extend(self.objective_names.iter().map(|n| format!("{prefix}{n}")));
        }
        header.push("dominated_by".into());
        w.write_record(&header).map_err(csv_err)?;
        for r in &self.rows {
            let mut rec = vec![r.run.clone(), r.method.to_string(), r.point_id.to_string()];
            rec.extend(r.displayed.iter().map(|v| cell(*v)));
            rec.extend(r.nominal.iter().map(|v| cell(*v)));
            match &r.gaps {
                Some(g) => rec.extend(g.iter().map(|v| cell(*v))),
                None => rec.extend(std::iter::repeat_n(String::new(), self.objective_names.len())),
            }
            rec.extend(r.interpolated_gaps.iter().map(|v| v.map(cell).unwrap_or_default()));
            rec.extend(r.range.iter().map(|v| cell(*v)));
            rec.extend(r.std.iter().map(|v| cell(*v)));
            rec.push(r.dominated_by.join(";"));
            w.write_record(&rec).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "problem: {}", self.problem);
        let _ = writeln!(s, "objectives: {}", self.objective_names.join(", "));
        let _ = writeln!(s, "\nruns:");
        for r in &self.runs {
            let _ = writeln!(s, "  {} ({}, {} points)", r.label, r.method, r.points);
            let _ = writeln!(s, "    mean scenario range: {}", fmt_vec(&r.mean_range));
            let _ = writeln!(s, "    mean scenario std:   {}", fmt_vec(&r.mean_std));
            if let (Some(mean), Some(max)) = (&r.mean_gap, &r.max_gap) {
                let _ = writeln!(s, "    cost of robustness:  mean {} max {}", fmt_vec(mean), fmt_vec(max));
            }
        }
        let _ = writeln!(s, "\ndominance (points of A strictly dominated by B):");
        for p in &self.pairs {
            let _ = writeln!(s, "  {} by {}: {}/{}", p.a, p.b, p.dominated, p.total);
        }
        s
    }
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Config(format!("csv: {e}"))
}
