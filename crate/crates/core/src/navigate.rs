//! Read-only queries over a finished run: bound filtering with a
//! nearest-point lookup, and worst cases over scenario subsets.

use serde::{Deserialize, Serialize};

use crate::artifact::RunArtifact;
use crate::error::{Error, Result};
use crate::robust::worstcase_over_subset;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NavigateRequest {
    /// One entry per objective; `None` leaves that objective unbounded.
    pub upper_bounds: Vec<Option<f64>>,
    /// Point whose objectives are the target; `None` targets the ideal point.
    #[serde(default)]
    pub reference: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NavigateResponse {
    pub surviving: Vec<usize>,
    pub nearest: Option<usize>,
}

/// Points whose displayed objectives satisfy every bound, and the survivor
/// closest to the reference after scaling each objective to `[0, 1]` over the
/// front. Ties go to the lowest id.
pub fn navigate(artifact: &RunArtifact, req: &NavigateRequest) -> Result<NavigateResponse> {
    let m = artifact.objective_names.len();
    if req.upper_bounds.len() != m {
        return Err(Error::Dimension {
            what: "upper_bounds",
            expected: m,
            got: req.upper_bounds.len(),
        });
    }
    let objs = artifact.displayed();
    let surviving: Vec<usize> = artifact
        .points
        .iter()
        .filter(|p| {
            p.displayed_objectives
                .iter()
                .zip(&req.upper_bounds)
                .all(|(f, b)| b.is_none_or(|b| *f <= b))
        })
        .map(|p| p.id)
        .collect();

    let (lo, hi) = bounds_of(&objs, m);
    let scale = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .enumerate()
            .map(|(i, x)| {
                let span = hi[i] - lo[i];
                if span > 0.0 {
                    (x - lo[i]) / span
                } else {
                    0.0
                }
            })
            .collect()
    };
    let target = match req.reference {
        Some(id) => scale(&artifact.point(id)?.displayed_objectives),
        None => vec![0.0; m],
    };
    let nearest = surviving
        .iter()
        .map(|&id| {
            let d: f64 = scale(&artifact.points[id].displayed_objectives)
                .iter()
                .zip(&target)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            (id, d)
        })
        .fold(None, |best: Option<(usize, f64)>, (id, d)| match best {
            Some((_, bd)) if bd <= d => best,
            _ => Some((id, d)),
        })
        .map(|(id, _)| id);
    Ok(NavigateResponse { surviving, nearest })
}

fn bounds_of(objs: &[&[f64]], m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for o in objs {
        for i in 0..m {
            lo[i] = lo[i].min(o[i]);
            hi[i] = hi[i].max(o[i]);
        }
    }
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetPoint {
    pub id: usize,
    pub objectives: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetResponse {
    pub scenario_ids: Vec<usize>,
    pub points: Vec<SubsetPoint>,
    /// Set for adjustable runs: the values are upper bounds, since the
    /// per-scenario WSV are not re-optimized for the subset.
    pub upper_bound_only: bool,
}

/// Worst-case objectives of every point over a subset of the run's scenarios.
pub fn worstcase_subset(artifact: &RunArtifact, scenario_ids: &[usize]) -> Result<SubsetResponse> {
    if scenario_ids.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&bad) = scenario_ids.iter().find(|&&id| artifact.scenarios.get(id).is_none()) {
        return Err(Error::UnknownScenario(bad));
    }
    let points = artifact
        .points
        .iter()
        .map(|p| {
            Ok(SubsetPoint {
                id: p.id,
                objectives: worstcase_over_subset(&p.scenario_table, scenario_ids)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubsetResponse {
        scenario_ids: scenario_ids.to_vec(),
        points,
        upper_bound_only: artifact.method.is_adjustable(),
    })
}
