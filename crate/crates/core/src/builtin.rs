//! Built-in example problems: a one-variable toy with an additive uncertain
//! shift, and a shortcut surrogate of a two-product distillation column.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{evaluate_vars, Problem, ScenarioSet, UncertainParam, VarKind, VariableSpec};
use crate::sequence;

pub const PROBLEM_IDS: [&str; 2] = ["toy", "column"];

/// `f1 = 1 - cos t + u`, `f2 = 1 - sin t - u` with `t in [0, pi/2]` and
/// `u in [-0.1, 0.1]`.
pub fn toy(kind: VarKind) -> Problem {
    Problem::new("toy")
        .variable("t", kind, 0.0, FRAC_PI_2)
        .uncertain("u", 0.0, -0.1, 0.1)
        .objective("f1", |v, u| 1.0 - v[0].cos() + u[0])
        .objective("f2", |v, u| 1.0 - v[0].sin() - u[0])
}

/// Frozen constants of the column surrogate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ColumnConstants {
    pub rmin_base: f64,
    pub rmin_purity_slope: f64,
    pub purity_ref: f64,
    pub reflux_margin: f64,
    pub stage_base: f64,
    pub stage_purity_slope: f64,
    pub feed_ratio: f64,
    pub feed_penalty: f64,
    pub capacity_coeff: f64,
    pub duty_coeff: f64,
    pub load_scale: f64,
    pub reboiler_coeff: f64,
    pub condenser_duty_fraction: f64,
    pub condenser_coeff: f64,
    pub capex_stage: f64,
    pub capex_diameter_exp: f64,
    pub capex_area: f64,
    pub capex_area_exp: f64,
    pub capex_shell: f64,
    pub opex_coeff: f64,
    /// Below this reflux excess the `1 / excess` term continues linearly.
    pub excess_floor: f64,
}

impl Default for ColumnConstants {
    fn default() -> Self {
        Self {
            rmin_base: 0.5,
            rmin_purity_slope: 2.0,
            purity_ref: 0.8,
            reflux_margin: 0.05,
            stage_base: 8.0,
            stage_purity_slope: 5.0,
            feed_ratio: 0.15,
            feed_penalty: 1.2,
            capacity_coeff: 2.0,
            duty_coeff: 0.1,
            load_scale: 8000.0,
            reboiler_coeff: 5.0,
            condenser_duty_fraction: 0.9,
            condenser_coeff: 4.5,
            capex_stage: 50.0,
            capex_diameter_exp: 1.5,
            capex_area: 10.0,
            capex_area_exp: 0.6,
            capex_shell: 2000.0,
            opex_coeff: 1000.0,
            excess_floor: 0.025,
        }
    }
}

impl ColumnConstants {
    pub fn rmin(&self, w: f64, f12: f64) -> f64 {
        self.rmin_base * f12 * (1.0 + self.rmin_purity_slope * (w - self.purity_ref))
    }

    fn inverse_excess(&self, excess: f64) -> f64 {
        let e0 = self.excess_floor;
        if excess >= e0 {
            1.0 / excess
        } else {
            1.0 / e0 - (excess - e0) / (e0 * e0)
        }
    }

    pub fn effective_stages(&self, n: f64, nf: f64) -> f64 {
        let r = nf / n - self.feed_ratio;
        n * (1.0 - self.feed_penalty * r * r)
    }

    fn to_map(self) -> IndexMap<String, f64> {
        match serde_json::to_value(self) {
            Ok(serde_json::Value::Object(m)) => m.into_iter().filter_map(|(k, v)| v.as_f64().map(|f| (k, f))).collect(),
            _ => IndexMap::new(),
        }
    }
}

/// Column surrogate with default constants and bounds.
pub fn column() -> Problem {
    column_with(ColumnConstants::default())
}

/// Column surrogate. HNV: stages `N`, feed stage `Nf`, diameter `D`,
/// reboiler and condenser areas `Ar`, `Ac`. WSV: reflux ratio `RV`, specific
/// reboiler duty `Qr`. Uncertain: load `l`, feed purity `w_MF`, activity
/// prefactor `F12`.
pub fn column_with(c: ColumnConstants) -> Problem {
    Problem::new("column")
        .variable("N", VarKind::Hnv, 10.0, 150.0)
        .variable("Nf", VarKind::Hnv, 3.0, 40.0)
        .variable("D", VarKind::Hnv, 0.8, 2.0)
        .variable("Ar", VarKind::Hnv, 50.0, 1000.0)
        .variable("Ac", VarKind::Hnv, 50.0, 1000.0)
        .variable("RV", VarKind::Wsv, 0.5, 2.0)
        .variable("Qr", VarKind::Wsv, 0.0625, 0.375)
        .uncertain("l", 1.0, 0.6, 1.2)
        .uncertain("w_MF", 0.8, 0.78, 0.82)
        .uncertain("F12", 1.0, 0.9, 1.1)
        .objective("capex", move |v, _| {
            let (n, d, ar, ac) = (v[0], v[2], v[3], v[4]);
            c.capex_stage * n * d.powf(c.capex_diameter_exp)
                + c.capex_area * (ar.powf(c.capex_area_exp) + ac.powf(c.capex_area_exp))
                + c.capex_shell * d * d
        })
        .objective("opex", move |v, u| c.opex_coeff * v[6] * u[0])
        .constraint("separability", move |v, u| c.rmin(u[1], u[2]) + c.reflux_margin - v[5])
        .constraint("stages", move |v, u| {
            let excess = v[5] - c.rmin(u[1], u[2]);
            c.stage_base * u[2] * (1.0 + c.stage_purity_slope * (u[1] - c.purity_ref)) * (1.0 + c.inverse_excess(excess))
                - c.effective_stages(v[0], v[1])
        })
        .constraint("capacity", move |v, u| u[0] * (1.0 + v[5]) - c.capacity_coeff * v[2] * v[2])
        .constraint("duty", move |v, _| c.duty_coeff * (1.0 + v[5]) - v[6])
        .constraint("reboiler_area", move |v, u| v[6] * u[0] * c.load_scale - c.reboiler_coeff * v[3])
        .constraint("condenser_area", move |v, u| {
            c.condenser_duty_fraction * v[6] * u[0] * c.load_scale - c.condenser_coeff * v[4]
        })
}

/// Caller adjustments to a built-in problem.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProblemOverrides {
    /// Constants table entries by name (column only).
    pub constants: BTreeMap<String, f64>,
    /// `[lower, upper]` for variables or uncertain parameters.
    pub bounds: BTreeMap<String, [f64; 2]>,
    /// Nominal values of uncertain parameters.
    pub nominal: BTreeMap<String, f64>,
    /// Variable kinds.
    pub kinds: BTreeMap<String, VarKind>,
}

impl ProblemOverrides {
    pub fn is_empty(&self) -> bool {
        self.constants.is_empty() && self.bounds.is_empty() && self.nominal.is_empty() && self.kinds.is_empty()
    }
}

fn unknown_id(id: &str) -> Error {
    Error::Config(format!("unknown problem id {id:?}; valid ids: {}", PROBLEM_IDS.join(", ")))
}

/// Builds a built-in problem by id with overrides applied. The toy's `t` is a
/// WSV unless overridden.
pub fn build(id: &str, overrides: &ProblemOverrides) -> Result<Problem> {
    let mut p = match id {
        "toy" => {
            if let Some(name) = overrides.constants.keys().next() {
                return Err(Error::Config(format!("toy has no constant {name:?}")));
            }
            toy(VarKind::Wsv)
        }
        "column" => {
            let mut map = serde_json::Map::new();
            for (k, v) in &overrides.constants {
                map.insert(k.clone(), serde_json::json!(v));
            }
            let c: ColumnConstants = serde_json::from_value(serde_json::Value::Object(map))
                .map_err(|e| Error::Config(format!("column constants: {e}")))?;
            column_with(c)
        }
        other => return Err(unknown_id(other)),
    };
    for (name, [lo, hi]) in &overrides.bounds {
        if let Some(v) = p.variables.iter_mut().find(|v| &v.name == name) {
            v.lower = *lo;
            v.upper = *hi;
        } else if let Some(u) = p.uncertain.iter_mut().find(|u| &u.name == name) {
            u.lower = *lo;
            u.upper = *hi;
        } else {
            return Err(Error::Config(format!("bounds override: {id} has no variable or parameter {name:?}")));
        }
    }
    for (name, value) in &overrides.nominal {
        let u = p
            .uncertain
            .iter_mut()
            .find(|u| &u.name == name)
            .ok_or_else(|| Error::Config(format!("nominal override: {id} has no uncertain parameter {name:?}")))?;
        u.nominal = *value;
    }
    for (name, kind) in &overrides.kinds {
        p.set_kind(name, *kind)?;
    }
    p.validated()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverrideSchema {
    /// Constant names with their default values.
    pub constants: IndexMap<String, f64>,
    /// Names accepted by the `bounds` override.
    pub bounds: Vec<String>,
    /// Names accepted by the `nominal` override.
    pub nominal: Vec<String>,
    /// Names accepted by the `kinds` override.
    pub kinds: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemDescriptor {
    pub id: String,
    pub description: String,
    pub variables: Vec<VariableSpec>,
    pub uncertain: Vec<UncertainParam>,
    pub objectives: Vec<String>,
    pub constraints: Vec<String>,
    pub override_schema: OverrideSchema,
}

pub fn describe(p: &Problem, id: &str, description: &str, constants: IndexMap<String, f64>) -> ProblemDescriptor {
    ProblemDescriptor {
        id: id.to_string(),
        description: description.to_string(),
        variables: p.variables.clone(),
        uncertain: p.uncertain.clone(),
        objectives: p.objectives.iter().map(|e| e.name.clone()).collect(),
        constraints: p.constraints.iter().map(|e| e.name.clone()).collect(),
        override_schema: OverrideSchema {
            constants,
            bounds: p
                .variables
                .iter()
                .map(|v| v.name.clone())
                .chain(p.uncertain.iter().map(|u| u.name.clone()))
                .collect(),
            nominal: p.uncertain.iter().map(|u| u.name.clone()).collect(),
            kinds: p.variables.iter().map(|v| v.name.clone()).collect(),
        },
    }
}

/// Descriptors of all built-in problems, in [`PROBLEM_IDS`] order.
pub fn descriptors() -> Vec<ProblemDescriptor> {
    vec![
        describe(
            &toy(VarKind::Wsv),
            "toy",
            "quarter-circle trade-off shifted by an additive uncertain parameter",
            IndexMap::new(),
        ),
        describe(
            &column(),
            "column",
            "shortcut surrogate of a two-product distillation column, CAPEX vs OPEX",
            ColumnConstants::default().to_map(),
        ),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub samples: usize,
    pub feasible: usize,
    pub fraction: f64,
    /// First feasible sample, variables in declaration order.
    pub witness: Option<Vec<f64>>,
}

/// Fraction of quasi-random points of the variable box that satisfy every
/// constraint under every scenario of `ss` with one fixed decision.
pub fn feasibility_probe(p: &Problem, ss: &ScenarioSet, n_samples: usize, seed: u64) -> Result<ProbeReport> {
    if n_samples == 0 {
        return Err(Error::Config("n_samples must be ≥ 1".into()));
    }
    let lower: Vec<f64> = p.variables.iter().map(|v| v.lower).collect();
    let upper: Vec<f64> = p.variables.iter().map(|v| v.upper).collect();
    feasibility_at(p, ss, &sequence::box_points(&lower, &upper, n_samples, seed))
}

/// [`feasibility_probe`] over caller-supplied points.
pub fn feasibility_at(p: &Problem, ss: &ScenarioSet, points: &[Vec<f64>]) -> Result<ProbeReport> {
    let params = ss.value_matrix(&p.uncertain)?;
    let mut feasible = 0;
    let mut witness = None;
    for vars in points {
        let mut ok = true;
        for u in &params {
            if evaluate_vars(p, vars, u)?.max_violation > 0.0 {
                ok = false;
                break;
            }
        }
        if ok {
            feasible += 1;
            witness.get_or_insert_with(|| vars.clone());
        }
    }
    Ok(ProbeReport {
        samples: points.len(),
        feasible,
        fraction: feasible as f64 / points.len().max(1) as f64,
        witness,
    })
}
