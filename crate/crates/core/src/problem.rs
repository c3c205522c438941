//! Problem definitions: decision variables split into here-and-now (HNV) and
//! wait-and-see (WSV) kinds, uncertain parameters, smooth objective and
//! constraint evaluators, and discrete scenario sets.
//!
//! Evaluators always receive the full variable vector in declaration order
//! together with the parameter vector in declaration order. The HNV/WSV
//! classification only changes how formulations lay out decision vectors, so a
//! variable can be reclassified without touching its evaluators.

use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarKind {
    #[serde(rename = "HNV", alias = "hnv")]
    Hnv,
    #[serde(rename = "WSV", alias = "wsv")]
    Wsv,
}

impl fmt::Display for VarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarKind::Hnv => f.write_str("HNV"),
            VarKind::Wsv => f.write_str("WSV"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariableSpec {
    pub name: String,
    pub kind: VarKind,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UncertainParam {
    pub name: String,
    pub nominal: f64,
    pub lower: f64,
    pub upper: f64,
}

impl UncertainParam {
    pub fn new(name: impl Into<String>, nominal: f64, lower: f64, upper: f64) -> Self {
        Self {
            name: name.into(),
            nominal,
            lower,
            upper,
        }
    }
}

/// `f(vars, params)` with both slices in declaration order.
pub type ModelFn = Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct Evaluator {
    pub name: String,
    pub func: ModelFn,
}

impl Evaluator {
    pub fn new<F>(name: impl Into<String>, func: F) -> Self
    where
        F: Fn(&[f64], &[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            func: Arc::new(func),
        }
    }

    #[inline]
    pub fn call(&self, vars: &[f64], params: &[f64]) -> f64 {
        (self.func)(vars, params)
    }
}

impl fmt::Debug for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Evaluator").field("name", &self.name).finish()
    }
}

/// A multicriteria problem. Constraints use the `g <= 0` convention.
#[derive(Debug, Clone)]
pub struct Problem {
    pub name: String,
    pub variables: Vec<VariableSpec>,
    pub uncertain: Vec<UncertainParam>,
    pub objectives: Vec<Evaluator>,
    pub constraints: Vec<Evaluator>,
}

impl Problem {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            variables: Vec::new(),
            uncertain: Vec::new(),
            objectives: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn variable(mut self, name: impl Into<String>, kind: VarKind, lower: f64, upper: f64) -> Self {
        self.variables.push(VariableSpec {
            name: name.into(),
            kind,
            lower,
            upper,
        });
        self
    }

    pub fn uncertain(mut self, name: impl Into<String>, nominal: f64, lower: f64, upper: f64) -> Self {
        self.uncertain.push(UncertainParam::new(name, nominal, lower, upper));
        self
    }

    pub fn objective<F>(mut self, name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&[f64], &[f64]) -> f64 + Send + Sync + 'static,
    {
        self.objectives.push(Evaluator::new(name, f));
        self
    }

    pub fn constraint<F>(mut self, name: impl Into<String>, g: F) -> Self
    where
        F: Fn(&[f64], &[f64]) -> f64 + Send + Sync + 'static,
    {
        self.constraints.push(Evaluator::new(name, g));
        self
    }

    /// Returns the problem if [`validate_problem`] reports nothing.
    pub fn validated(self) -> Result<Self> {
        let issues = validate_problem(&self);
        if issues.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidProblem(issues))
        }
    }

    pub fn n_objectives(&self) -> usize {
        self.objectives.len()
    }

    pub fn hnv_indices(&self) -> Vec<usize> {
        self.indices_of(VarKind::Hnv)
    }

    pub fn wsv_indices(&self) -> Vec<usize> {
        self.indices_of(VarKind::Wsv)
    }

    fn indices_of(&self, kind: VarKind) -> Vec<usize> {
        self.variables
            .iter()
            .enumerate()
            .filter(|(_, v)| v.kind == kind)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn hnv(&self) -> impl Iterator<Item = &VariableSpec> {
        self.variables.iter().filter(|v| v.kind == VarKind::Hnv)
    }

    pub fn wsv(&self) -> impl Iterator<Item = &VariableSpec> {
        self.variables.iter().filter(|v| v.kind == VarKind::Wsv)
    }

    /// Changes the kind of every variable of kind `from` to `to`.
    pub fn reclassify_all(mut self, from: VarKind, to: VarKind) -> Self {
        for v in &mut self.variables {
            if v.kind == from {
                v.kind = to;
            }
        }
        self
    }

    pub fn set_kind(&mut self, name: &str, kind: VarKind) -> Result<()> {
        let var = self
            .variables
            .iter_mut()
            .find(|v| v.name == name)
            .ok_or_else(|| Error::Config(format!("unknown variable {name}")))?;
        var.kind = kind;
        Ok(())
    }

    pub fn nominal_params(&self) -> Vec<f64> {
        self.uncertain.iter().map(|p| p.nominal).collect()
    }

    /// Merges HNV and WSV values back into declaration order.
    pub fn merge_vars(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.variables.len());
        merge_into(&self.variables, x, y, &mut out);
        out
    }

    /// Splits a declaration-ordered variable vector into `(x, y)`.
    pub fn split_vars(&self, vars: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let mut x = Vec::new();
        let mut y = Vec::new();
        for (spec, &v) in self.variables.iter().zip(vars) {
            match spec.kind {
                VarKind::Hnv => x.push(v),
                VarKind::Wsv => y.push(v),
            }
        }
        (x, y)
    }
}

pub(crate) fn merge_into(specs: &[VariableSpec], x: &[f64], y: &[f64], out: &mut Vec<f64>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    for spec in specs {
        match spec.kind {
            VarKind::Hnv => {
                out.push(x[i]);
                i += 1;
            }
            VarKind::Wsv => {
                out.push(y[j]);
                j += 1;
            }
        }
    }
}

/// Checks every structural invariant of `p` and returns one message per
/// violation. An empty list means the problem is well formed.
pub fn validate_problem(p: &Problem) -> Vec<String> {
    let mut issues = Vec::new();
    if p.objectives.len() < 2 {
        issues.push("M ≥ 2 required".to_string());
    }
    if p.variables.is_empty() {
        issues.push("at least one variable required".to_string());
    }
    for (i, v) in p.variables.iter().enumerate() {
        if !(v.lower.is_finite() && v.upper.is_finite()) {
            issues.push(format!("variable {}: bounds must be finite", v.name));
        } else if !(v.lower < v.upper) {
            issues.push(format!("variable {}: lower < upper violated", v.name));
        }
        if p.variables[..i].iter().any(|w| w.name == v.name) {
            issues.push(format!("variable {}: name not unique", v.name));
        }
    }
    for (i, u) in p.uncertain.iter().enumerate() {
        if !(u.lower <= u.nominal && u.nominal <= u.upper) || !u.nominal.is_finite() {
            issues.push(format!("uncertain {}: lower ≤ nominal ≤ upper violated", u.name));
        }
        if p.uncertain[..i].iter().any(|w| w.name == u.name) {
            issues.push(format!("uncertain {}: name not unique", u.name));
        }
    }
    for (kind, list) in [("objective", &p.objectives), ("constraint", &p.constraints)] {
        for (i, e) in list.iter().enumerate() {
            if list[..i].iter().any(|o| o.name == e.name) {
                issues.push(format!("{kind} {}: name not unique", e.name));
            }
        }
    }
    issues
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub id: usize,
    pub values: IndexMap<String, f64>,
    pub is_nominal: bool,
}

impl Scenario {
    /// Parameter values in the order of `params`.
    pub fn ordered_values(&self, params: &[UncertainParam]) -> Result<Vec<f64>> {
        params
            .iter()
            .map(|p| {
                self.values.get(&p.name).copied().ok_or_else(|| {
                    Error::Scenario(format!("scenario {} has no value for {}", self.id, p.name))
                })
            })
            .collect()
    }
}

/// Finite, ordered uncertainty set. The nominal scenario is always present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Scenario>", into = "Vec<Scenario>")]
pub struct ScenarioSet {
    scenarios: Vec<Scenario>,
}

impl ScenarioSet {
    pub fn new(scenarios: Vec<Scenario>) -> Result<Self> {
        let nominal = scenarios.iter().filter(|s| s.is_nominal).count();
        if nominal != 1 {
            return Err(Error::Scenario(format!(
                "exactly one nominal scenario required, found {nominal}"
            )));
        }
        for (i, s) in scenarios.iter().enumerate() {
            if s.id != i {
                return Err(Error::Scenario(format!(
                    "scenario ids must be dense from 0 (position {i} has id {})",
                    s.id
                )));
            }
        }
        Ok(Self { scenarios })
    }

    pub fn scenarios(&self) -> &[Scenario] {
        &self.scenarios
    }

    pub fn len(&self) -> usize {
        self.scenarios.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scenarios.is_empty()
    }

    pub fn nominal(&self) -> &Scenario {
        self.scenarios
            .iter()
            .find(|s| s.is_nominal)
            .expect("scenario set invariant: one nominal scenario")
    }

    pub fn nominal_index(&self) -> usize {
        self.nominal().id
    }

    pub fn get(&self, id: usize) -> Option<&Scenario> {
        self.scenarios.get(id)
    }

    /// Keeps only the nominal scenario.
    pub fn nominal_only(&self) -> ScenarioSet {
        let mut s = self.nominal().clone();
        s.id = 0;
        ScenarioSet { scenarios: vec![s] }
    }

    /// Row `k` holds the values of scenario `k` in the order of `params`, and
    /// every value is checked against its range.
    pub fn value_matrix(&self, params: &[UncertainParam]) -> Result<Vec<Vec<f64>>> {
        self.scenarios
            .iter()
            .map(|s| {
                if s.values.len() != params.len() {
                    return Err(Error::Scenario(format!(
                        "scenario {} assigns {} values, problem has {} uncertain parameters",
                        s.id,
                        s.values.len(),
                        params.len()
                    )));
                }
                let row = s.ordered_values(params)?;
                for (p, v) in params.iter().zip(&row) {
                    if !(p.lower <= *v && *v <= p.upper) {
                        return Err(Error::Scenario(format!(
                            "{} out of range in scenario {}",
                            p.name, s.id
                        )));
                    }
                }
                Ok(row)
            })
            .collect()
    }
}

impl TryFrom<Vec<Scenario>> for ScenarioSet {
    type Error = Error;

    fn try_from(value: Vec<Scenario>) -> Result<Self> {
        ScenarioSet::new(value)
    }
}

impl From<ScenarioSet> for Vec<Scenario> {
    fn from(value: ScenarioSet) -> Self {
        value.scenarios
    }
}

fn nominal_scenario(params: &[UncertainParam]) -> Scenario {
    Scenario {
        id: 0,
        values: params.iter().map(|p| (p.name.clone(), p.nominal)).collect(),
        is_nominal: true,
    }
}

/// One-at-a-time scenarios: the nominal point, then for each parameter its
/// lower and upper bound with every other parameter held nominal.
pub fn make_oat_scenarios(params: &[UncertainParam]) -> ScenarioSet {
    let nominal = nominal_scenario(params);
    let mut scenarios = Vec::with_capacity(2 * params.len() + 1);
    scenarios.push(nominal.clone());
    for p in params {
        for value in [p.lower, p.upper] {
            let mut s = nominal.clone();
            s.id = scenarios.len();
            s.is_nominal = false;
            s.values.insert(p.name.clone(), value);
            scenarios.push(s);
        }
    }
    ScenarioSet { scenarios }
}

/// Nominal scenario followed by user rows, in order. Rows equal to an earlier
/// scenario (exact value equality) are dropped.
pub fn make_explicit_scenarios(
    params: &[UncertainParam],
    rows: &[IndexMap<String, f64>],
) -> Result<ScenarioSet> {
    let nominal = nominal_scenario(params);
    let mut scenarios = vec![nominal];
    for (r, row) in rows.iter().enumerate() {
        if let Some(unknown) = row.keys().find(|k| !params.iter().any(|p| &p.name == *k)) {
            return Err(Error::Scenario(format!("unknown parameter {unknown} in row {r}")));
        }
        let mut values = IndexMap::with_capacity(params.len());
        for p in params {
            let v = *row
                .get(&p.name)
                .ok_or_else(|| Error::Scenario(format!("{} missing in row {r}", p.name)))?;
            if !(p.lower <= v && v <= p.upper) {
                return Err(Error::Scenario(format!("{} out of range in row {r}", p.name)));
            }
            values.insert(p.name.clone(), v);
        }
        if scenarios.iter().any(|s| s.values == values) {
            continue;
        }
        scenarios.push(Scenario {
            id: scenarios.len(),
            values,
            is_nominal: false,
        });
    }
    Ok(ScenarioSet { scenarios })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub objectives: Vec<f64>,
    pub constraint_values: Vec<f64>,
    pub max_violation: f64,
}

pub(crate) fn max_violation(g: &[f64]) -> f64 {
    g.iter().fold(0.0_f64, |acc, &v| acc.max(v))
}

/// Evaluates objectives and constraints at HNV values `x` and WSV values `y`
/// under scenario `s`.
pub fn evaluate(p: &Problem, x: &[f64], y: &[f64], s: &Scenario) -> Result<Evaluation> {
    let n_hnv = p.hnv().count();
    let n_wsv = p.wsv().count();
    if x.len() != n_hnv {
        return Err(Error::Dimension {
            what: "HNV values",
            expected: n_hnv,
            got: x.len(),
        });
    }
    if y.len() != n_wsv {
        return Err(Error::Dimension {
            what: "WSV values",
            expected: n_wsv,
            got: y.len(),
        });
    }
    let params = s.ordered_values(&p.uncertain)?;
    let vars = p.merge_vars(x, y);
    evaluate_vars(p, &vars, &params)
}

pub(crate) fn evaluate_vars(p: &Problem, vars: &[f64], params: &[f64]) -> Result<Evaluation> {
    let call = |e: &Evaluator| {
        let v = e.call(vars, params);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite {
                evaluator: e.name.clone(),
                vars: vars.to_vec(),
                params: params.to_vec(),
            })
        }
    };
    let objectives = p.objectives.iter().map(call).collect::<Result<Vec<_>>>()?;
    let constraint_values = p.constraints.iter().map(call).collect::<Result<Vec<_>>>()?;
    let max_violation = max_violation(&constraint_values);
    Ok(Evaluation {
        objectives,
        constraint_values,
        max_violation,
    })
}
