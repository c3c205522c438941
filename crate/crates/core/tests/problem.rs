use std::f64::consts::FRAC_PI_2;

use indexmap::IndexMap;
use pareto_robust::builtin::{self, column, feasibility_at, feasibility_probe, toy, ColumnConstants, ProblemOverrides};
use pareto_robust::problem::{
    evaluate, make_explicit_scenarios, make_oat_scenarios, validate_problem, Scenario, UncertainParam, VarKind,
};
use pareto_robust::sequence::box_points;
use proptest::prelude::*;

fn scenario(u: f64) -> Scenario {
    Scenario {
        id: 0,
        values: IndexMap::from([("u".to_string(), u)]),
        is_nominal: true,
    }
}

#[test]
fn toy_matches_closed_forms() {
    let ts = box_points(&[0.0], &[FRAC_PI_2], 1000, 3);
    let us = box_points(&[-0.1], &[0.1], 1000, 4);
    for kind in [VarKind::Hnv, VarKind::Wsv] {
        let p = toy(kind);
        for (t, u) in ts.iter().zip(&us) {
            let (t, u) = (t[0], u[0]);
            let (x, y) = if kind == VarKind::Hnv { (vec![t], vec![]) } else { (vec![], vec![t]) };
            let e = evaluate(&p, &x, &y, &scenario(u)).unwrap();
            assert_eq!(e.objectives, vec![1.0 - t.cos() + u, 1.0 - t.sin() - u]);
            assert_eq!(e.max_violation, 0.0);
        }
    }
}

#[test]
fn toy_evaluation_examples() {
    let p = toy(VarKind::Wsv);
    let e = evaluate(&p, &[], &[FRAC_PI_2], &scenario(0.1)).unwrap();
    assert!((e.objectives[0] - 1.1).abs() < 1e-15 && (e.objectives[1] + 0.1).abs() < 1e-15);
    let e = evaluate(&p, &[], &[std::f64::consts::FRAC_PI_4], &scenario(0.1)).unwrap();
    assert!((e.objectives[0] - 0.39289).abs() < 1e-5 && (e.objectives[1] - 0.19289).abs() < 1e-5);
    assert!(evaluate(&p, &[0.1], &[], &scenario(0.0)).is_err());
    assert_eq!(toy(VarKind::Hnv).hnv().count(), 1);
    assert_eq!(toy(VarKind::Hnv).wsv().count(), 0);
}

#[test]
fn column_bounds_match_manifest() {
    let p = column();
    let mut manifest = String::new();
    for v in &p.variables {
        manifest += &format!("variable {} {} {} {}\n", v.name, v.kind, v.lower, v.upper);
    }
    for u in &p.uncertain {
        manifest += &format!("uncertain {} {} {} {}\n", u.name, u.lower, u.nominal, u.upper);
    }
    assert_eq!(manifest, include_str!("data/column_bounds.txt"));
    assert!(validate_problem(&p).is_empty());
}

#[test]
fn column_reference_point_is_nominally_feasible() {
    let p = column();
    let ss = make_oat_scenarios(&p.uncertain);
    let (x, y) = (vec![40.0, 6.0, 1.4, 400.0, 400.0], vec![1.0, 0.21]);
    let e = evaluate(&p, &x, &y, ss.nominal()).unwrap();
    assert!(e.max_violation <= 0.0, "{e:?}");
}

#[test]
fn column_low_reflux_violates_separability_at_the_hard_corner() {
    let p = column();
    let corner = Scenario {
        id: 0,
        values: IndexMap::from([("l".into(), 1.2), ("w_MF".into(), 0.82), ("F12".into(), 1.1)]),
        is_nominal: true,
    };
    let c = ColumnConstants::default();
    assert!((c.rmin(0.82, 1.1) - 0.572).abs() < 1e-9);
    let e = evaluate(&p, &[40.0, 6.0, 1.4, 400.0, 400.0], &[0.5, 0.21], &corner).unwrap();
    assert!(e.constraint_values[0] > 0.0, "{e:?}");
}

#[test]
fn column_probe_finds_feasible_designs() {
    let p = column();
    let ss = make_oat_scenarios(&p.uncertain);
    let r = feasibility_probe(&p, &ss, 10_000, 0).unwrap();
    assert!(r.feasible > 0 && r.fraction > 0.0);
    let witness = r.witness.expect("witness");
    let again = feasibility_at(&p, &ss, &[witness]).unwrap();
    assert_eq!(again.fraction, 1.0);

    let t = toy(VarKind::Wsv);
    let all = feasibility_probe(&t, &make_oat_scenarios(&t.uncertain), 100, 1).unwrap();
    assert_eq!(all.fraction, 1.0);
    assert!(feasibility_probe(&t, &make_oat_scenarios(&t.uncertain), 0, 1).is_err());
}

#[test]
fn column_objectives_are_monotone() {
    let p = column();
    let ss = make_oat_scenarios(&p.uncertain);
    let lower: Vec<f64> = p.variables.iter().map(|v| v.lower).collect();
    let upper: Vec<f64> = p.variables.iter().map(|v| v.upper).collect();
    let feasible: Vec<Vec<f64>> = box_points(&lower, &upper, 20_000, 9)
        .into_iter()
        .filter(|v| feasibility_at(&p, &ss, std::slice::from_ref(v)).unwrap().feasible == 1)
        .take(100)
        .collect();
    assert_eq!(feasible.len(), 100);
    let capex = &p.objectives[0];
    let opex = &p.objectives[1];
    let params = ss.nominal().ordered_values(&p.uncertain).unwrap();
    let bumped = |v: &[f64], i: usize| {
        let mut w = v.to_vec();
        w[i] += 1e-6 * (1.0 + w[i].abs());
        w
    };
    for v in &feasible {
        for i in [0, 2, 3, 4] {
            assert!(capex.call(&bumped(v, i), &params) > capex.call(v, &params), "capex in {i} at {v:?}");
        }
        assert!(opex.call(&bumped(v, 6), &params) > opex.call(v, &params));
        let mut heavier = params.clone();
        heavier[0] += 1e-6;
        assert!(opex.call(v, &heavier) > opex.call(v, &params));
    }
}

#[test]
fn overrides_and_unknown_ids() {
    let err = builtin::build("columnn", &ProblemOverrides::default()).unwrap_err();
    assert!(err.is_validation());
    let msg = err.to_string();
    assert!(msg.contains("toy") && msg.contains("column"), "{msg}");

    let mut o = ProblemOverrides::default();
    o.kinds.insert("t".into(), VarKind::Hnv);
    assert_eq!(builtin::build("toy", &o).unwrap().hnv().count(), 1);

    let mut o = ProblemOverrides::default();
    o.bounds.insert("D".into(), [0.9, 1.8]);
    o.constants.insert("opex_coeff".into(), 900.0);
    let p = builtin::build("column", &o).unwrap();
    let d = p.variables.iter().find(|v| v.name == "D").unwrap();
    assert_eq!((d.lower, d.upper), (0.9, 1.8));

    let mut o = ProblemOverrides::default();
    o.constants.insert("nope".into(), 1.0);
    assert!(builtin::build("column", &o).is_err());

    let ds = builtin::descriptors();
    assert_eq!(ds.iter().map(|d| d.id.as_str()).collect::<Vec<_>>(), ["toy", "column"]);
    let u = &ds[0].uncertain[0];
    assert_eq!((u.lower, u.nominal, u.upper), (-0.1, 0.0, 0.1));
    let text = serde_json::to_string(&ds).unwrap();
    let back: Vec<builtin::ProblemDescriptor> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, ds);
}

#[test]
fn explicit_rows_prepend_nominal_and_drop_duplicates() {
    let params = vec![UncertainParam::new("a", 0.0, -1.0, 1.0), UncertainParam::new("b", 1.0, 0.0, 2.0)];
    let row = |a: f64, b: f64| IndexMap::from([("a".to_string(), a), ("b".to_string(), b)]);
    let ss = make_explicit_scenarios(&params, &[row(0.5, 1.0), row(0.0, 1.0), row(0.5, 1.0), row(-1.0, 2.0)]).unwrap();
    assert_eq!(ss.len(), 3);
    assert!(ss.scenarios()[0].is_nominal);
    assert_eq!(ss.scenarios()[1].values, row(0.5, 1.0));
    assert_eq!(ss.scenarios()[2].id, 2);

    assert!(make_explicit_scenarios(&params, &[row(2.0, 1.0)]).is_err());
    assert!(make_explicit_scenarios(&params, &[IndexMap::from([("a".to_string(), 0.0)])]).is_err());
    let mut extra = row(0.0, 0.5);
    extra.insert("c".into(), 0.0);
    assert!(make_explicit_scenarios(&params, &[extra]).is_err());
}

#[test]
fn no_uncertainty_gives_single_nominal_scenario() {
    let ss = make_oat_scenarios(&[]);
    assert_eq!(ss.len(), 1);
    assert!(ss.nominal().values.is_empty());
}

fn params_strategy() -> impl Strategy<Value = Vec<UncertainParam>> {
    prop::collection::vec((-5.0f64..5.0, 0.01f64..3.0, 0.0f64..1.0), 0..6).prop_map(|v| {
        v.into_iter()
            .enumerate()
            .map(|(i, (lo, width, frac))| UncertainParam::new(format!("p{i}"), lo + frac * width, lo, lo + width))
            .collect()
    })
}

proptest! {
    #[test]
    fn oat_structure(params in params_strategy()) {
        let ss = make_oat_scenarios(&params);
        prop_assert_eq!(ss.len(), 2 * params.len() + 1);
        prop_assert!(ss.scenarios()[0].is_nominal);
        prop_assert_eq!(ss.scenarios().iter().filter(|s| s.is_nominal).count(), 1);
        let nominal = ss.nominal().ordered_values(&params).unwrap();
        for (k, s) in ss.scenarios().iter().enumerate().skip(1) {
            prop_assert_eq!(s.id, k);
            let vals = s.ordered_values(&params).unwrap();
            let changed: Vec<usize> = (0..params.len()).filter(|&i| vals[i] != nominal[i]).collect();
            let p = (k - 1) / 2;
            let want = if k % 2 == 1 { params[p].lower } else { params[p].upper };
            prop_assert_eq!(vals[p], want);
            prop_assert!(changed.iter().all(|&i| i == p));
        }
        prop_assert!(ss.value_matrix(&params).is_ok());
    }
}
