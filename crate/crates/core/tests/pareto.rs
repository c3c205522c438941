use std::f64::consts::{FRAC_PI_2, SQRT_2};

use pareto_robust::nlp::SolverConfig;
use pareto_robust::pareto::{
    anchor_points, dominates, epsilon_constraint_front, nondominated_filter, weighted_sum_front, weighted_sum_point,
    VectorProblem,
};
use proptest::prelude::*;

fn toy_nominal() -> VectorProblem {
    VectorProblem::new(vec![0.0], vec![FRAC_PI_2])
        .objective(|z| 1.0 - z[0].cos())
        .objective(|z| 1.0 - z[0].sin())
}

fn disk() -> VectorProblem {
    VectorProblem::new(vec![-2.0; 2], vec![2.0; 2])
        .objective(|z| z[0])
        .objective(|z| z[1])
        .inequality(|z| z[0] * z[0] + z[1] * z[1] - 1.0)
}

fn brute_force(points: &[Vec<f64>]) -> Vec<usize> {
    let dominated = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x <= y) && a != b;
    (0..points.len())
        .filter(|&i| {
            !points.iter().any(|q| dominated(q, &points[i])) && !points[..i].iter().any(|q| *q == points[i])
        })
        .collect()
}

#[test]
fn dominance_cases() {
    assert!(dominates(&[1.0, 2.0], &[1.0, 3.0], 0.0).unwrap());
    assert!(!dominates(&[1.0, 2.0], &[1.0, 2.0], 0.0).unwrap());
    assert!(!dominates(&[0.0, 3.0], &[1.0, 2.0], 0.0).unwrap());
    assert!(!dominates(&[1.0, 2.0], &[1.0, 2.0 + 1e-12], 1e-9).unwrap());
    assert!(dominates(&[1.0], &[1.0, 2.0], 0.0).is_err());
}

#[test]
fn filter_fixed_cases() {
    let empty: Vec<Vec<f64>> = Vec::new();
    assert!(nondominated_filter(&empty, 0.0).is_empty());
    let pts = vec![vec![1.0, 1.0], vec![0.0, 2.0], vec![2.0, 2.0], vec![1.0, 1.0], vec![2.0, 0.0]];
    assert_eq!(nondominated_filter(&pts, 0.0), vec![0, 1, 4]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn filter_matches_pairwise_oracle(points in prop::collection::vec(prop::collection::vec(0u8..6, 2), 0..60)) {
        let points: Vec<Vec<f64>> = points.into_iter().map(|p| p.into_iter().map(f64::from).collect()).collect();
        prop_assert_eq!(nondominated_filter(&points, 0.0), brute_force(&points));
    }

    #[test]
    fn filter_output_is_mutually_nondominated(points in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 3), 1..80)) {
        let kept = nondominated_filter(&points, 0.0);
        prop_assert!(!kept.is_empty());
        for &i in &kept {
            for &j in &kept {
                prop_assert!(!dominates(&points[i], &points[j], 0.0).unwrap());
            }
        }
    }
}

#[test]
fn toy_anchors() {
    let a = anchor_points(&toy_nominal(), &SolverConfig::default()).unwrap();
    for (v, want) in a.ideal.iter().zip([0.0, 0.0]) {
        assert!((v - want).abs() < 1e-9, "{a:?}");
    }
    for (v, want) in a.nadir_estimate.iter().zip([1.0, 1.0]) {
        assert!((v - want).abs() < 1e-6, "{a:?}");
    }
    assert!(a.minimizers[0][0].abs() < 1e-6);
    assert!((a.minimizers[1][0] - FRAC_PI_2).abs() < 1e-6);
}

#[test]
fn disk_anchors() {
    let a = anchor_points(&disk(), &SolverConfig::default()).unwrap();
    assert!((a.ideal[0] + 1.0).abs() < 1e-6 && (a.ideal[1] + 1.0).abs() < 1e-6, "{a:?}");
}

#[test]
fn toy_front_on_quarter_circle() {
    let vp = toy_nominal();
    let front = epsilon_constraint_front(&vp, 5, &SolverConfig::default()).unwrap();
    assert_eq!(front.points.len(), 5);
    for (i, p) in front.points.iter().enumerate() {
        let (f1, f2) = (p.objectives[0], p.objectives[1]);
        assert!(((1.0 - f1).powi(2) + (1.0 - f2).powi(2) - 1.0).abs() <= 1e-6);
        for (a, b) in vp.evaluate(&p.decision).iter().zip(&p.objectives) {
            assert!((a - b).abs() <= 1e-10);
        }
        for (v, lo) in p.objectives.iter().zip(&front.ideal) {
            assert!(*v >= lo - 1e-9);
        }
        if i > 0 {
            assert!(front.points[i - 1].objectives[0] < f1);
        }
    }
}

#[test]
fn toy_front_through_quarter() {
    // Grid [0, 1] with 5 points puts one cap at 0.25.
    let front = epsilon_constraint_front(&toy_nominal(), 5, &SolverConfig::default()).unwrap();
    let p = front
        .points
        .iter()
        .find(|p| (p.objectives[0] - 0.25).abs() < 1e-6)
        .expect("point at f1 = 0.25");
    assert!((p.objectives[1] - (1.0 - (1.0 - 0.75f64.powi(2)).sqrt())).abs() < 1e-6);
    assert!((p.objectives[1] - 0.338563).abs() < 1e-6);
}

#[test]
fn single_point_front_is_second_anchor() {
    let front = epsilon_constraint_front(&toy_nominal(), 1, &SolverConfig::default()).unwrap();
    assert_eq!(front.points.len(), 1);
    let f = &front.points[0].objectives;
    assert!((f[0] - 1.0).abs() < 1e-6 && f[1].abs() < 1e-6, "{f:?}");
}

#[test]
fn weighted_sum_matches_grid_oracle() {
    let vp = toy_nominal();
    let cfg = SolverConfig::default();
    let p = weighted_sum_point(&vp, &[0.5, 0.5], &cfg).unwrap();
    let oracle = (0..=10_000)
        .map(|i| FRAC_PI_2 * i as f64 / 10_000.0)
        .map(|t| 0.5 * (1.0 - t.cos()) + 0.5 * (1.0 - t.sin()))
        .fold(f64::INFINITY, f64::min);
    let value = 0.5 * (p.objectives[0] + p.objectives[1]);
    assert!(value <= oracle + 1e-9);
    let h = 1.0 - SQRT_2 / 2.0;
    assert!((p.objectives[0] - h).abs() < 1e-5 && (p.objectives[1] - h).abs() < 1e-5, "{p:?}");

    let near_anchor = weighted_sum_point(&vp, &[1.0 - 1e-3, 1e-3], &cfg).unwrap();
    assert!(near_anchor.objectives[0].abs() < 0.05 && (near_anchor.objectives[1] - 1.0).abs() < 0.05);

    let d = weighted_sum_point(&disk(), &[0.5, 0.5], &cfg).unwrap();
    assert!((d.decision[0] + SQRT_2 / 2.0).abs() < 1e-5 && (d.decision[1] + SQRT_2 / 2.0).abs() < 1e-5);
}

#[test]
fn weighted_sum_rejects_bad_weights() {
    let cfg = SolverConfig::default();
    assert!(weighted_sum_point(&toy_nominal(), &[1.0, 0.0], &cfg).is_err());
    assert!(weighted_sum_point(&toy_nominal(), &[1.0], &cfg).is_err());
    let front = weighted_sum_front(&toy_nominal(), &[vec![1.0, 3.0], vec![1.0, 1.0], vec![3.0, 1.0]], &cfg).unwrap();
    assert_eq!(front.points.len(), 3);
}

#[test]
fn fronts_are_reproducible() {
    let cfg = SolverConfig {
        seed: 11,
        ..Default::default()
    };
    let a = epsilon_constraint_front(&disk(), 7, &cfg).unwrap();
    let b = epsilon_constraint_front(&disk(), 7, &cfg).unwrap();
    assert_eq!(a, b);
}
