use indexmap::IndexMap;
use pareto_robust::builtin::toy;
use pareto_robust::problem::{make_explicit_scenarios, VarKind};
use pareto_robust::robust::{sensitivity_scatter, worstcase_over_subset, Decision, WsvValues};
use proptest::prelude::*;

fn rows_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.1f64..=0.1, 0..8)
}

proptest! {
    #[test]
    fn scatter_invariants(t in 0.0f64..1.5707, us in rows_strategy(), per_scenario in any::<bool>(), seed_t in 0.0f64..1.5707) {
        let p = toy(VarKind::Wsv);
        let rows: Vec<IndexMap<String, f64>> = us.iter().map(|u| IndexMap::from([("u".to_string(), *u)])).collect();
        let ss = make_explicit_scenarios(&p.uncertain, &rows).unwrap();
        let wsv = if per_scenario {
            WsvValues::PerScenario((0..ss.len()).map(|k| vec![(t + k as f64 * seed_t) % 1.5707]).collect())
        } else {
            WsvValues::Single(vec![t])
        };
        let decision = Decision { hnv: vec![], wsv, affine_rule: None };
        let (table, stats) = sensitivity_scatter(&p, &ss, &decision).unwrap();
        prop_assert_eq!(table.rows.len(), ss.len());

        let worst = table.worst_case();
        for m in 0..2 {
            let col: Vec<f64> = table.rows.iter().map(|r| r.objectives[m]).collect();
            let max = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let min = col.iter().copied().fold(f64::INFINITY, f64::min);
            prop_assert_eq!(worst[m], max);
            prop_assert!(stats.range[m] >= 0.0);
            prop_assert!((stats.range[m] - (max - min)).abs() <= 1e-15);
            prop_assert!(stats.std[m] >= 0.0 && stats.std[m] <= stats.range[m] + 1e-15);
        }

        let all: Vec<usize> = (0..ss.len()).collect();
        prop_assert_eq!(worstcase_over_subset(&table, &all).unwrap(), worst.clone());
        for drop in 0..ss.len() {
            let subset: Vec<usize> = all.iter().copied().filter(|&k| k != drop).collect();
            if subset.is_empty() {
                continue;
            }
            let sub = worstcase_over_subset(&table, &subset).unwrap();
            for m in 0..2 {
                prop_assert!(sub[m] <= worst[m]);
            }
        }
    }
}
