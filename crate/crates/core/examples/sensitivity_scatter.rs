//! Objective values of one fixed design under every scenario.

use std::f64::consts::FRAC_PI_4;

use pareto_robust::builtin::toy;
use pareto_robust::problem::{make_oat_scenarios, VarKind};
use pareto_robust::robust::{sensitivity_scatter, worstcase_over_subset, Decision, WsvValues};

fn main() -> pareto_robust::Result<()> {
    let p = toy(VarKind::Hnv);
    let ss = make_oat_scenarios(&p.uncertain);
    let d = Decision {
        hnv: vec![FRAC_PI_4],
        wsv: WsvValues::Single(vec![]),
        affine_rule: None,
    };
    let (table, stats) = sensitivity_scatter(&p, &ss, &d)?;
    for row in &table.rows {
        println!("scenario {}: f = {:.5?}", row.scenario_id, row.objectives);
    }
    println!("range {:.5?}, std {:.5?}", stats.range, stats.std);
    println!("worst case {:.5?}", table.worst_case());
    println!("worst case without scenario 2: {:.5?}", worstcase_over_subset(&table, &[0, 1])?);
    Ok(())
}
