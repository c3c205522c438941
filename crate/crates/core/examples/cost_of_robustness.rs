//! How much each robust toy design gives up at the nominal scenario.

use pareto_robust::builtin::toy;
use pareto_robust::nlp::SolverConfig;
use pareto_robust::problem::{make_oat_scenarios, VarKind};
use pareto_robust::robust::{compute_front, cost_of_robustness, FrontSpec, Method};

fn main() -> pareto_robust::Result<()> {
    let p = toy(VarKind::Wsv);
    let ss = make_oat_scenarios(&p.uncertain);
    let cfg = SolverConfig::default();
    for method in [Method::Rmo, Method::MaroReplication] {
        let front = compute_front(&p, &ss, method, &FrontSpec::EpsilonConstraint { n_points: 6 }, &cfg)?;
        println!("{method}");
        for pt in &front.points {
            let c = cost_of_robustness(&p, &ss, pt, &cfg)?;
            println!(
                "  worst {:.4?}  at nominal {:.4?}  gaps {:?}",
                pt.worst_case_objectives, c.nominal_objectives, c.gaps
            );
        }
    }
    Ok(())
}
