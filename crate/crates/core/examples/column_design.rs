//! Nominal, robust and adjustable-robust CAPEX/OPEX fronts of the column surrogate.

use std::time::Instant;

use pareto_robust::builtin::{column, feasibility_probe};
use pareto_robust::nlp::SolverConfig;
use pareto_robust::problem::make_oat_scenarios;
use pareto_robust::robust::{compute_front, front_costs, FrontSpec, Method};

fn main() -> pareto_robust::Result<()> {
    let p = column();
    let ss = make_oat_scenarios(&p.uncertain);
    let probe = feasibility_probe(&p, &ss, 10_000, 0)?;
    println!("robustly feasible samples: {}/{}", probe.feasible, probe.samples);

    let cfg = SolverConfig::default();
    let spec = FrontSpec::EpsilonConstraint { n_points: 9 };
    for method in [Method::Nominal, Method::Rmo, Method::MaroReplication] {
        let start = Instant::now();
        let front = compute_front(&p, &ss, method, &spec, &cfg)?;
        println!("\n{method}: {} points in {:.1?}", front.points.len(), start.elapsed());
        let costs = if method == Method::Nominal { Vec::new() } else { front_costs(&p, &ss, &front, &cfg)? };
        for (i, pt) in front.points.iter().enumerate() {
            let f = pt.displayed(method);
            print!(
                "  capex {:9.2}  opex {:7.2}  status {:?}  viol {:.1e}",
                f[0],
                f[1],
                pt.pareto.solver_status,
                pt.table.max_violation()
            );
            if let Some(c) = costs.get(i) {
                print!("  gaps ({:.3}, {:.3})", c.gaps[0], c.gaps[1]);
            }
            println!();
        }
    }
    Ok(())
}
