//! The three fronts of the toy problem side by side.

use pareto_robust::builtin::toy;
use pareto_robust::nlp::SolverConfig;
use pareto_robust::problem::{make_oat_scenarios, VarKind};
use pareto_robust::robust::{compute_front, FrontSpec, Method};

fn main() -> pareto_robust::Result<()> {
    let p = toy(VarKind::Wsv);
    let ss = make_oat_scenarios(&p.uncertain);
    let cfg = SolverConfig::default();
    let spec = FrontSpec::EpsilonConstraint { n_points: 11 };
    for method in [Method::Nominal, Method::Rmo, Method::MaroReplication] {
        let front = compute_front(&p, &ss, method, &spec, &cfg)?;
        println!("{method} ({} points)", front.points.len());
        for pt in &front.points {
            let f = pt.displayed(method);
            println!("  f1 {:.6}  f2 {:.6}", f[0], f[1]);
        }
    }
    Ok(())
}
