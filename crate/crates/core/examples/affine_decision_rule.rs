//! Replicated wait-and-see values against an affine rule in the uncertain
//! parameters, on the toy problem.

use pareto_robust::builtin::toy;
use pareto_robust::nlp::SolverConfig;
use pareto_robust::problem::{make_oat_scenarios, VarKind};
use pareto_robust::robust::{weighted_sum_chain, WsvValues};

fn main() -> pareto_robust::Result<()> {
    let p = toy(VarKind::Wsv);
    let ss = make_oat_scenarios(&p.uncertain);
    let cfg = SolverConfig::default();
    for w in [[0.3, 0.7], [0.5, 0.5]] {
        println!("weights {w:?}");
        for opt in weighted_sum_chain(&p, &ss, &w, &cfg)? {
            print!("  {:<16} value {:.8}", opt.method.to_string(), opt.value);
            if let WsvValues::PerScenario(rows) = &opt.decision.wsv {
                let t: Vec<f64> = rows.iter().map(|r| r[0]).collect();
                print!("  t per scenario {t:.4?}");
            }
            if let Some(rule) = &opt.decision.affine_rule {
                print!("  offset {:.4?} gain {:.4?}", rule.offset, rule.gain);
            }
            println!();
        }
    }
    Ok(())
}
