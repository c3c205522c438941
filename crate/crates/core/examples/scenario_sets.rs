//! One-at-a-time and explicit scenario sets for the column surrogate.

use indexmap::IndexMap;
use pareto_robust::builtin::column;
use pareto_robust::problem::{make_explicit_scenarios, make_oat_scenarios};

fn main() -> pareto_robust::Result<()> {
    let p = column();
    let oat = make_oat_scenarios(&p.uncertain);
    println!("OAT: {} scenarios", oat.len());
    for s in oat.scenarios() {
        println!("  {:>2} {}{:?}", s.id, if s.is_nominal { "* " } else { "  " }, s.values);
    }

    let corner = IndexMap::from([("l".to_string(), 1.2), ("w_MF".to_string(), 0.82), ("F12".to_string(), 1.1)]);
    let nominal = IndexMap::from([("l".to_string(), 1.0), ("w_MF".to_string(), 0.8), ("F12".to_string(), 1.0)]);
    let explicit = make_explicit_scenarios(&p.uncertain, &[corner.clone(), nominal, corner])?;
    println!("explicit: {} scenarios (nominal prepended, duplicates dropped)", explicit.len());
    for row in explicit.value_matrix(&p.uncertain)? {
        println!("  {row:?}");
    }
    Ok(())
}
