//! Dominance statistics and a CSV report over three toy runs.

use pareto_robust::compare::compare;
use pareto_robust::robust::Method;
use pareto_robust::run::{execute, RunConfig};

fn main() -> pareto_robust::Result<()> {
    let runs = [Method::Nominal, Method::Rmo, Method::MaroReplication]
        .into_iter()
        .map(|m| Ok((m.to_string(), execute(&RunConfig::new("toy", m).with_points(11))?)))
        .collect::<pareto_robust::Result<Vec<_>>>()?;
    let report = compare(&runs)?;
    print!("{}", report.to_text());
    let csv = report.to_csv()?;
    println!("\nfirst CSV lines:");
    for line in csv.lines().take(3) {
        println!("  {line}");
    }
    Ok(())
}
