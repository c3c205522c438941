//! Solving a constrained scalar problem directly and from multiple starts.

use pareto_robust::nlp::{check_kkt, multistart_solve, solve, NlpProblem, SmoothFn, SolverConfig};

fn main() -> pareto_robust::Result<()> {
    let cfg = SolverConfig::default();

    // Minimize z1 + z2 on the unit disk.
    let disk = NlpProblem::new(vec![-2.0; 2], vec![2.0; 2], SmoothFn::new(|z| z[0] + z[1]))?
        .inequality(SmoothFn::new(|z| z[0] * z[0] + z[1] * z[1] - 1.0));
    let r = solve(&disk, &[0.0, 0.0], &cfg);
    let (viol, stat) = check_kkt(&disk, &r.z_star, &cfg);
    println!("disk: z* = {:?}, f* = {:.10}, {:?}", r.z_star, r.f_star, r.status);
    println!("      violation {viol:.1e}, stationarity {stat:.1e}, {} evaluations", r.evaluations);

    // A multimodal landscape needs several starts.
    let wavy = NlpProblem::new(vec![0.0], vec![3.0], SmoothFn::new(|z| (5.0 * z[0]).cos()))?;
    let local = solve(&wavy, &[0.0], &cfg);
    let global = multistart_solve(&wavy, &SolverConfig { multistart_count: 8, ..cfg });
    println!("cos(5z): single start f* = {:.6}, multistart f* = {:.6} at z = {:.6}", local.f_star, global.f_star, global.z_star[0]);
    Ok(())
}
