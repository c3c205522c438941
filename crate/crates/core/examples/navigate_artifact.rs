//! Running a config, saving the artifact, and querying it.

use pareto_robust::artifact::RunArtifact;
use pareto_robust::navigate::{navigate, worstcase_subset, NavigateRequest};
use pareto_robust::robust::Method;
use pareto_robust::run::{execute, RunConfig};

fn main() -> pareto_robust::Result<()> {
    let config = RunConfig::new("toy", Method::Rmo).with_points(11);
    let artifact = execute(&config)?;
    let path = std::env::temp_dir().join(format!("{}.json", artifact.run_id));
    artifact.write(&path)?;
    let artifact = RunArtifact::read(&path)?;
    println!("run {} with {} points written to {}", artifact.run_id, artifact.points.len(), path.display());

    let req = NavigateRequest {
        upper_bounds: vec![Some(0.5), Some(0.5)],
        reference: None,
    };
    let r = navigate(&artifact, &req)?;
    println!("f1 <= 0.5 and f2 <= 0.5: points {:?}, closest to the ideal {:?}", r.surviving, r.nearest);
    if let Some(id) = r.nearest {
        let p = artifact.point(id)?;
        println!("  hnv {:?}, worst case {:.4?}", p.hnv, p.worst_case_objectives);
    }

    let nominal_only = worstcase_subset(&artifact, &[0])?;
    for p in nominal_only.points.iter().take(3) {
        println!("point {} with only the nominal scenario: {:.4?}", p.id, p.objectives);
    }
    Ok(())
}
