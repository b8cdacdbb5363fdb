//! A shrinking mesh: the flat metric collapses it, the complete one does not.

use meshgeo::admissibility::aspect_ratio;
use meshgeo::experiment::{preset_tangent, PresetKind};
use meshgeo::{fixtures, stormer_verlet, IntegrationError, MetricParams, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (c, q) = fixtures::unit_square_crossed();
    let v = preset_tangent(PresetKind::Scale, &q, 0.5);
    let opts = SolverOptions {
        store_every: 100,
        ..Default::default()
    };

    match stormer_verlet(
        &c,
        &q,
        &v,
        &MetricParams::euclidean(q.clone()),
        3.0,
        1500,
        &opts,
    ) {
        Err(f) => match f.error {
            IntegrationError::InadmissibleState { step } => {
                println!(
                    "flat metric: mesh degenerates at step {step} (t = {:.3})",
                    step as f64 * 3.0 / 1500.0
                )
            }
            other => println!("flat metric: {other}"),
        },
        Ok(_) => println!("flat metric: unexpectedly survived"),
    }

    let params = MetricParams::new(q.clone()).with_betas(1.0, 0.0, 1.0);
    let traj = stormer_verlet(&c, &q, &v, &params, 3.0, 30_000, &opts).map_err(|f| f.error)?;
    let worst = (0..traj.len())
        .map(|k| aspect_ratio(&c, &traj.configuration(k)).unwrap())
        .fold(f64::INFINITY, f64::min);
    println!("complete metric: admissible to t = 3, min aspect ratio {worst:.4}");
    println!("energy drift {:.2e}", traj.max_relative_energy_drift());
    Ok(())
}
