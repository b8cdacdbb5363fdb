//! Two points on a line heading for each other.

use meshgeo::oned::{f_1d, geodesic_1d, LineConfiguration};
use meshgeo::SolverOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for beta in [0.0, 1.0] {
        let config = LineConfiguration::at_reference(vec![0.0, 1.0], beta)?;
        println!("beta {beta}: f at start {:.4}", f_1d(&config));
        let traj = geodesic_1d(
            &config,
            &[1.0, -1.0],
            10.0,
            10_000,
            &SolverOptions::default(),
        )
        .map_err(|f| f.error)?;
        let gaps: Vec<f64> = traj.states.iter().map(|s| s[1] - s[0]).collect();
        let min_gap = gaps.iter().copied().fold(f64::INFINITY, f64::min);
        println!(
            "  smallest gap {min_gap:.4}, gap at t = 10 {:.4}",
            gaps[gaps.len() - 1]
        );
        println!("  final {:?}", traj.final_state());
        println!("  energy drift {:.2e}", traj.max_relative_energy_drift());
    }
    Ok(())
}
