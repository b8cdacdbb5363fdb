//! Boundary-driven shear of a disk mesh: aspect ratio with and without the
//! triangle-quality term.

use meshgeo::experiment::{run_experiment, ExperimentSpec, GridPoint, PresetKind, TangentSource};
use meshgeo::{fixtures, MetricParams, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (complex, q0) = fixtures::disk();
    let spec = ExperimentSpec {
        params: MetricParams::new(q0.clone()),
        complex,
        q0,
        tangent: TangentSource::Preset {
            kind: PresetKind::Shear,
            magnitude: 0.5,
            boundary_only: true,
        },
        grid: vec![
            GridPoint {
                beta1: 0.0,
                beta3: 0.0,
                n_steps: 10,
            },
            GridPoint {
                beta1: 0.15,
                beta3: 0.15,
                n_steps: 5000,
            },
        ],
        t_final: 2.0,
        snapshots: 0,
        svg: false,
        output_dir: None,
        solver: SolverOptions {
            store_every: 50,
            ..Default::default()
        },
    };
    let report = run_experiment(&spec)?;
    print!("{}", report.summary_csv());
    Ok(())
}
