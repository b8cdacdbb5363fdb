//! exp_Q(V) converging as the step count grows.

use meshgeo::experiment::{preset_tangent, PresetKind};
use meshgeo::{exponential_map, fixtures, MetricParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (c, q) = fixtures::cross_mesh();
    let params = MetricParams::new(q.clone()).with_betas(0.5, 0.0, 0.5);
    let v = preset_tangent(PresetKind::Rotate, &q, 0.8);
    let reference = exponential_map(&c, &q, &v, &params, 6400).map_err(|f| f.error)?;
    for n in [50, 100, 200, 400] {
        let e = exponential_map(&c, &q, &v, &params, n).map_err(|f| f.error)?;
        let err = e
            .as_flat()
            .iter()
            .zip(reference.as_flat())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!("N = {n:>4}: error {err:.3e}");
    }
    print!("{}", meshgeo::io::format_mesh(&c, &reference));
    Ok(())
}
