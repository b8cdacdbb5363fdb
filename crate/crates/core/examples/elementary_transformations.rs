//! Translation, shear, scaling and rotation tangents on the crossed square.

use meshgeo::admissibility::aspect_ratio;
use meshgeo::experiment::{preset_tangent, PresetKind};
use meshgeo::{exponential_map, fixtures, MetricParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (c, q) = fixtures::unit_square_crossed();
    // no reference-distance term, so translations stay straight lines
    let params = MetricParams::new(q.clone()).with_betas(0.5, 0.0, 0.0);
    for kind in [
        PresetKind::Translate,
        PresetKind::Shear,
        PresetKind::Scale,
        PresetKind::Rotate,
    ] {
        let v = preset_tangent(kind, &q, 0.5);
        let euclid = q.displaced(&v, 1.0);
        let moved = exponential_map(&c, &q, &v, &params, 400).map_err(|f| f.error)?;
        let gap = moved
            .as_flat()
            .iter()
            .zip(euclid.as_flat())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!(
            "{kind:?}: exp vs Q + V differs by {gap:.4}, aspect ratio {:.4}",
            aspect_ratio(&c, &moved)?
        );
    }
    Ok(())
}
