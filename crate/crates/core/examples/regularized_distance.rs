//! The smoothed vertex-to-edge distance next to its exact counterparts.

use meshgeo::geometry::{
    dist_vertex_edge_1norm, dist_vertex_edge_euclid, dist_vertex_edge_regularized, h_mu_derivatives,
};
use meshgeo::VertexConfiguration;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>6} {:>6} {:>10} {:>10} {:>10} {:>10}",
        "x", "y", "euclid", "1-norm", "mu=10", "mu=100"
    );
    for (x, y) in [
        (0.5, 0.3),
        (0.5, 0.001),
        (1.2, 0.0),
        (-0.3, 0.4),
        (1.004, 0.002),
    ] {
        let q = VertexConfiguration::new(vec![[x, y], [0.0, 0.0], [1.0, 0.0]])?;
        println!(
            "{x:>6} {y:>6} {:>10.5} {:>10.5} {:>10.5} {:>10.5}",
            dist_vertex_edge_euclid(&q, 0, [1, 2]),
            dist_vertex_edge_1norm(&q, 0, [1, 2])?,
            dist_vertex_edge_regularized(&q, 0, [1, 2], 10.0)?,
            dist_vertex_edge_regularized(&q, 0, [1, 2], 100.0)?,
        );
    }
    // the smoothed |x| is quadratic near zero and exact past 1/(2 mu)
    for x in [0.0, 0.02, 0.05, 0.1] {
        let h = h_mu_derivatives(x, 10.0)?;
        println!(
            "h_10({x}) = {:.5}, derivatives {:.3} {:.3} {:.3}",
            h[0], h[1], h[2], h[3]
        );
    }
    Ok(())
}
