//! Weights for uniformly refined meshes, keeping the penalty balance.

use meshgeo::experiment::beta_for_mesh_level;
use meshgeo::fixtures;

fn main() {
    let (c, q) = fixtures::unit_square_crossed();
    let (nt, nv) = (c.num_triangles(), c.num_vertices());
    for level in 1..=4u32 {
        let (cl, _) = fixtures::refine_times(&c, &q, level as usize - 1);
        let (b1, b3) = beta_for_mesh_level(
            1.0,
            1.0,
            nt,
            nv,
            level,
            cl.num_triangles(),
            cl.num_vertices(),
        );
        println!(
            "level {level}: {:>4} triangles, {:>4} vertices, beta1 {b1:.5}, beta3 {b3:.5}",
            cl.num_triangles(),
            cl.num_vertices()
        );
    }
}
