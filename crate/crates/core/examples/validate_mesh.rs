//! Read a mesh file (or use the crossed square) and report admissibility.
//!
//! cargo run --example validate_mesh -- [mesh.txt]

use meshgeo::{fixtures, io, is_in_mplus};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (complex, q) = match std::env::args().nth(1) {
        Some(path) => {
            let m = io::read_mesh(path)?;
            (m.complex, m.coords)
        }
        None => fixtures::unit_square_crossed(),
    };
    let report = is_in_mplus(&complex, &q)?;
    println!(
        "vertices {}, triangles {}",
        complex.num_vertices(),
        complex.num_triangles()
    );
    println!("admissible: {}", report.is_admissible());
    println!("positively oriented: {}", report.all_areas_positive);
    println!(
        "min signed area {:.4}, aspect ratio {:.4}",
        report.min_signed_area, report.aspect_ratio
    );
    if let Some(v) = report.first_violation {
        println!("first violation: {v}");
    }

    // moving the centre vertex outside the square folds the mesh
    let folded = q.map(|p| if p == [0.5, 0.5] { [1.5, 0.5] } else { p });
    println!(
        "after folding: admissible {}",
        is_in_mplus(&complex, &folded)?.is_admissible()
    );
    Ok(())
}
