//! Faces, stars, links and orientation of an abstract complex.

use meshgeo::ConnectivityComplex;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // hexagonal fan: vertex 0 is surrounded by 1..=6
    let fan: Vec<[usize; 3]> = (1..=6).map(|i| [0, i, i % 6 + 1]).collect();
    let c = ConnectivityComplex::new(7, fan)?;
    println!(
        "connectivity complex: {}",
        c.validate().is_connectivity_complex()
    );
    println!("consistently oriented: {}", c.is_consistently_oriented());

    let faces = c.classify_faces();
    println!("interior vertices {:?}", faces.interior_vertices);
    println!("boundary edges {}", faces.boundary_edges.len());

    let link = c.vertex_link_chain(0)?;
    println!("link of 0: {:?}, closed {}", link.vertices, link.closed);
    println!("link of edge (0,1): {:?}", c.link(&[0, 1])?);
    println!("star of vertex 3 has {} faces", c.star(&[3])?.len());

    // flip one triangle and let the orientation search repair it
    let mut flipped = c.triangles().to_vec();
    flipped[2].swap(1, 2);
    let bad = ConnectivityComplex::new(7, flipped)?;
    let o = bad.check_orientable();
    println!(
        "flipped mesh oriented {}, orientable {}",
        bad.is_consistently_oriented(),
        o.orientable
    );
    if let Some(fixed) = o.assignment {
        println!(
            "repaired: {}",
            bad.with_orientations(fixed)?.is_consistently_oriented()
        );
    }
    Ok(())
}
