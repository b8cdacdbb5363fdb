//! Small reference meshes used by the examples, tests and the CLI demos.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::geometry::{Point, VertexConfiguration};
use crate::simplicial::{edge, ConnectivityComplex};

fn build(
    points: Vec<Point>,
    triangles: Vec<[usize; 3]>,
) -> (ConnectivityComplex, VertexConfiguration) {
    let c = ConnectivityComplex::new(points.len(), triangles).expect("fixture complex");
    let q = VertexConfiguration::new(points).expect("fixture coordinates");
    (c, q)
}

/// Square with corners `(±1, ±1)` split into four triangles around the origin.
pub fn cross_mesh() -> (ConnectivityComplex, VertexConfiguration) {
    build(
        vec![
            [-1.0, -1.0],
            [1.0, -1.0],
            [1.0, 1.0],
            [-1.0, 1.0],
            [0.0, 0.0],
        ],
        vec![[0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4]],
    )
}

/// Tangent that pushes the two bottom corners of [`cross_mesh`] up and
/// inward; the bottom triangle collapses at `t = 1/1.8`.
pub fn cross_inward_tangent() -> Vec<Point> {
    vec![[0.9, 1.8], [-0.9, 1.8], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]
}

/// Unit square split into four triangles around its center.
pub fn unit_square_crossed() -> (ConnectivityComplex, VertexConfiguration) {
    build(
        vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]],
        vec![[0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4]],
    )
}

/// Regular hexagon of unit circumradius fanned around its center.
pub fn hex_fan() -> (ConnectivityComplex, VertexConfiguration) {
    let mut points = vec![[0.0, 0.0]];
    for k in 0..6 {
        let a = PI * k as f64 / 3.0;
        points.push([a.cos(), a.sin()]);
    }
    let triangles = (0..6).map(|k| [0, 1 + k, 1 + (k + 1) % 6]).collect();
    build(points, triangles)
}

/// Unit disk: a center, 8 vertices at radius 1/2 and 16 on the unit circle;
/// 32 triangles.
pub fn disk() -> (ConnectivityComplex, VertexConfiguration) {
    let mut points = vec![[0.0, 0.0]];
    for k in 0..8 {
        let a = 2.0 * PI * k as f64 / 8.0;
        points.push([0.5 * a.cos(), 0.5 * a.sin()]);
    }
    for k in 0..16 {
        let a = 2.0 * PI * k as f64 / 16.0;
        points.push([a.cos(), a.sin()]);
    }
    let mut triangles = Vec::with_capacity(32);
    for k in 0..8 {
        triangles.push([0, 1 + k, 1 + (k + 1) % 8]);
    }
    for k in 0..8 {
        let a = 1 + k;
        let b = 1 + (k + 1) % 8;
        let o0 = 9 + 2 * k;
        let o1 = 9 + 2 * k + 1;
        let o2 = 9 + (2 * k + 2) % 16;
        triangles.push([a, o0, o1]);
        triangles.push([a, o1, b]);
        triangles.push([b, o1, o2]);
    }
    build(points, triangles)
}

/// Two oriented admissible configurations of one six-vertex complex that
/// are not joined by any path of admissible oriented meshes.
pub fn disconnected_pair() -> (
    ConnectivityComplex,
    VertexConfiguration,
    VertexConfiguration,
) {
    let c = ConnectivityComplex::from_matrix(
        6,
        &[
            [1, 4, 3],
            [1, 2, 5],
            [2, 3, 6],
            [3, 4, 6],
            [1, 5, 4],
            [2, 6, 5],
        ],
    )
    .expect("fixture complex");
    let q = VertexConfiguration::new(vec![
        [0.75, 1.25],
        [1.25, 1.25],
        [1.0, 0.75],
        [-0.5, 0.0],
        [1.0, 2.5],
        [2.5, 0.0],
    ])
    .unwrap();
    let qt = VertexConfiguration::new(vec![
        [-0.5, 0.0],
        [2.5, 0.0],
        [1.0, 2.5],
        [0.75, 1.25],
        [1.0, 0.75],
        [1.25, 1.25],
    ])
    .unwrap();
    (c, q, qt)
}

/// Structured triangulation of the unit square with `nx * ny` cells, each
/// cut along its rising diagonal.
pub fn grid(nx: usize, ny: usize) -> (ConnectivityComplex, VertexConfiguration) {
    assert!(nx > 0 && ny > 0);
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut points = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            points.push([i as f64 / nx as f64, j as f64 / ny as f64]);
        }
    }
    let mut triangles = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            triangles.push([id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            triangles.push([id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    build(points, triangles)
}

/// Split every triangle into four through its edge midpoints. Original
/// vertices keep their ids; midpoints follow in sorted edge order.
pub fn refine_uniform(
    c: &ConnectivityComplex,
    q: &VertexConfiguration,
) -> (ConnectivityComplex, VertexConfiguration) {
    let mut points = q.points().to_vec();
    let mut mid = BTreeMap::new();
    for e in c.edges() {
        let (a, b) = (q.point(e[0]), q.point(e[1]));
        mid.insert(e, points.len());
        points.push([0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])]);
    }
    let mut triangles = Vec::with_capacity(4 * c.num_triangles());
    for &[a, b, cc] in c.triangles() {
        let ab = mid[&edge(a, b)];
        let bc = mid[&edge(b, cc)];
        let ca = mid[&edge(cc, a)];
        triangles.push([a, ab, ca]);
        triangles.push([ab, b, bc]);
        triangles.push([ca, bc, cc]);
        triangles.push([ab, bc, ca]);
    }
    build(points, triangles)
}

/// Apply [`refine_uniform`] `times` times.
pub fn refine_times(
    c: &ConnectivityComplex,
    q: &VertexConfiguration,
    times: usize,
) -> (ConnectivityComplex, VertexConfiguration) {
    let mut out = (c.clone(), q.clone());
    for _ in 0..times {
        out = refine_uniform(&out.0, &out.1);
    }
    out
}
