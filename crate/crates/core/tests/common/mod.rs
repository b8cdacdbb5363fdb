#![allow(dead_code)]

use meshgeo::geometry::{triangle_quantities, Point};
use meshgeo::{ConnectivityComplex, VertexConfiguration};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn min_height(c: &ConnectivityComplex, q: &VertexConfiguration) -> f64 {
    c.triangles()
        .iter()
        .map(|&t| {
            triangle_quantities(q, t)
                .heights
                .map_or(0.0, |h| h.iter().copied().fold(f64::INFINITY, f64::min))
        })
        .fold(f64::INFINITY, f64::min)
}

pub fn rotate(v: &[Point], theta: f64) -> Vec<Point> {
    let (s, c) = theta.sin_cos();
    v.iter()
        .map(|p| [c * p[0] - s * p[1], s * p[0] + c * p[1]])
        .collect()
}

/// `R(theta) x + b` applied pointwise to a flat state.
pub fn rigid_flat(x: &[f64], theta: f64, b: Point) -> Vec<f64> {
    let (s, c) = theta.sin_cos();
    x.chunks_exact(2)
        .flat_map(|p| [c * p[0] - s * p[1] + b[0], s * p[0] + c * p[1] + b[1]])
        .collect()
}

pub fn random_tangent(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Vec<Point> {
    (0..n)
        .map(|_| {
            [
                scale * rng.gen_range(-1.0..1.0),
                scale * rng.gen_range(-1.0..1.0),
            ]
        })
        .collect()
}

/// Classical RK4 for two points on the line with `β = 0`, using the
/// closed-form acceleration `q̈² = −q̈¹ = 2 (Δq̇)² / (Δq⁵ + 2 Δq)`.
/// Returns the positions after each step (index 0 is the start).
pub fn rk4_two_points(q0: [f64; 2], v0: [f64; 2], t_final: f64, n: usize) -> Vec<[f64; 2]> {
    let rhs = |y: [f64; 4]| {
        let e = y[1] - y[0];
        let dv = y[3] - y[2];
        let a = 2.0 * dv * dv / (e.powi(5) + 2.0 * e);
        [y[2], y[3], -a, a]
    };
    let h = t_final / n as f64;
    let mut y = [q0[0], q0[1], v0[0], v0[1]];
    let mut out = vec![q0];
    let axpy = |y: [f64; 4], s: f64, k: [f64; 4]| {
        [
            y[0] + s * k[0],
            y[1] + s * k[1],
            y[2] + s * k[2],
            y[3] + s * k[3],
        ]
    };
    for _ in 0..n {
        let k1 = rhs(y);
        let k2 = rhs(axpy(y, 0.5 * h, k1));
        let k3 = rhs(axpy(y, 0.5 * h, k2));
        let k4 = rhs(axpy(y, h, k3));
        for i in 0..4 {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        out.push([y[0], y[1]]);
    }
    out
}
