//! Per-triangle and vertex/edge geometry of a planar vertex configuration.

use std::f64::consts::PI;

use thiserror::Error;

pub type Point = [f64; 2];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("vertex coordinates must be finite (vertex {0})")]
    NonFinite(usize),
    #[error("flat coordinate vector has odd length {0}")]
    OddLength(usize),
    #[error("edge endpoints coincide")]
    DegenerateEdge,
    #[error("interval [{0}, {1}] is empty")]
    EmptyInterval(f64, f64),
    #[error("regularization parameter must satisfy mu >= 1, got {0}")]
    InvalidMu(f64),
    #[error("function value must be positive, got {0}")]
    NonPositiveValue(f64),
}

/// Positions of all vertices; row `i` is vertex `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexConfiguration {
    points: Vec<Point>,
}

impl VertexConfiguration {
    pub fn new(points: Vec<Point>) -> Result<Self, GeometryError> {
        if let Some(i) = points
            .iter()
            .position(|p| !p[0].is_finite() || !p[1].is_finite())
        {
            return Err(GeometryError::NonFinite(i));
        }
        Ok(Self { points })
    }

    /// From interleaved `x0, y0, x1, y1, ...`.
    pub fn from_flat(flat: &[f64]) -> Result<Self, GeometryError> {
        if !flat.len().is_multiple_of(2) {
            return Err(GeometryError::OddLength(flat.len()));
        }
        Self::new(flat.chunks_exact(2).map(|c| [c[0], c[1]]).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            points: vec![[0.0; 2]; n],
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn as_flat(&self) -> &[f64] {
        self.points.as_flattened()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.as_flat().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn centroid(&self) -> Point {
        let n = self.points.len().max(1) as f64;
        let (sx, sy) = self
            .points
            .iter()
            .fold((0.0, 0.0), |(a, b), p| (a + p[0], b + p[1]));
        [sx / n, sy / n]
    }

    /// `Q + s V`, pointwise.
    pub fn displaced(&self, v: &[Point], s: f64) -> Self {
        let points = self
            .points
            .iter()
            .zip(v)
            .map(|(p, d)| [p[0] + s * d[0], p[1] + s * d[1]])
            .collect();
        Self { points }
    }

    /// Apply `x ↦ R(theta) x + b` to every vertex.
    pub fn rigid_motion(&self, theta: f64, b: Point) -> Self {
        let (s, c) = theta.sin_cos();
        let points = self
            .points
            .iter()
            .map(|p| [c * p[0] - s * p[1] + b[0], s * p[0] + c * p[1] + b[1]])
            .collect();
        Self { points }
    }

    /// Apply an arbitrary map to every vertex.
    pub fn map(&self, mut f: impl FnMut(Point) -> Point) -> Self {
        Self {
            points: self.points.iter().map(|&p| f(p)).collect(),
        }
    }
}

#[inline]
fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

/// Half the determinant of `[b - a, c - b]`.
#[inline]
pub fn signed_area_points(a: Point, b: Point, c: Point) -> f64 {
    0.5 * cross(sub(b, a), sub(c, b))
}

pub fn signed_area(q: &VertexConfiguration, face: [usize; 3]) -> f64 {
    signed_area_points(q.point(face[0]), q.point(face[1]), q.point(face[2]))
}

/// Partial derivatives of the signed area with respect to the three vertices.
#[inline]
pub fn signed_area_gradient(a: Point, b: Point, c: Point) -> [Point; 3] {
    [
        [0.5 * (b[1] - c[1]), 0.5 * (c[0] - b[0])],
        [0.5 * (c[1] - a[1]), 0.5 * (a[0] - c[0])],
        [0.5 * (a[1] - b[1]), 0.5 * (b[0] - a[0])],
    ]
}

/// Edge lengths of a triangle; entry `l` is the edge opposite vertex `l`.
#[inline]
pub fn edge_lengths_points(a: Point, b: Point, c: Point) -> [f64; 3] {
    [norm(sub(c, b)), norm(sub(a, c)), norm(sub(b, a))]
}

/// Scale-aware degeneracy guard.
#[inline]
pub fn is_degenerate_area(area: f64, max_edge: f64) -> bool {
    area.abs() <= 1e-14 * max_edge * max_edge
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriangleQuantities {
    pub signed_area: f64,
    /// Entry `l` is the edge opposite vertex `l`.
    pub edge_lengths: [f64; 3],
    pub semi_perimeter: f64,
    pub degenerate: bool,
    /// Height through vertex `l`, `None` when degenerate.
    pub heights: Option<[f64; 3]>,
    pub inradius: Option<f64>,
    pub circumradius: Option<f64>,
    /// Cosine of the interior angle at vertex `l`, `None` if an adjacent edge has zero length.
    pub cos_angles: Option<[f64; 3]>,
}

pub fn triangle_quantities(q: &VertexConfiguration, face: [usize; 3]) -> TriangleQuantities {
    let p = [q.point(face[0]), q.point(face[1]), q.point(face[2])];
    let area = signed_area_points(p[0], p[1], p[2]);
    let lengths = edge_lengths_points(p[0], p[1], p[2]);
    let s = 0.5 * (lengths[0] + lengths[1] + lengths[2]);
    let max_edge = lengths.iter().copied().fold(0.0, f64::max);
    let degenerate = is_degenerate_area(area, max_edge);
    let a = area.abs();
    let (heights, inradius, circumradius) = if degenerate {
        (None, None, None)
    } else {
        (
            Some(lengths.map(|l| 2.0 * a / l)),
            Some(a / s),
            Some(lengths[0] * lengths[1] * lengths[2] / (4.0 * a)),
        )
    };
    let cos_angles = if lengths.iter().all(|&l| l > 0.0) {
        let mut c = [0.0; 3];
        for l in 0..3 {
            let u = sub(p[(l + 1) % 3], p[l]);
            let v = sub(p[(l + 2) % 3], p[l]);
            c[l] = (u[0] * v[0] + u[1] * v[1]) / (norm(u) * norm(v));
        }
        Some(c)
    } else {
        None
    };
    TriangleQuantities {
        signed_area: area,
        edge_lengths: lengths,
        semi_perimeter: s,
        degenerate,
        heights,
        inradius,
        circumradius,
        cos_angles,
    }
}

/// Euclidean distance from vertex `i0` to the segment `[j0, j1]`.
pub fn dist_vertex_edge_euclid(q: &VertexConfiguration, i0: usize, e: [usize; 2]) -> f64 {
    let (p, a, b) = (q.point(i0), q.point(e[0]), q.point(e[1]));
    let d = sub(b, a);
    let r = sub(p, a);
    let dd = d[0] * d[0] + d[1] * d[1];
    let t = if dd > 0.0 {
        ((r[0] * d[0] + r[1] * d[1]) / dd).clamp(0.0, 1.0)
    } else {
        0.0
    };
    norm([r[0] - t * d[0], r[1] - t * d[1]])
}

/// Coordinates of `p` in the frame with origin `a` and first axis along `b - a`:
/// `(s, w, L)` with `s` along the edge, `w` across it and `L` the edge length.
#[inline]
fn edge_frame(p: Point, a: Point, b: Point) -> Option<(f64, f64, f64)> {
    let d = sub(b, a);
    let l = norm(d);
    if l == 0.0 {
        return None;
    }
    let r = sub(p, a);
    Some(((r[0] * d[0] + r[1] * d[1]) / l, cross(d, r) / l, l))
}

/// Rotated coordinates of a point in the frame of edge `a -> b`, origin at `a`.
pub fn edge_aligned_coordinates(p: Point, a: Point, b: Point) -> Result<Point, GeometryError> {
    edge_frame(p, a, b)
        .map(|(s, w, _)| [s, w])
        .ok_or(GeometryError::DegenerateEdge)
}

/// 1-norm distance from vertex `i0` to the segment `[j0, j1]`, measured in
/// the edge-aligned frame.
pub fn dist_vertex_edge_1norm(
    q: &VertexConfiguration,
    i0: usize,
    e: [usize; 2],
) -> Result<f64, GeometryError> {
    let (s, w, l) = edge_frame(q.point(i0), q.point(e[0]), q.point(e[1]))
        .ok_or(GeometryError::DegenerateEdge)?;
    Ok(interval_gap(s, 0.0, l) + w.abs())
}

#[inline]
fn interval_gap(x: f64, y: f64, z: f64) -> f64 {
    if x < y {
        y - x
    } else if x > z {
        x - z
    } else {
        0.0
    }
}

fn check_mu(mu: f64) -> Result<(), GeometryError> {
    if mu >= 1.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(GeometryError::InvalidMu(mu))
    }
}

/// One-sided smoothing of `max(a, 0)` used by `g_mu`; returns value and
/// three derivatives in `a`.
#[inline]
fn one_sided(a: f64, mu: f64) -> [f64; 4] {
    let knee = 0.5 / mu;
    if a <= 0.0 {
        [0.0; 4]
    } else if a >= knee {
        [a - 0.25 / mu, 1.0, 0.0, 0.0]
    } else {
        let (m3, m4, m5) = (mu * mu * mu, mu * mu * mu * mu, mu * mu * mu * mu * mu);
        let a2 = a * a;
        let a3 = a2 * a;
        [
            a2 * a2 * (20.0 * m3 + a * (-48.0 * m4 + a * 32.0 * m5)),
            a3 * (80.0 * m3 + a * (-240.0 * m4 + a * 192.0 * m5)),
            a2 * (240.0 * m3 + a * (-960.0 * m4 + a * 960.0 * m5)),
            a * (480.0 * m3 + a * (-2880.0 * m4 + a * 3840.0 * m5)),
        ]
    }
}

/// Value and three `x`-derivatives of `g_mu(x; [y, z])`.
#[inline]
fn g_mu_unchecked(x: f64, y: f64, z: f64, mu: f64) -> [f64; 4] {
    if x < y {
        let p = one_sided(y - x, mu);
        [p[0], -p[1], p[2], -p[3]]
    } else if x > z {
        one_sided(x - z, mu)
    } else {
        [0.0; 4]
    }
}

/// Value and three derivatives of `h_mu(x)`.
#[inline]
fn h_mu_unchecked(x: f64, mu: f64) -> [f64; 4] {
    let t = x.abs();
    let sg = if x < 0.0 { -1.0 } else { 1.0 };
    if t >= 0.5 / mu {
        return [t - 0.25 / mu, sg, 0.0, 0.0];
    }
    let m2 = mu * mu;
    let m3 = m2 * mu;
    let m4 = m3 * mu;
    let m5 = m4 * mu;
    let v =
        t * t * (0.5 * mu + t * (-4.0 * m2 + t * (32.0 * m3 + t * (-64.0 * m4 + t * 40.0 * m5))));
    let d1 = t * (mu + t * (-12.0 * m2 + t * (128.0 * m3 + t * (-320.0 * m4 + t * 240.0 * m5))));
    let d2 = mu + t * (-24.0 * m2 + t * (384.0 * m3 + t * (-1280.0 * m4 + t * 1200.0 * m5)));
    let d3 = -24.0 * m2 + t * (768.0 * m3 + t * (-3840.0 * m4 + t * 4800.0 * m5));
    [v, sg * d1, d2, sg * d3]
}

/// Smoothed distance from `x` to the interval `[y, z]`.
pub fn g_mu(x: f64, y: f64, z: f64, mu: f64) -> Result<f64, GeometryError> {
    g_mu_derivatives(x, y, z, mu).map(|d| d[0])
}

/// `g_mu` together with its first three derivatives in `x`.
pub fn g_mu_derivatives(x: f64, y: f64, z: f64, mu: f64) -> Result<[f64; 4], GeometryError> {
    check_mu(mu)?;
    if y >= z {
        return Err(GeometryError::EmptyInterval(y, z));
    }
    Ok(g_mu_unchecked(x, y, z, mu))
}

/// Smoothed absolute value.
pub fn h_mu(x: f64, mu: f64) -> Result<f64, GeometryError> {
    h_mu_derivatives(x, mu).map(|d| d[0])
}

/// `h_mu` together with its first three derivatives.
pub fn h_mu_derivatives(x: f64, mu: f64) -> Result<[f64; 4], GeometryError> {
    check_mu(mu)?;
    Ok(h_mu_unchecked(x, mu))
}

/// Regularized 1-norm distance from vertex `i0` to the edge `[j0, j1]`.
pub fn dist_vertex_edge_regularized(
    q: &VertexConfiguration,
    i0: usize,
    e: [usize; 2],
    mu: f64,
) -> Result<f64, GeometryError> {
    check_mu(mu)?;
    regularized_distance_points(q.point(i0), q.point(e[0]), q.point(e[1]), mu)
        .map(|(v, _)| v)
        .ok_or(GeometryError::DegenerateEdge)
}

/// Regularized distance from `p` to segment `[a, b]` and its gradient with
/// respect to `(p, a, b)`. `None` for a zero-length edge.
pub(crate) fn regularized_distance_points(
    p: Point,
    a: Point,
    b: Point,
    mu: f64,
) -> Option<(f64, [Point; 3])> {
    let d = sub(b, a);
    let l = norm(d);
    if l == 0.0 {
        return None;
    }
    let r = sub(p, a);
    let e = [d[0] / l, d[1] / l];
    let s = r[0] * e[0] + r[1] * e[1];
    let w = cross(e, r);
    let g = g_mu_unchecked(s, 0.0, l, mu);
    let h = h_mu_unchecked(w, mu);
    let g_s = g[1];
    let g_l = if s > l { -g[1] } else { 0.0 };
    let h_w = h[1];
    let n = [-e[1], e[0]];
    let grad_p = [g_s * e[0] + h_w * n[0], g_s * e[1] + h_w * n[1]];
    let grad_d = [
        (g_s * (r[0] - s * e[0]) + h_w * (r[1] - w * e[0])) / l + g_l * e[0],
        (g_s * (r[1] - s * e[1]) + h_w * (-r[0] - w * e[1])) / l + g_l * e[1],
    ];
    let grad_a = [-grad_p[0] - grad_d[0], -grad_p[1] - grad_d[1]];
    Some((g[0] + h[0], [grad_p, grad_a, grad_d]))
}

/// Derivative of the gradient from [`regularized_distance_points`] in the
/// direction `(vp, va, vb)`. `None` for a zero-length edge.
pub(crate) fn regularized_distance_hessian_vec(
    p: Point,
    a: Point,
    b: Point,
    mu: f64,
    v: [Point; 3],
) -> Option<[Point; 3]> {
    let d = sub(b, a);
    let l = norm(d);
    if l == 0.0 {
        return None;
    }
    let r = sub(p, a);
    let e = [d[0] / l, d[1] / l];
    let en = [-e[1], e[0]];
    let s = r[0] * e[0] + r[1] * e[1];
    let w = cross(e, r);
    let g = g_mu_unchecked(s, 0.0, l, mu);
    let h = h_mu_unchecked(w, mu);
    let beyond = s > l;
    let (g_s, g_ss) = (g[1], g[2]);
    let g_l = if beyond { -g[1] } else { 0.0 };
    let g_sl = if beyond { -g[2] } else { 0.0 };
    let g_ll = if beyond { g[2] } else { 0.0 };
    let (h_w, h_ww) = (h[1], h[2]);

    let dot = |x: Point, y: Point| x[0] * y[0] + x[1] * y[1];
    let s_d = [(r[0] - s * e[0]) / l, (r[1] - s * e[1]) / l];
    let w_d = [(r[1] - w * e[0]) / l, (-r[0] - w * e[1]) / l];

    let dr = sub(v[0], v[1]);
    let dd = sub(v[2], v[1]);
    let dl = dot(e, dd);
    let de = [(dd[0] - dl * e[0]) / l, (dd[1] - dl * e[1]) / l];
    let den = [-de[1], de[0]];
    let ds = dot(e, dr) + dot(s_d, dd);
    let dw = dot(en, dr) + dot(w_d, dd);
    let ds_d = [
        (dr[0] - ds * e[0] - s * de[0]) / l - s_d[0] * dl / l,
        (dr[1] - ds * e[1] - s * de[1]) / l - s_d[1] * dl / l,
    ];
    let dw_d = [
        (dr[1] - dw * e[0] - w * de[0]) / l - w_d[0] * dl / l,
        (-dr[0] - dw * e[1] - w * de[1]) / l - w_d[1] * dl / l,
    ];

    let ks = g_ss * ds + g_sl * dl;
    let kl = g_sl * ds + g_ll * dl;
    let kw = h_ww * dw;
    let mut gr = [0.0; 2];
    let mut gd = [0.0; 2];
    for i in 0..2 {
        gr[i] = ks * e[i] + g_s * de[i] + kw * en[i] + h_w * den[i];
        gd[i] = ks * s_d[i] + g_s * ds_d[i] + kw * w_d[i] + h_w * dw_d[i] + kl * e[i] + g_l * de[i];
    }
    Some([gr, [-gr[0] - gd[0], -gr[1] - gd[1]], gd])
}

/// `phi(x) = x + sqrt(1 - 2x)` on `[0, 1/2]`.
pub fn phi(x: f64) -> f64 {
    x + (1.0 - 2.0 * x).max(0.0).sqrt()
}

/// Lower bound on the inradius/circumradius ratio implied by `f(Q) = f_value`.
pub fn psi(f_value: f64, beta1: f64, beta3: f64, qref_frobenius: f64) -> f64 {
    if beta3 <= 0.0 {
        return 0.0;
    }
    let lmax = 2.0 * (f_value / beta3).sqrt() + std::f64::consts::SQRT_2 * qref_frobenius;
    4.0 * PI * beta1.powi(3) / (lmax.powi(3) * f_value.powi(3))
}

/// Upper bound on `|cos θ|` implied by `f(Q) = f_value`.
pub fn cos_bound(f_value: f64, beta1: f64, beta3: f64, qref_frobenius: f64) -> f64 {
    phi(psi(f_value, beta1, beta3, qref_frobenius).min(0.5))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub value: f64,
    pub bound: f64,
    /// `true` when `value >= bound`, `false` when `value <= bound` is required.
    pub lower: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Evaluate the triangle bounds that follow from a bound on `f`.
pub fn triangle_bounds(
    q: &VertexConfiguration,
    face: [usize; 3],
    f_value: f64,
    beta1: f64,
    beta3: f64,
    qref_frobenius: f64,
) -> Result<BoundReport, GeometryError> {
    if !(f_value > 0.0) {
        return Err(GeometryError::NonPositiveValue(f_value));
    }
    let tq = triangle_quantities(q, face);
    let a = tq.signed_area;
    let min_h = tq
        .heights
        .map_or(0.0, |h| h.iter().copied().fold(f64::INFINITY, f64::min));
    let r = tq.inradius.unwrap_or(0.0);
    let ratio = match (tq.inradius, tq.circumradius) {
        (Some(r), Some(rr)) => r / rr,
        _ => 0.0,
    };
    let min_l = tq
        .edge_lengths
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let max_l = tq.edge_lengths.iter().copied().fold(0.0, f64::max);
    let max_cos = tq
        .cos_angles
        .map_or(1.0, |c| c.iter().map(|x| x.abs()).fold(0.0, f64::max));
    let l_upper = if beta3 > 0.0 {
        2.0 * (f_value / beta3).sqrt() + std::f64::consts::SQRT_2 * qref_frobenius
    } else {
        f64::INFINITY
    };
    let slack = 1e-12;
    let lower = |name, value: f64, bound: f64| BoundCheck {
        name,
        value,
        bound,
        lower: true,
        holds: value >= bound * (1.0 - slack),
    };
    let upper = |name, value: f64, bound: f64| BoundCheck {
        name,
        value,
        bound,
        lower: false,
        holds: value <= bound * (1.0 + slack),
    };
    Ok(BoundReport {
        checks: vec![
            lower("height", min_h, beta1 / f_value),
            lower("inradius", r, beta1 / f_value),
            lower("edge_length_lower", min_l, 2.0 * beta1 / f_value),
            upper("edge_length_upper", max_l, l_upper),
            lower("area", a, PI * beta1 * beta1 / (f_value * f_value)),
            lower(
                "radius_ratio",
                ratio,
                psi(f_value, beta1, beta3, qref_frobenius),
            ),
            upper(
                "cos_angle",
                max_cos,
                cos_bound(f_value, beta1, beta3, qref_frobenius),
            ),
        ],
    })
}
