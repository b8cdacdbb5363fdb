//! The proper function on admissible meshes, its regularization and the
//! augmented metric built from its gradient.

use thiserror::Error;

use crate::admissibility::is_in_mplus;
use crate::augmented::{fd_directional, AugmentedMetric, DomainError, MetricAt};
use crate::geometry::{
    dist_vertex_edge_1norm, regularized_distance_hessian_vec, regularized_distance_points,
    signed_area_gradient, signed_area_points, Point, VertexConfiguration,
};
use crate::simplicial::ConnectivityComplex;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("expected {expected} coordinates, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// C³ cut-off: `χ(s) = 0` for `s ≤ lower`, `χ(s) = s` for `s ≥ upper`,
/// degree-7 blend in between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cutoff {
    lower: f64,
    upper: f64,
}

impl Cutoff {
    pub fn new(lower: f64, upper: f64) -> Result<Self, MetricError> {
        if !(lower > 0.0 && lower < upper && upper.is_finite()) {
            return Err(MetricError::InvalidParameter(format!(
                "cut-off needs 0 < lower < upper, got ({lower}, {upper})"
            )));
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// `χ` and its first three derivatives.
    pub fn eval(&self, s: f64) -> [f64; 4] {
        if s <= self.lower {
            return [0.0; 4];
        }
        if s >= self.upper {
            return [s, 1.0, 0.0, 0.0];
        }
        let d = self.upper - self.lower;
        let t = (s - self.lower) / d;
        let t2 = t * t;
        let t3 = t2 * t;
        let t4 = t3 * t;
        let sv = t4 * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
        let s1 = t3 * (140.0 + t * (-420.0 + t * (420.0 - 140.0 * t)));
        let s2 = t2 * (420.0 + t * (-1680.0 + t * (2100.0 - 840.0 * t)));
        let s3 = t * (840.0 + t * (-5040.0 + t * (8400.0 - 4200.0 * t)));
        let tv = t4 * (-15.0 + t * (39.0 + t * (-34.0 + 10.0 * t)));
        let tp1 = t3 * (-60.0 + t * (195.0 + t * (-204.0 + 70.0 * t)));
        let tp2 = t2 * (-180.0 + t * (780.0 + t * (-1020.0 + 420.0 * t)));
        let tp3 = t * (-360.0 + t * (2340.0 + t * (-4080.0 + 2100.0 * t)));
        let hi = self.upper;
        [
            hi * sv + d * tv,
            (hi * s1 + d * tp1) / d,
            (hi * s2 + d * tp2) / (d * d),
            (hi * s3 + d * tp3) / (d * d * d),
        ]
    }
}

#[inline]
fn cut(c: Option<Cutoff>, s: f64) -> [f64; 3] {
    match c {
        Some(c) => {
            let e = c.eval(s);
            [e[0], e[1], e[2]]
        }
        None => [s, 1.0, 0.0],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricParams {
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
    pub mu: f64,
    /// Applied to each `β₁ / h` term.
    pub cutoff_heights: Option<Cutoff>,
    /// Applied to each `β₂ / d^μ` term.
    pub cutoff_distances: Option<Cutoff>,
    pub qref: VertexConfiguration,
}

impl MetricParams {
    /// `β₁ = β₃ = 1`, `β₂ = 0`, `μ = 100`, no cut-offs.
    pub fn new(qref: VertexConfiguration) -> Self {
        Self {
            beta1: 1.0,
            beta2: 0.0,
            beta3: 1.0,
            mu: 100.0,
            cutoff_heights: None,
            cutoff_distances: None,
            qref,
        }
    }

    /// All weights zero: the Euclidean metric.
    pub fn euclidean(qref: VertexConfiguration) -> Self {
        Self::new(qref).with_betas(0.0, 0.0, 0.0)
    }

    pub fn with_betas(mut self, beta1: f64, beta2: f64, beta3: f64) -> Self {
        self.beta1 = beta1;
        self.beta2 = beta2;
        self.beta3 = beta3;
        self
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = mu;
        self
    }

    pub fn with_cutoffs(mut self, heights: Option<Cutoff>, distances: Option<Cutoff>) -> Self {
        self.cutoff_heights = heights;
        self.cutoff_distances = distances;
        self
    }

    pub fn validate(&self) -> Result<(), MetricError> {
        for (name, b) in [
            ("beta1", self.beta1),
            ("beta2", self.beta2),
            ("beta3", self.beta3),
        ] {
            if !(b >= 0.0 && b.is_finite()) {
                return Err(MetricError::InvalidParameter(format!(
                    "{name} must be non-negative, got {b}"
                )));
            }
        }
        if !(self.mu >= 1.0 && self.mu.is_finite()) {
            return Err(MetricError::InvalidParameter(format!(
                "mu must be at least 1, got {}",
                self.mu
            )));
        }
        Ok(())
    }
}

/// The proper function of a fixed complex and parameter set, viewed as a
/// function of the flat coordinates `x0, y0, x1, y1, ...`.
#[derive(Debug, Clone)]
pub struct MeshMetric {
    complex: ConnectivityComplex,
    params: MetricParams,
    boundary_pairs: Vec<(usize, [usize; 2])>,
}

/// Boundary vertex / boundary edge pairs with the vertex not on the edge.
pub fn boundary_pairs(complex: &ConnectivityComplex) -> Vec<(usize, [usize; 2])> {
    let fc = complex.classify_faces();
    let mut out = Vec::new();
    for e in &fc.boundary_edges {
        for &v in &fc.boundary_vertices {
            if v != e[0] && v != e[1] {
                out.push((v, *e));
            }
        }
    }
    out
}

#[inline]
fn pt(q: &[f64], i: usize) -> Point {
    [q[2 * i], q[2 * i + 1]]
}

#[inline]
fn add_to(g: &mut [f64], i: usize, v: Point, s: f64) {
    g[2 * i] += s * v[0];
    g[2 * i + 1] += s * v[1];
}

impl MeshMetric {
    pub fn new(complex: ConnectivityComplex, params: MetricParams) -> Result<Self, MetricError> {
        params.validate()?;
        if params.qref.len() != complex.num_vertices() {
            return Err(MetricError::SizeMismatch {
                expected: complex.num_vertices(),
                got: params.qref.len(),
            });
        }
        let boundary_pairs = boundary_pairs(&complex);
        Ok(Self {
            complex,
            params,
            boundary_pairs,
        })
    }

    pub fn complex(&self) -> &ConnectivityComplex {
        &self.complex
    }

    pub fn params(&self) -> &MetricParams {
        &self.params
    }

    pub fn boundary_pair_list(&self) -> &[(usize, [usize; 2])] {
        &self.boundary_pairs
    }

    fn check_len(&self, q: &[f64]) -> Result<(), MetricError> {
        let expected = 2 * self.complex.num_vertices();
        if q.len() == expected {
            Ok(())
        } else {
            Err(MetricError::SizeMismatch {
                expected,
                got: q.len(),
            })
        }
    }

    fn area(&self, q: &[f64], k: usize) -> Result<f64, DomainError> {
        let t = self.complex.triangle(k);
        let a = signed_area_points(pt(q, t[0]), pt(q, t[1]), pt(q, t[2]));
        if a > 0.0 {
            Ok(a)
        } else {
            Err(DomainError(format!(
                "triangle {} has signed area {a}",
                k + 1
            )))
        }
    }

    fn quadratic_value(&self, q: &[f64]) -> f64 {
        let r = self.params.qref.as_flat();
        0.5 * self.params.beta3 * q.iter().zip(r).map(|(a, b)| (a - b) * (a - b)).sum::<f64>()
    }

    /// `f` with the exact 1-norm distances and no cut-offs.
    pub fn f_exact(&self, q: &VertexConfiguration) -> Result<f64, MetricError> {
        let x = q.as_flat();
        self.check_len(x)?;
        let p = &self.params;
        let mut total = 0.0;
        if p.beta1 > 0.0 {
            for k in 0..self.complex.num_triangles() {
                let a = self.area(x, k)?;
                let t = self.complex.triangle(k);
                let perimeter: f64 =
                    crate::geometry::edge_lengths_points(pt(x, t[0]), pt(x, t[1]), pt(x, t[2]))
                        .iter()
                        .sum();
                total += p.beta1 * perimeter / (2.0 * a);
            }
        }
        if p.beta2 > 0.0 {
            for &(v, e) in &self.boundary_pairs {
                let d = dist_vertex_edge_1norm(q, v, e).map_err(|err| {
                    DomainError(format!("distance of vertex {} to edge: {err}", v + 1))
                })?;
                if d <= 0.0 {
                    return Err(DomainError(format!(
                        "vertex {} touches edge {:?}",
                        v + 1,
                        [e[0] + 1, e[1] + 1]
                    ))
                    .into());
                }
                total += p.beta2 / d;
            }
        }
        if p.beta3 > 0.0 {
            total += self.quadratic_value(x);
        }
        Ok(total)
    }

    fn f_mu_flat(&self, q: &[f64]) -> Result<f64, DomainError> {
        let p = &self.params;
        let mut total = 0.0;
        if p.beta1 > 0.0 {
            for k in 0..self.complex.num_triangles() {
                let a = self.area(q, k)?;
                let t = self.complex.triangle(k);
                let lengths =
                    crate::geometry::edge_lengths_points(pt(q, t[0]), pt(q, t[1]), pt(q, t[2]));
                for l in lengths {
                    total += cut(p.cutoff_heights, p.beta1 * l / (2.0 * a))[0];
                }
            }
        }
        if p.beta2 > 0.0 {
            for &(v, e) in &self.boundary_pairs {
                let d = self.regularized_distance(q, v, e)?.0;
                total += cut(p.cutoff_distances, p.beta2 / d)[0];
            }
        }
        if p.beta3 > 0.0 {
            total += self.quadratic_value(q);
        }
        Ok(total)
    }

    fn regularized_distance(
        &self,
        q: &[f64],
        v: usize,
        e: [usize; 2],
    ) -> Result<(f64, [Point; 3]), DomainError> {
        match regularized_distance_points(pt(q, v), pt(q, e[0]), pt(q, e[1]), self.params.mu) {
            Some((d, g)) if d > 0.0 => Ok((d, g)),
            Some(_) => Err(DomainError(format!(
                "vertex {} touches edge {:?}",
                v + 1,
                [e[0] + 1, e[1] + 1]
            ))),
            None => Err(DomainError(format!(
                "edge {:?} has zero length",
                [e[0] + 1, e[1] + 1]
            ))),
        }
    }

    fn add_height_gradient(&self, q: &[f64], g: &mut [f64]) -> Result<(), DomainError> {
        let p = &self.params;
        for k in 0..self.complex.num_triangles() {
            let a = self.area(q, k)?;
            let t = self.complex.triangle(k);
            let pts = [pt(q, t[0]), pt(q, t[1]), pt(q, t[2])];
            let ga = signed_area_gradient(pts[0], pts[1], pts[2]);
            for l in 0..3 {
                let (ia, ib) = ((l + 1) % 3, (l + 2) % 3);
                let d = [pts[ib][0] - pts[ia][0], pts[ib][1] - pts[ia][1]];
                let len = d[0].hypot(d[1]);
                let e = [d[0] / len, d[1] / len];
                let inv_h = len / (2.0 * a);
                let c = p.beta1 * cut(p.cutoff_heights, p.beta1 * inv_h)[1];
                add_to(g, t[ib], e, c / (2.0 * a));
                add_to(g, t[ia], e, -c / (2.0 * a));
                for v in 0..3 {
                    add_to(g, t[v], ga[v], -c * len / (2.0 * a * a));
                }
            }
        }
        Ok(())
    }

    fn add_height_hessian_vec(
        &self,
        q: &[f64],
        w: &[f64],
        out: &mut [f64],
    ) -> Result<(), DomainError> {
        let p = &self.params;
        for k in 0..self.complex.num_triangles() {
            let a = self.area(q, k)?;
            let t = self.complex.triangle(k);
            let pts = [pt(q, t[0]), pt(q, t[1]), pt(q, t[2])];
            let ws = [pt(w, t[0]), pt(w, t[1]), pt(w, t[2])];
            let ga = signed_area_gradient(pts[0], pts[1], pts[2]);
            // the area is quadratic, so its Hessian applied to w is its gradient formula at w
            let hga = signed_area_gradient(ws[0], ws[1], ws[2]);
            let aw: f64 = (0..3)
                .map(|v| ga[v][0] * ws[v][0] + ga[v][1] * ws[v][1])
                .sum();
            for l in 0..3 {
                let (ia, ib) = ((l + 1) % 3, (l + 2) % 3);
                let d = [pts[ib][0] - pts[ia][0], pts[ib][1] - pts[ia][1]];
                let len = d[0].hypot(d[1]);
                let e = [d[0] / len, d[1] / len];
                let dw = [ws[ib][0] - ws[ia][0], ws[ib][1] - ws[ia][1]];
                let lw = e[0] * dw[0] + e[1] * dw[1];
                let hl = [(dw[0] - e[0] * lw) / len, (dw[1] - e[1] * lw) / len];
                let inv_h = len / (2.0 * a);
                let tw = lw / (2.0 * a) - len * aw / (2.0 * a * a);
                let chi = cut(p.cutoff_heights, p.beta1 * inv_h);
                let c1 = p.beta1 * chi[1];
                let c2 = p.beta1 * p.beta1 * chi[2] * tw;
                let a2 = a * a;
                let a3 = a2 * a;
                // c1 * D_w ∇τ
                let s_l = c1 / (2.0 * a);
                add_to(out, t[ib], hl, s_l);
                add_to(out, t[ia], hl, -s_l);
                let s_e = -c1 * aw / (2.0 * a2);
                add_to(out, t[ib], e, s_e);
                add_to(out, t[ia], e, -s_e);
                for v in 0..3 {
                    add_to(out, t[v], ga[v], -c1 * lw / (2.0 * a2) + c1 * len * aw / a3);
                    add_to(out, t[v], hga[v], -c1 * len / (2.0 * a2));
                }
                // c2 * ∇τ
                if c2 != 0.0 {
                    add_to(out, t[ib], e, c2 / (2.0 * a));
                    add_to(out, t[ia], e, -c2 / (2.0 * a));
                    for v in 0..3 {
                        add_to(out, t[v], ga[v], -c2 * len / (2.0 * a2));
                    }
                }
            }
        }
        Ok(())
    }

    fn add_distance_gradient(&self, q: &[f64], g: &mut [f64]) -> Result<(), DomainError> {
        let p = &self.params;
        for &(v, e) in &self.boundary_pairs {
            let (d, dg) = self.regularized_distance(q, v, e)?;
            let c = -p.beta2 * cut(p.cutoff_distances, p.beta2 / d)[1] / (d * d);
            add_to(g, v, dg[0], c);
            add_to(g, e[0], dg[1], c);
            add_to(g, e[1], dg[2], c);
        }
        Ok(())
    }

    fn add_distance_hessian_vec(
        &self,
        q: &[f64],
        w: &[f64],
        out: &mut [f64],
    ) -> Result<(), DomainError> {
        let p = &self.params;
        for &(v, e) in &self.boundary_pairs {
            let (d, dg) = self.regularized_distance(q, v, e)?;
            let dir = [pt(w, v), pt(w, e[0]), pt(w, e[1])];
            let hd =
                regularized_distance_hessian_vec(pt(q, v), pt(q, e[0]), pt(q, e[1]), p.mu, dir)
                    .expect("edge length checked above");
            let dd: f64 = (0..3)
                .map(|k| dg[k][0] * dir[k][0] + dg[k][1] * dir[k][1])
                .sum();
            let chi = cut(p.cutoff_distances, p.beta2 / d);
            let c = -p.beta2 * chi[1] / (d * d);
            let du = -p.beta2 * dd / (d * d);
            let dc = -p.beta2 * chi[2] * du / (d * d) + 2.0 * p.beta2 * chi[1] * dd / (d * d * d);
            for (k, &i) in [v, e[0], e[1]].iter().enumerate() {
                add_to(out, i, dg[k], dc);
                add_to(out, i, hd[k], c);
            }
        }
        Ok(())
    }

    fn grad_flat(&self, q: &[f64]) -> Result<Vec<f64>, DomainError> {
        let p = &self.params;
        let mut g = vec![0.0; q.len()];
        if p.beta1 > 0.0 {
            self.add_height_gradient(q, &mut g)?;
        }
        if p.beta2 > 0.0 {
            self.add_distance_gradient(q, &mut g)?;
        }
        if p.beta3 > 0.0 {
            for (gi, (a, b)) in g.iter_mut().zip(q.iter().zip(p.qref.as_flat())) {
                *gi += p.beta3 * (a - b);
            }
        }
        Ok(g)
    }

    fn hessian_vec_flat(&self, q: &[f64], w: &[f64]) -> Result<Vec<f64>, DomainError> {
        let p = &self.params;
        let mut out = vec![0.0; q.len()];
        if p.beta1 > 0.0 {
            self.add_height_hessian_vec(q, w, &mut out)?;
        }
        if p.beta2 > 0.0 {
            self.add_distance_hessian_vec(q, w, &mut out)?;
        }
        if p.beta3 > 0.0 {
            for (o, wi) in out.iter_mut().zip(w) {
                *o += p.beta3 * wi;
            }
        }
        Ok(out)
    }

    /// Regularized proper function, with cut-offs if configured.
    pub fn f_mu(&self, q: &VertexConfiguration) -> Result<f64, MetricError> {
        self.check_len(q.as_flat())?;
        Ok(self.f_mu_flat(q.as_flat())?)
    }

    /// Gradient of [`MeshMetric::f_mu`] in flat coordinates.
    pub fn grad_f_mu(&self, q: &VertexConfiguration) -> Result<Vec<f64>, MetricError> {
        self.check_len(q.as_flat())?;
        Ok(self.grad_flat(q.as_flat())?)
    }

    /// Hessian of [`MeshMetric::f_mu`] applied to `w`.
    pub fn hessian_vec_f_mu(
        &self,
        q: &VertexConfiguration,
        w: &[f64],
    ) -> Result<Vec<f64>, MetricError> {
        self.check_len(q.as_flat())?;
        self.check_len(w)?;
        Ok(self.hessian_vec_flat(q.as_flat(), w)?)
    }

    /// Finite-difference Hessian-vector product, for checking the analytic one.
    pub fn hessian_vec_fd(
        &self,
        q: &VertexConfiguration,
        w: &[f64],
    ) -> Result<Vec<f64>, MetricError> {
        self.check_len(q.as_flat())?;
        self.check_len(w)?;
        Ok(fd_directional(q.as_flat(), w, |x| self.grad_flat(x))?)
    }

    pub fn metric_at_config(&self, q: &VertexConfiguration) -> Result<MetricAt, MetricError> {
        Ok(MetricAt::new(self.grad_f_mu(q)?))
    }

    /// Smallest value over `s ∈ [0, 1]` of each triangle's signed area along
    /// `from + s (to - from)`, relative to the size of its coefficients.
    fn swept_areas_positive(&self, from: &[f64], to: &[f64]) -> bool {
        for t in self.complex.triangles() {
            let p = [pt(from, t[0]), pt(from, t[1]), pt(from, t[2])];
            let r = [pt(to, t[0]), pt(to, t[1]), pt(to, t[2])];
            let dp = [
                [r[0][0] - p[0][0], r[0][1] - p[0][1]],
                [r[1][0] - p[1][0], r[1][1] - p[1][1]],
                [r[2][0] - p[2][0], r[2][1] - p[2][1]],
            ];
            let u = [p[1][0] - p[0][0], p[1][1] - p[0][1]];
            let v = [p[2][0] - p[1][0], p[2][1] - p[1][1]];
            let du = [dp[1][0] - dp[0][0], dp[1][1] - dp[0][1]];
            let dv = [dp[2][0] - dp[1][0], dp[2][1] - dp[1][1]];
            let cr = |a: Point, b: Point| a[0] * b[1] - a[1] * b[0];
            let c0 = 0.5 * cr(u, v);
            let c1 = 0.5 * (cr(u, dv) + cr(du, v));
            let c2 = 0.5 * cr(du, dv);
            let mut min = c0.min(c0 + c1 + c2);
            if c2 > 0.0 {
                let s = -c1 / (2.0 * c2);
                if s > 0.0 && s < 1.0 {
                    min = min.min(c0 + s * (c1 + s * c2));
                }
            }
            if min <= 1e-10 * (c0.abs() + c1.abs() + c2.abs()) {
                return false;
            }
        }
        true
    }
}

impl AugmentedMetric for MeshMetric {
    fn dim(&self) -> usize {
        2 * self.complex.num_vertices()
    }

    fn value(&self, q: &[f64]) -> Result<f64, DomainError> {
        self.f_mu_flat(q)
    }

    fn gradient(&self, q: &[f64]) -> Result<Vec<f64>, DomainError> {
        self.grad_flat(q)
    }

    fn hessian_vec(&self, q: &[f64], w: &[f64]) -> Result<Vec<f64>, DomainError> {
        self.hessian_vec_flat(q, w)
    }

    fn is_admissible(&self, q: &[f64]) -> bool {
        match VertexConfiguration::from_flat(q) {
            Ok(cfg) => is_in_mplus(&self.complex, &cfg).is_ok_and(|r| r.is_admissible_oriented()),
            Err(_) => false,
        }
    }

    fn segment_admissible(&self, from: &[f64], to: &[f64]) -> bool {
        self.swept_areas_positive(from, to)
    }
}

pub fn f_exact(
    complex: &ConnectivityComplex,
    q: &VertexConfiguration,
    params: &MetricParams,
) -> Result<f64, MetricError> {
    MeshMetric::new(complex.clone(), params.clone())?.f_exact(q)
}

pub fn f_mu(
    complex: &ConnectivityComplex,
    q: &VertexConfiguration,
    params: &MetricParams,
) -> Result<f64, MetricError> {
    MeshMetric::new(complex.clone(), params.clone())?.f_mu(q)
}

pub fn grad_f_mu(
    complex: &ConnectivityComplex,
    q: &VertexConfiguration,
    params: &MetricParams,
) -> Result<Vec<f64>, MetricError> {
    MeshMetric::new(complex.clone(), params.clone())?.grad_f_mu(q)
}

pub fn hessian_vec_f_mu(
    complex: &ConnectivityComplex,
    q: &VertexConfiguration,
    params: &MetricParams,
    w: &[f64],
) -> Result<Vec<f64>, MetricError> {
    MeshMetric::new(complex.clone(), params.clone())?.hessian_vec_f_mu(q, w)
}

pub fn metric_at(
    complex: &ConnectivityComplex,
    q: &VertexConfiguration,
    params: &MetricParams,
) -> Result<MetricAt, MetricError> {
    MeshMetric::new(complex.clone(), params.clone())?.metric_at_config(q)
}
