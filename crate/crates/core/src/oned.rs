//! Ordered points on the line: a one-dimensional model of the mesh space.
//!
//! Configurations are strictly increasing vectors `q`. The proper function
//! `f(q) = Σ 1/(q^{i+1} − q^i) + (β/2)|q − q_ref|²` blows up when two
//! neighbours meet, and `g = I + ∇f ∇fᵀ` keeps geodesics ordered for all time.

use thiserror::Error;

use crate::augmented::{AugmentedMetric, DomainError, MetricAt};
use crate::integrator::{integrate, GeodesicTrajectory, IntegrationFailure, SolverOptions};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LineError {
    #[error("need at least two points")]
    TooFewPoints,
    #[error("points must be strictly increasing (violated at index {0})")]
    NotIncreasing(usize),
    #[error("reference has {0} entries, configuration has {1}")]
    SizeMismatch(usize, usize),
    #[error("beta must be non-negative, got {0}")]
    NegativeBeta(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineConfiguration {
    q: Vec<f64>,
    qref: Vec<f64>,
    beta: f64,
}

fn first_unordered(q: &[f64]) -> Option<usize> {
    q.windows(2).position(|w| !(w[0] < w[1]))
}

impl LineConfiguration {
    pub fn new(q: Vec<f64>, qref: Vec<f64>, beta: f64) -> Result<Self, LineError> {
        if q.len() < 2 {
            return Err(LineError::TooFewPoints);
        }
        if qref.len() != q.len() {
            return Err(LineError::SizeMismatch(qref.len(), q.len()));
        }
        if !(beta >= 0.0) {
            return Err(LineError::NegativeBeta(beta));
        }
        if let Some(i) = first_unordered(&q) {
            return Err(LineError::NotIncreasing(i));
        }
        Ok(Self { q, qref, beta })
    }

    /// Reference equal to the configuration itself.
    pub fn at_reference(q: Vec<f64>, beta: f64) -> Result<Self, LineError> {
        let qref = q.clone();
        Self::new(q, qref, beta)
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn qref(&self) -> &[f64] {
        &self.qref
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn metric(&self) -> LineMetric {
        LineMetric {
            qref: self.qref.clone(),
            beta: self.beta,
        }
    }
}

/// `f` as a function of the positions, for a fixed reference and weight.
#[derive(Debug, Clone, PartialEq)]
pub struct LineMetric {
    pub qref: Vec<f64>,
    pub beta: f64,
}

impl LineMetric {
    fn check(&self, q: &[f64]) -> Result<(), DomainError> {
        match first_unordered(q) {
            Some(i) => Err(DomainError(format!(
                "points {} and {} are not ordered",
                i + 1,
                i + 2
            ))),
            None => Ok(()),
        }
    }
}

impl AugmentedMetric for LineMetric {
    fn dim(&self) -> usize {
        self.qref.len()
    }

    fn value(&self, q: &[f64]) -> Result<f64, DomainError> {
        self.check(q)?;
        let gaps: f64 = q.windows(2).map(|w| 1.0 / (w[1] - w[0])).sum();
        let quad: f64 = q
            .iter()
            .zip(&self.qref)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        Ok(gaps + 0.5 * self.beta * quad)
    }

    fn gradient(&self, q: &[f64]) -> Result<Vec<f64>, DomainError> {
        self.check(q)?;
        let mut g: Vec<f64> = q
            .iter()
            .zip(&self.qref)
            .map(|(a, b)| self.beta * (a - b))
            .collect();
        for i in 0..q.len() - 1 {
            let e = q[i + 1] - q[i];
            let s = 1.0 / (e * e);
            g[i] += s;
            g[i + 1] -= s;
        }
        Ok(g)
    }

    fn hessian_vec(&self, q: &[f64], w: &[f64]) -> Result<Vec<f64>, DomainError> {
        self.check(q)?;
        let mut out: Vec<f64> = w.iter().map(|x| self.beta * x).collect();
        for i in 0..q.len() - 1 {
            let e = q[i + 1] - q[i];
            let c = 2.0 / (e * e * e) * (w[i + 1] - w[i]);
            out[i + 1] += c;
            out[i] -= c;
        }
        Ok(out)
    }

    fn is_admissible(&self, q: &[f64]) -> bool {
        first_unordered(q).is_none()
    }

    /// Gaps are affine along a segment, so positive ends suffice.
    fn segment_admissible(&self, from: &[f64], to: &[f64]) -> bool {
        self.is_admissible(from) && self.is_admissible(to)
    }
}

pub fn f_1d(config: &LineConfiguration) -> f64 {
    config
        .metric()
        .value(&config.q)
        .expect("ordered configuration")
}

pub fn grad_f_1d(config: &LineConfiguration) -> Vec<f64> {
    config
        .metric()
        .gradient(&config.q)
        .expect("ordered configuration")
}

pub fn metric_1d(config: &LineConfiguration) -> MetricAt {
    MetricAt::new(grad_f_1d(config))
}

/// Geodesic acceleration for two points and `β = 0`:
/// `(−c (Δq̇)², c (Δq̇)²)` with `c = 2 / (ε⁵ + 2ε)`, `ε = q² − q¹`.
pub fn christoffel_1d_n2(q: [f64; 2], qdot: [f64; 2]) -> [f64; 2] {
    let e = q[1] - q[0];
    let c = 2.0 / (e.powi(5) + 2.0 * e);
    let dv = qdot[1] - qdot[0];
    [-c * dv * dv, c * dv * dv]
}

pub fn geodesic_1d(
    config: &LineConfiguration,
    v0: &[f64],
    t_final: f64,
    n_steps: usize,
    opts: &SolverOptions,
) -> Result<GeodesicTrajectory, IntegrationFailure> {
    integrate(&config.metric(), &config.q, v0, t_final, n_steps, opts)
}
