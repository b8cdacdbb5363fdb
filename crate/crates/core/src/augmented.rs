//! Metrics of the form `g = I + ∇f ∇fᵀ` on an open subset of `R^n`.
//!
//! [`AugmentedMetric`] is implemented by the mesh metric and by the line
//! metric; the integrator only talks to this trait.

use thiserror::Error;

/// A configuration outside the domain of the proper function.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("outside the domain: {0}")]
pub struct DomainError(pub String);

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Central finite difference of `grad` along `w`, step
/// `1e-6 (1 + |q|) / (1 + |w|)`.
pub fn fd_directional<F>(q: &[f64], w: &[f64], grad: F) -> Result<Vec<f64>, DomainError>
where
    F: Fn(&[f64]) -> Result<Vec<f64>, DomainError>,
{
    let h = 1e-6 * (1.0 + norm(q)) / (1.0 + norm(w));
    let plus: Vec<f64> = q.iter().zip(w).map(|(a, b)| a + h * b).collect();
    let minus: Vec<f64> = q.iter().zip(w).map(|(a, b)| a - h * b).collect();
    let gp = grad(&plus)?;
    let gm = grad(&minus)?;
    Ok(gp
        .iter()
        .zip(&gm)
        .map(|(a, b)| (a - b) / (2.0 * h))
        .collect())
}

pub trait AugmentedMetric: Sync {
    /// Dimension of the flat coordinate vector.
    fn dim(&self) -> usize;

    /// The proper function `f`.
    fn value(&self, q: &[f64]) -> Result<f64, DomainError>;

    fn gradient(&self, q: &[f64]) -> Result<Vec<f64>, DomainError>;

    /// Hessian of `f` applied to `w`. Defaults to finite differences of
    /// [`AugmentedMetric::gradient`].
    fn hessian_vec(&self, q: &[f64], w: &[f64]) -> Result<Vec<f64>, DomainError> {
        fd_directional(q, w, |x| self.gradient(x))
    }

    /// Full membership test for a state.
    fn is_admissible(&self, _q: &[f64]) -> bool {
        true
    }

    /// Cheap test that the straight segment between two accepted states
    /// does not leave the domain.
    fn segment_admissible(&self, _from: &[f64], _to: &[f64]) -> bool {
        true
    }

    fn metric_at(&self, q: &[f64]) -> Result<MetricAt, DomainError> {
        Ok(MetricAt::new(self.gradient(q)?))
    }
}

/// Metric data at one point: `u = ∇f`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricAt {
    grad: Vec<f64>,
    grad_sq: f64,
}

impl MetricAt {
    pub fn new(grad: Vec<f64>) -> Self {
        let grad_sq = dot(&grad, &grad);
        Self { grad, grad_sq }
    }

    pub fn grad(&self) -> &[f64] {
        &self.grad
    }

    pub fn dim(&self) -> usize {
        self.grad.len()
    }

    /// `g w = w + u (u·w)`.
    pub fn apply(&self, w: &[f64]) -> Vec<f64> {
        let s = dot(&self.grad, w);
        w.iter().zip(&self.grad).map(|(a, u)| a + u * s).collect()
    }

    /// `g⁻¹ w = w − u (u·w) / (1 + u·u)`.
    pub fn inv_apply(&self, w: &[f64]) -> Vec<f64> {
        let s = dot(&self.grad, w) / (1.0 + self.grad_sq);
        w.iter().zip(&self.grad).map(|(a, u)| a - u * s).collect()
    }

    /// `g(v, w)`.
    pub fn inner(&self, v: &[f64], w: &[f64]) -> f64 {
        dot(v, w) + dot(&self.grad, v) * dot(&self.grad, w)
    }

    /// `½ pᵀ g⁻¹ p`.
    pub fn hamiltonian(&self, p: &[f64]) -> f64 {
        let s = dot(&self.grad, p);
        0.5 * (dot(p, p) - s * s / (1.0 + self.grad_sq))
    }

    /// Components `½ ∂_a g_bd v^b v^d` with `v = g⁻¹ p`, which equal
    /// `(H v)_a (u·v)` for `g = I + u uᵀ`.
    pub fn dg_contraction<M: AugmentedMetric + ?Sized>(
        &self,
        system: &M,
        q: &[f64],
        p: &[f64],
    ) -> Result<Vec<f64>, DomainError> {
        let v = self.inv_apply(p);
        let uv = dot(&self.grad, &v);
        if uv == 0.0 {
            return Ok(vec![0.0; v.len()]);
        }
        let hv = system.hessian_vec(q, &v)?;
        Ok(hv.into_iter().map(|x| x * uv).collect())
    }
}
