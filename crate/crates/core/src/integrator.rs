//! Störmer–Verlet integration of the geodesic equation in Hamiltonian form,
//! `H(q, p) = ½ pᵀ g(q)⁻¹ p`.

use std::fmt;

use thiserror::Error;

use crate::augmented::{norm, AugmentedMetric, DomainError, MetricAt};
use crate::geometry::{Point, VertexConfiguration};
use crate::metric::{MeshMetric, MetricError, MetricParams};
use crate::simplicial::ConnectivityComplex;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Relative tolerance of the fixed-point iterations.
    pub tol: f64,
    pub max_iter: usize,
    /// Full admissibility test every `check_every` steps (0: final step only).
    pub check_every: usize,
    /// Keep every `store_every`-th state; the final state is always kept.
    pub store_every: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 100,
            check_every: 1,
            store_every: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    P,
    Q,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::P => "momentum",
            Which::Q => "position",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntegrationError {
    #[error("{which} fixed-point iteration diverged at step {step} (residual {residual:e})")]
    FixedPointDiverged {
        step: usize,
        which: Which,
        residual: f64,
    },
    #[error("state left the admissible set at step {step}")]
    InadmissibleState { step: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl From<MetricError> for IntegrationError {
    fn from(e: MetricError) -> Self {
        IntegrationError::InvalidInput(e.to_string())
    }
}

/// A failed run together with everything computed before the failure.
#[derive(Clone)]
pub struct IntegrationFailure {
    pub error: IntegrationError,
    pub partial: Box<GeodesicTrajectory>,
}

impl fmt::Debug for IntegrationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegrationFailure")
            .field("error", &self.error)
            .field("steps_completed", &self.partial.steps_completed())
            .finish_non_exhaustive()
    }
}

impl fmt::Display for IntegrationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.error)
    }
}

impl std::error::Error for IntegrationFailure {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.error)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StepDiagnostics {
    pub fp_iters_p: usize,
    pub fp_iters_q: usize,
}

/// Stored states of a run. `hamiltonian_log` and `diagnostics` cover every
/// step; the state vectors only the stored ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GeodesicTrajectory {
    pub dt: f64,
    pub step_indices: Vec<usize>,
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
    pub momenta: Vec<Vec<f64>>,
    /// Entry `n` is the Hamiltonian after step `n`.
    pub hamiltonian_log: Vec<f64>,
    /// Entry `n - 1` belongs to step `n`.
    pub diagnostics: Vec<StepDiagnostics>,
}

impl GeodesicTrajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn final_state(&self) -> &[f64] {
        self.states.last().map_or(&[], Vec::as_slice)
    }

    /// Number of completed steps.
    pub fn steps_completed(&self) -> usize {
        self.diagnostics.len()
    }

    /// Stored state `k` as a vertex configuration.
    pub fn configuration(&self, k: usize) -> VertexConfiguration {
        VertexConfiguration::from_flat(&self.states[k]).expect("finite state")
    }

    pub fn final_configuration(&self) -> VertexConfiguration {
        self.configuration(self.states.len() - 1)
    }

    /// `max_n |H_n − H_0| / H_0`, or absolute drift when `H_0 = 0`.
    pub fn max_relative_energy_drift(&self) -> f64 {
        let Some(&h0) = self.hamiltonian_log.first() else {
            return 0.0;
        };
        let scale = if h0 != 0.0 { h0.abs() } else { 1.0 };
        self.hamiltonian_log
            .iter()
            .map(|h| (h - h0).abs() / scale)
            .fold(0.0, f64::max)
    }

    fn push(&mut self, step: usize, q: &[f64], v: Vec<f64>, p: &[f64]) {
        self.step_indices.push(step);
        self.times.push(step as f64 * self.dt);
        self.states.push(q.to_vec());
        self.velocities.push(v);
        self.momenta.push(p.to_vec());
    }
}

/// `½ pᵀ g⁻¹ p`.
pub fn hamiltonian(metric: &MetricAt, p: &[f64]) -> f64 {
    metric.hamiltonian(p)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoint {
    pub x: Vec<f64>,
    pub iterations: usize,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FixedPointError<E> {
    #[error("no convergence after {iterations} iterations (last update {residual:e})")]
    Diverged { residual: f64, iterations: usize },
    #[error("map failed: {0}")]
    Map(E),
}

/// Iterate `x ← map(x)` until `|x_{k+1} − x_k| ≤ tol (1 + |x_k|)`.
pub fn fixed_point_solve<E, F>(
    mut map: F,
    x0: Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<FixedPoint, FixedPointError<E>>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>, E>,
{
    let mut x = x0;
    let mut residual = f64::INFINITY;
    for k in 1..=max_iter {
        let next = map(&x).map_err(FixedPointError::Map)?;
        let step: f64 = next
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        if !step.is_finite() {
            return Err(FixedPointError::Diverged {
                residual: step,
                iterations: k,
            });
        }
        let bound = tol * (1.0 + norm(&x));
        x = next;
        residual = step;
        if step <= bound {
            return Ok(FixedPoint { x, iterations: k });
        }
    }
    Err(FixedPointError::Diverged {
        residual,
        iterations: max_iter,
    })
}

fn axpy(x: &[f64], a: f64, y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(u, v)| u + a * v).collect()
}

/// Integrate the geodesic through `q0` with initial velocity `v0` on
/// `[0, t_final]` with `n_steps` steps, for any augmented metric.
pub fn integrate<M: AugmentedMetric + ?Sized>(
    system: &M,
    q0: &[f64],
    v0: &[f64],
    t_final: f64,
    n_steps: usize,
    opts: &SolverOptions,
) -> Result<GeodesicTrajectory, IntegrationFailure> {
    let dt = t_final / n_steps as f64;
    let mut traj = GeodesicTrajectory {
        dt,
        ..Default::default()
    };
    let fail = |error, traj: GeodesicTrajectory| IntegrationFailure {
        error,
        partial: Box::new(traj),
    };
    if q0.len() != system.dim() || v0.len() != system.dim() {
        let msg = format!(
            "expected {} coordinates, got {} and {}",
            system.dim(),
            q0.len(),
            v0.len()
        );
        return Err(fail(IntegrationError::InvalidInput(msg), traj));
    }
    if n_steps == 0 || !(dt > 0.0) || !dt.is_finite() {
        let msg = format!("need T > 0 and N >= 1, got T = {t_final}, N = {n_steps}");
        return Err(fail(IntegrationError::InvalidInput(msg), traj));
    }
    if !system.is_admissible(q0) {
        return Err(fail(IntegrationError::InadmissibleState { step: 0 }, traj));
    }
    let mut m = match system.metric_at(q0) {
        Ok(m) => m,
        Err(_) => return Err(fail(IntegrationError::InadmissibleState { step: 0 }, traj)),
    };
    let mut q = q0.to_vec();
    let mut p = m.apply(v0);
    traj.hamiltonian_log.push(m.hamiltonian(&p));
    traj.push(0, &q, v0.to_vec(), &p);

    let half = 0.5 * dt;
    for step in 1..=n_steps {
        let inadmissible = IntegrationError::InadmissibleState { step };

        let p_half = fixed_point_solve::<DomainError, _>(
            |x| Ok(axpy(&p, half, &m.dg_contraction(system, &q, x)?)),
            p.clone(),
            opts.tol,
            opts.max_iter,
        );
        let p_half = match p_half {
            Ok(fp) => fp,
            Err(FixedPointError::Diverged { residual, .. }) => {
                return Err(fail(
                    IntegrationError::FixedPointDiverged {
                        step,
                        which: Which::P,
                        residual,
                    },
                    traj,
                ))
            }
            Err(FixedPointError::Map(_)) => return Err(fail(inadmissible, traj)),
        };
        let iters_p = p_half.iterations;
        let p_half = p_half.x;

        let v_base = m.inv_apply(&p_half);
        let predictor = axpy(&q, dt, &v_base);
        let q_new = fixed_point_solve::<DomainError, _>(
            |x| {
                let mx = system.metric_at(x)?;
                let vx = mx.inv_apply(&p_half);
                Ok(q.iter()
                    .zip(v_base.iter().zip(&vx))
                    .map(|(qi, (a, b))| qi + half * (a + b))
                    .collect())
            },
            predictor,
            opts.tol,
            opts.max_iter,
        );
        let q_new = match q_new {
            Ok(fp) => fp,
            Err(FixedPointError::Diverged { residual, .. }) => {
                return Err(fail(
                    IntegrationError::FixedPointDiverged {
                        step,
                        which: Which::Q,
                        residual,
                    },
                    traj,
                ))
            }
            Err(FixedPointError::Map(_)) => return Err(fail(inadmissible, traj)),
        };
        let iters_q = q_new.iterations;
        let q_new = q_new.x;

        if !system.segment_admissible(&q, &q_new) {
            return Err(fail(inadmissible, traj));
        }
        let full_check = (opts.check_every > 0 && step % opts.check_every == 0) || step == n_steps;
        if full_check && !system.is_admissible(&q_new) {
            return Err(fail(inadmissible, traj));
        }
        let m_new = match system.metric_at(&q_new) {
            Ok(mm) => mm,
            Err(_) => return Err(fail(inadmissible, traj)),
        };
        let force = match m_new.dg_contraction(system, &q_new, &p_half) {
            Ok(f) => f,
            Err(_) => return Err(fail(inadmissible, traj)),
        };
        p = axpy(&p_half, half, &force);
        q = q_new;
        m = m_new;

        traj.hamiltonian_log.push(m.hamiltonian(&p));
        traj.diagnostics.push(StepDiagnostics {
            fp_iters_p: iters_p,
            fp_iters_q: iters_q,
        });
        let store = step == n_steps || (opts.store_every > 0 && step % opts.store_every == 0);
        if store {
            let v = m.inv_apply(&p);
            traj.push(step, &q, v, &p);
        }
    }
    Ok(traj)
}

/// Geodesic of the mesh metric through `q0` with initial tangent `v0`.
pub fn stormer_verlet(
    complex: &ConnectivityComplex,
    q0: &VertexConfiguration,
    v0: &[Point],
    params: &MetricParams,
    t_final: f64,
    n_steps: usize,
    opts: &SolverOptions,
) -> Result<GeodesicTrajectory, IntegrationFailure> {
    let system =
        MeshMetric::new(complex.clone(), params.clone()).map_err(|e| IntegrationFailure {
            error: e.into(),
            partial: Box::default(),
        })?;
    integrate(
        &system,
        q0.as_flat(),
        v0.as_flattened(),
        t_final,
        n_steps,
        opts,
    )
}

/// `exp_Q(V)`: the geodesic at time 1, computed with `n_steps` steps.
pub fn exponential_map(
    complex: &ConnectivityComplex,
    q: &VertexConfiguration,
    v: &[Point],
    params: &MetricParams,
    n_steps: usize,
) -> Result<VertexConfiguration, IntegrationFailure> {
    let opts = SolverOptions {
        store_every: 0,
        ..Default::default()
    };
    stormer_verlet(complex, q, v, params, 1.0, n_steps, &opts).map(|t| t.final_configuration())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixed_point_of_affine_contraction() {
        let fp = fixed_point_solve::<(), _>(|x| Ok(vec![0.5 * x[0] + 1.0]), vec![0.0], 1e-12, 100)
            .unwrap();
        assert!((fp.x[0] - 2.0).abs() < 1e-11);
        assert!(fp.iterations > 30);
        let err = fixed_point_solve::<(), _>(|x| Ok(vec![2.0 * x[0] + 1.0]), vec![0.0], 1e-12, 50)
            .unwrap_err();
        assert!(matches!(
            err,
            FixedPointError::Diverged { iterations: 50, .. }
        ));
        let err = fixed_point_solve::<&str, _>(|_| Err("boom"), vec![0.0], 1e-12, 50).unwrap_err();
        assert_eq!(err, FixedPointError::Map("boom"));
    }

    #[test]
    fn identity_metric_moves_in_straight_lines() {
        let (c, q) = fixtures::cross_mesh();
        let v = vec![
            [0.1, 0.0],
            [0.0, 0.05],
            [-0.02, 0.0],
            [0.0, 0.0],
            [0.03, 0.03],
        ];
        let p = MetricParams::euclidean(q.clone());
        let traj = stormer_verlet(&c, &q, &v, &p, 3.0, 1000, &SolverOptions::default()).unwrap();
        for (k, s) in traj.states.iter().enumerate() {
            let t = traj.times[k];
            let expect = q.displaced(&v, t);
            for (a, b) in s.iter().zip(expect.as_flat()) {
                assert!((a - b).abs() <= 1e-12);
            }
        }
        assert!(traj
            .diagnostics
            .iter()
            .all(|d| d.fp_iters_p == 1 && d.fp_iters_q == 1));
        assert_eq!(traj.max_relative_energy_drift(), 0.0);
    }

    #[test]
    fn zero_tangent_stays_put() {
        let (c, q) = fixtures::hex_fan();
        let p = MetricParams::new(q.clone());
        let out = exponential_map(&c, &q, &[[0.0; 2]; 7], &p, 10).unwrap();
        assert_eq!(out, q);
    }

    #[test]
    fn inadmissible_start_is_rejected() {
        let (c, q) = fixtures::cross_mesh();
        let bad = q.map(|p| [-p[0], p[1]]);
        let err = stormer_verlet(
            &c,
            &bad,
            &[[0.0; 2]; 5],
            &MetricParams::new(q),
            1.0,
            10,
            &SolverOptions::default(),
        )
        .unwrap_err();
        assert_eq!(err.error, IntegrationError::InadmissibleState { step: 0 });
    }

    #[test]
    fn euclidean_collapse_is_detected() {
        let (c, q) = fixtures::cross_mesh();
        let v = fixtures::cross_inward_tangent();
        let err = stormer_verlet(
            &c,
            &q,
            &v,
            &MetricParams::euclidean(q.clone()),
            1.0,
            100,
            &SolverOptions::default(),
        )
        .unwrap_err();
        let IntegrationError::InadmissibleState { step } = err.error else {
            panic!("{:?}", err.error)
        };
        // the bottom triangle collapses at t = 1/1.8
        let t = step as f64 * 0.01;
        assert!(t > 0.5 && t < 0.6, "{t}");
        assert_eq!(err.partial.steps_completed(), step - 1);
    }

    #[test]
    fn large_step_with_stiff_metric_diverges() {
        let (c, q) = fixtures::unit_square_crossed();
        let v: Vec<Point> = q
            .points()
            .iter()
            .map(|p| [-(p[0] - 0.5), -(p[1] - 0.5)])
            .collect();
        let p = MetricParams::new(q.clone()).with_betas(5.0, 0.0, 5.0);
        let mut diverged = false;
        for n in [100, 20, 8, 4, 2, 1] {
            match stormer_verlet(&c, &q, &v, &p, 3.0, n, &SolverOptions::default()) {
                Err(IntegrationFailure {
                    error: IntegrationError::FixedPointDiverged { .. },
                    ..
                }) => {
                    diverged = true;
                    break;
                }
                _ => continue,
            }
        }
        assert!(diverged);
    }

    #[test]
    fn store_every_thins_output() {
        let (c, q) = fixtures::cross_mesh();
        let v = vec![[0.1, 0.0]; 5];
        let opts = SolverOptions {
            store_every: 3,
            ..Default::default()
        };
        let traj =
            stormer_verlet(&c, &q, &v, &MetricParams::new(q.clone()), 1.0, 10, &opts).unwrap();
        assert_eq!(traj.step_indices, vec![0, 3, 6, 9, 10]);
        assert_eq!(traj.hamiltonian_log.len(), 11);
        assert_eq!(traj.diagnostics.len(), 10);
    }
}
