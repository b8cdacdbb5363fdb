//! Preset tangent fields, parameter sweeps and trajectory reports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::admissibility::aspect_ratio;
use crate::geometry::{Point, VertexConfiguration};
use crate::integrator::{stormer_verlet, GeodesicTrajectory, SolverOptions};
use crate::io::{self, IoError, CSV_HEADER};
use crate::metric::MetricParams;
use crate::simplicial::ConnectivityComplex;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("unknown tangent preset {0:?} (expected translate, shear, scale or rotate)")]
    UnknownPreset(String),
    #[error("invalid experiment: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] IoError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetKind {
    Translate,
    Shear,
    Scale,
    Rotate,
}

impl FromStr for PresetKind {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "translate" | "translation" => Ok(Self::Translate),
            "shear" | "shearing" => Ok(Self::Shear),
            "scale" | "scaling" => Ok(Self::Scale),
            "rotate" | "rotation" => Ok(Self::Rotate),
            _ => Err(ExperimentError::UnknownPreset(s.to_string())),
        }
    }
}

/// Tangent field of magnitude `c`:
/// translate `(c, 0)`, shear `(c y, 0)`, scale `−c (Q_j − centroid)`,
/// rotate `c (Q_j − centroid)^⊥`.
pub fn preset_tangent(kind: PresetKind, q: &VertexConfiguration, c: f64) -> Vec<Point> {
    let m = q.centroid();
    q.points()
        .iter()
        .map(|p| match kind {
            PresetKind::Translate => [c, 0.0],
            PresetKind::Shear => [c * p[1], 0.0],
            PresetKind::Scale => [-c * (p[0] - m[0]), -c * (p[1] - m[1])],
            PresetKind::Rotate => [-c * (p[1] - m[1]), c * (p[0] - m[0])],
        })
        .collect()
}

/// Zero the tangent at interior vertices.
pub fn restrict_to_boundary(complex: &ConnectivityComplex, v: &[Point]) -> Vec<Point> {
    let fc = complex.classify_faces();
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            if fc.boundary_vertices.contains(&i) {
                x
            } else {
                [0.0, 0.0]
            }
        })
        .collect()
}

/// Weights for a refined mesh that keep `2^(level-1) N_T β₁` and `N_V β₃`
/// at their level-1 values.
pub fn beta_for_mesh_level(
    base_beta1: f64,
    base_beta3: f64,
    base_nt: usize,
    base_nv: usize,
    level: u32,
    nt: usize,
    nv: usize,
) -> (f64, f64) {
    assert!(level >= 1, "mesh levels start at 1");
    let c1 = base_beta1 * base_nt as f64;
    let c3 = base_beta3 * base_nv as f64;
    (
        c1 / (2f64.powi(level as i32 - 1) * nt as f64),
        c3 / nv as f64,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub enum TangentSource {
    Preset {
        kind: PresetKind,
        magnitude: f64,
        boundary_only: bool,
    },
    Field(Vec<Point>),
}

impl TangentSource {
    pub fn resolve(&self, complex: &ConnectivityComplex, q: &VertexConfiguration) -> Vec<Point> {
        match self {
            TangentSource::Preset {
                kind,
                magnitude,
                boundary_only,
            } => {
                let v = preset_tangent(*kind, q, *magnitude);
                if *boundary_only {
                    restrict_to_boundary(complex, &v)
                } else {
                    v
                }
            }
            TangentSource::Field(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub beta1: f64,
    pub beta3: f64,
    pub n_steps: usize,
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub complex: ConnectivityComplex,
    pub q0: VertexConfiguration,
    pub tangent: TangentSource,
    /// `beta1` and `beta3` are replaced per grid point.
    pub params: MetricParams,
    pub grid: Vec<GridPoint>,
    pub t_final: f64,
    pub snapshots: usize,
    pub svg: bool,
    pub output_dir: Option<PathBuf>,
    pub solver: SolverOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridPointReport {
    pub point: GridPoint,
    /// `(time, aspect ratio)` for each stored state.
    pub quality: Vec<(f64, f64)>,
    pub min_aspect_ratio: f64,
    pub final_aspect_ratio: f64,
    pub max_energy_drift: f64,
    pub failure_step: Option<usize>,
    pub failure: Option<String>,
    pub trajectory: GeodesicTrajectory,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub points: Vec<GridPointReport>,
}

impl ExperimentReport {
    pub fn summary_csv(&self) -> String {
        let mut s =
            format!("{CSV_HEADER}\nbeta1,beta3,N,min_AR,final_AR,max_energy_drift,failure_step\n");
        for r in &self.points {
            let fail = r.failure_step.map_or(String::new(), |k| k.to_string());
            writeln!(
                s,
                "{},{},{},{},{},{:e},{}",
                r.point.beta1,
                r.point.beta3,
                r.point.n_steps,
                r.min_aspect_ratio,
                r.final_aspect_ratio,
                r.max_energy_drift,
                fail
            )
            .unwrap();
        }
        s
    }
}

/// `(time, AR)` at every stored state.
pub fn quality_series(complex: &ConnectivityComplex, traj: &GeodesicTrajectory) -> Vec<(f64, f64)> {
    (0..traj.len())
        .map(|k| {
            (
                traj.times[k],
                aspect_ratio(complex, &traj.configuration(k)).unwrap_or(0.0),
            )
        })
        .collect()
}

pub fn quality_csv(series: &[(f64, f64)]) -> String {
    let mut s = format!("{CSV_HEADER}\ntime,AR\n");
    for (t, ar) in series {
        writeln!(s, "{t},{ar}").unwrap();
    }
    s
}

/// Indices of `count` stored states spread evenly from first to last.
pub fn snapshot_indices(len: usize, count: usize) -> Vec<usize> {
    if len == 0 || count == 0 {
        return Vec::new();
    }
    if count == 1 || len == 1 {
        return vec![len - 1];
    }
    let mut out: Vec<usize> = (0..count)
        .map(|i| ((i as f64) * (len - 1) as f64 / (count - 1) as f64).round() as usize)
        .collect();
    out.dedup();
    out
}

/// Write `energy.csv`, snapshot meshes under `traj/` and, if asked, SVG frames.
pub fn write_trajectory(
    dir: &Path,
    complex: &ConnectivityComplex,
    traj: &GeodesicTrajectory,
    snapshots: usize,
    svg: bool,
) -> Result<(), IoError> {
    io::create_dir_all(dir.join("traj"))?;
    io::write_text(dir.join("energy.csv"), &io::energy_csv(traj))?;
    if traj.is_empty() {
        return Ok(());
    }
    let bbox = io::bounding_box(traj.states.iter().map(Vec::as_slice));
    let first = traj.configuration(0);
    let last = traj.final_configuration();
    for k in snapshot_indices(traj.len(), snapshots) {
        let step = traj.step_indices[k];
        let q = traj.configuration(k);
        io::write_mesh(
            dir.join("traj").join(format!("step_{step:05}.txt")),
            complex,
            &q,
        )?;
        if svg {
            let text = io::svg(complex, &q, Some(&first), Some(&last), bbox);
            io::write_text(dir.join(format!("snap_{step:05}.svg")), &text)?;
        }
    }
    Ok(())
}

fn run_point(spec: &ExperimentSpec, v0: &[Point], point: GridPoint) -> GridPointReport {
    let mut params = spec.params.clone();
    params.beta1 = point.beta1;
    params.beta3 = point.beta3;
    let result = stormer_verlet(
        &spec.complex,
        &spec.q0,
        v0,
        &params,
        spec.t_final,
        point.n_steps,
        &spec.solver,
    );
    let (trajectory, failure_step, failure) = match result {
        Ok(t) => (t, None, None),
        Err(e) => {
            let step = match e.error {
                crate::integrator::IntegrationError::FixedPointDiverged { step, .. }
                | crate::integrator::IntegrationError::InadmissibleState { step } => Some(step),
                crate::integrator::IntegrationError::InvalidInput(_) => Some(0),
            };
            (*e.partial, step, Some(e.error.to_string()))
        }
    };
    let quality = quality_series(&spec.complex, &trajectory);
    let min_aspect_ratio = quality.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
    let final_aspect_ratio = quality.last().map_or(0.0, |x| x.1);
    GridPointReport {
        point,
        min_aspect_ratio,
        final_aspect_ratio,
        max_energy_drift: trajectory.max_relative_energy_drift(),
        quality,
        failure_step,
        failure,
        trajectory,
    }
}

fn point_dir(root: &Path, p: &GridPoint) -> PathBuf {
    root.join(format!(
        "beta1_{}_beta3_{}_N_{}",
        p.beta1, p.beta3, p.n_steps
    ))
}

/// Run every grid point in parallel. A failing trajectory is recorded in
/// its report; only I/O problems abort the run.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport, ExperimentError> {
    if spec.grid.is_empty() {
        return Err(ExperimentError::Invalid("empty parameter grid".into()));
    }
    if spec.grid.iter().any(|p| p.n_steps == 0) {
        return Err(ExperimentError::Invalid(
            "every grid point needs N >= 1".into(),
        ));
    }
    let v0 = spec.tangent.resolve(&spec.complex, &spec.q0);
    if v0.len() != spec.q0.len() {
        return Err(ExperimentError::Invalid(format!(
            "tangent has {} vectors, mesh has {} vertices",
            v0.len(),
            spec.q0.len()
        )));
    }
    let points: Vec<GridPointReport> = spec
        .grid
        .par_iter()
        .map(|&p| run_point(spec, &v0, p))
        .collect();
    let report = ExperimentReport { points };
    if let Some(root) = &spec.output_dir {
        io::create_dir_all(root)?;
        for r in &report.points {
            let dir = point_dir(root, &r.point);
            write_trajectory(&dir, &spec.complex, &r.trajectory, spec.snapshots, spec.svg)?;
            io::write_text(dir.join("quality.csv"), &quality_csv(&r.quality))?;
        }
        io::write_text(root.join("summary.csv"), &report.summary_csv())?;
    }
    Ok(report)
}
