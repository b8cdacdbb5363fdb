//! Acceptance criteria 1 to 10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use meshgeo::admissibility::oracle::brute_force_intersection_oracle;
use meshgeo::augmented::{dot, AugmentedMetric};
use meshgeo::experiment::{
    preset_tangent, run_experiment, ExperimentSpec, GridPoint, PresetKind, TangentSource,
};
use meshgeo::geometry::{
    dist_vertex_edge_1norm, dist_vertex_edge_euclid, dist_vertex_edge_regularized,
    g_mu_derivatives, h_mu_derivatives,
};
use meshgeo::integrator::{stormer_verlet, IntegrationError, SolverOptions};
use meshgeo::metric::{Cutoff, MeshMetric, MetricParams};
use meshgeo::oned::{geodesic_1d, LineConfiguration};
use meshgeo::{fixtures, is_in_m0, is_in_mplus, ConnectivityComplex, VertexConfiguration};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn unwrap_run(
    r: Result<meshgeo::GeodesicTrajectory, meshgeo::integrator::IntegrationFailure>,
) -> Result<meshgeo::GeodesicTrajectory, String> {
    r.map_err(|e| format!("integration failed: {}", e.error))
}

fn identity_metric_geodesics() -> Verdict {
    let mut rng = common::rng(1);
    let (c, q) = fixtures::disk();
    let v0 = common::random_tangent(&mut rng, q.len(), 0.05);
    let params = MetricParams::euclidean(q.clone());
    let start = Instant::now();
    let traj = unwrap_run(stormer_verlet(
        &c,
        &q,
        &v0,
        &params,
        3.0,
        1000,
        &SolverOptions::default(),
    ))?;
    let elapsed = start.elapsed();
    let mut worst: f64 = 0.0;
    for k in 0..traj.len() {
        let exact = q.displaced(&v0, traj.times[k]);
        worst = worst.max(common::max_abs_diff(&traj.states[k], exact.as_flat()));
    }
    check(
        worst <= 1e-12 && elapsed < Duration::from_secs(1),
        format!("max vertex error {worst:.2e}, runtime {elapsed:.2?}"),
    )
}

fn translation_exactness() -> Verdict {
    let (c, q) = fixtures::unit_square_crossed();
    let v0 = preset_tangent(PresetKind::Translate, &q, 0.7);
    let params = MetricParams::new(q.clone()).with_betas(1.0, 0.0, 0.0);
    let traj = unwrap_run(stormer_verlet(
        &c,
        &q,
        &v0,
        &params,
        3.0,
        1000,
        &SolverOptions::default(),
    ))?;
    let worst = (0..traj.len())
        .map(|k| common::max_abs_diff(&traj.states[k], q.displaced(&v0, traj.times[k]).as_flat()))
        .fold(0.0, f64::max);
    check(
        worst <= 1e-10,
        format!("max deviation from straight line {worst:.2e}"),
    )
}

fn energy_conservation() -> Verdict {
    let (c, q) = fixtures::unit_square_crossed();
    let v0 = preset_tangent(PresetKind::Shear, &q, 1.0);
    let params = MetricParams::new(q.clone()).with_betas(0.5, 0.0, 0.5);
    let opts = SolverOptions {
        store_every: 0,
        ..Default::default()
    };
    let coarse = unwrap_run(stormer_verlet(&c, &q, &v0, &params, 3.0, 10_000, &opts))?
        .max_relative_energy_drift();
    let fine = unwrap_run(stormer_verlet(&c, &q, &v0, &params, 3.0, 20_000, &opts))?
        .max_relative_energy_drift();
    let ratio = coarse / fine;
    check(
        coarse <= 1e-5 && (3.0..=6.0).contains(&ratio),
        format!("drift {coarse:.2e} at N=1e4, {fine:.2e} at N=2e4, ratio {ratio:.2}"),
    )
}

fn completeness() -> Verdict {
    let (c, q) = fixtures::unit_square_crossed();
    let v0 = preset_tangent(PresetKind::Scale, &q, 0.5);
    let euclid = stormer_verlet(
        &c,
        &q,
        &v0,
        &MetricParams::euclidean(q.clone()),
        3.0,
        1000,
        &SolverOptions::default(),
    );
    let euclid_step = match euclid {
        Err(e) => match e.error {
            IntegrationError::InadmissibleState { step } => step,
            other => return Err(format!("Euclidean run failed differently: {other}")),
        },
        Ok(_) => return Err("Euclidean run stayed admissible".into()),
    };
    let params = MetricParams::new(q.clone()).with_betas(1.0, 0.0, 1.0);
    let opts = SolverOptions {
        store_every: 100,
        ..Default::default()
    };
    let traj = unwrap_run(stormer_verlet(&c, &q, &v0, &params, 3.0, 100_000, &opts))?;
    let h0 = common::min_height(&c, &q);
    let mut ratio = f64::INFINITY;
    let mut admissible = true;
    for k in 0..traj.len() {
        let qk = traj.configuration(k);
        admissible &= is_in_mplus(&c, &qk).unwrap().is_admissible_oriented();
        ratio = ratio.min(common::min_height(&c, &qk) / h0);
    }
    check(
        admissible && ratio >= 1e-3,
        format!(
            "beta=0 leaves the admissible set at t={:.3}; beta=1 keeps min height at {ratio:.3} of its start",
            euclid_step as f64 * 3e-3
        ),
    )
}

fn mesh_quality_floor() -> Verdict {
    let (c, q) = fixtures::disk();
    let spec = ExperimentSpec {
        complex: c,
        q0: q.clone(),
        tangent: TangentSource::Preset {
            kind: PresetKind::Shear,
            magnitude: 0.5,
            boundary_only: true,
        },
        params: MetricParams::new(q),
        grid: [(0.0, 10), (0.15, 5000), (0.2, 7500), (0.25, 10_000)]
            .iter()
            .map(|&(b, n)| GridPoint {
                beta1: b,
                beta3: b,
                n_steps: n,
            })
            .collect(),
        t_final: 2.0,
        snapshots: 0,
        svg: false,
        output_dir: None,
        solver: SolverOptions::default(),
    };
    let report = run_experiment(&spec).map_err(|e| e.to_string())?;
    let p = &report.points;
    let euclid_ok = p[0].failure_step.is_some() || p[0].min_aspect_ratio < 0.05;
    let floor_ok = p[1].failure_step.is_none() && p[1].min_aspect_ratio >= 0.2;
    let mins: Vec<f64> = p[1..].iter().map(|r| r.min_aspect_ratio).collect();
    let hi = mins.iter().copied().fold(0.0, f64::max);
    let lo = mins.iter().copied().fold(f64::INFINITY, f64::min);
    let spread_ok = p[1..].iter().all(|r| r.failure_step.is_none()) && (hi - lo) <= 0.1 * hi;
    check(
        euclid_ok && floor_ok && spread_ok,
        format!(
            "min AR: beta=0 {:.4}, beta=0.15 {:.4}, 0.20 {:.4}, 0.25 {:.4}",
            p[0].min_aspect_ratio, mins[0], mins[1], mins[2]
        ),
    )
}

fn random_admissible_mesh(
    rng: &mut ChaCha8Rng,
) -> (
    ConnectivityComplex,
    VertexConfiguration,
    VertexConfiguration,
) {
    let (c, q0) = match rng.gen_range(0..5) {
        0 => fixtures::cross_mesh(),
        1 => fixtures::hex_fan(),
        2 => fixtures::grid(2, 2),
        3 => fixtures::grid(3, 2),
        _ => fixtures::unit_square_crossed(),
    };
    let spread = q0.frobenius_norm() / (q0.len() as f64).sqrt();
    loop {
        let s = 0.08 * spread;
        let pts: Vec<[f64; 2]> = q0
            .points()
            .iter()
            .map(|p| [p[0] + rng.gen_range(-s..s), p[1] + rng.gen_range(-s..s)])
            .collect();
        let q = VertexConfiguration::new(pts).unwrap();
        if is_in_mplus(&c, &q).unwrap().is_admissible_oriented() {
            return (c, q, q0);
        }
    }
}

fn gradient_and_hessian() -> Verdict {
    let mut rng = common::rng(6);
    let mut worst_grad: f64 = 0.0;
    let mut worst_sym: f64 = 0.0;
    for trial in 0..100 {
        let (c, q, q0) = random_admissible_mesh(&mut rng);
        let mut params = MetricParams::new(q0)
            .with_betas(
                rng.gen_range(0.1..1.5),
                rng.gen_range(0.0..0.5),
                rng.gen_range(0.0..1.5),
            )
            .with_mu(*[1.0, 10.0, 100.0].choose(&mut rng).unwrap());
        if trial % 4 == 0 {
            params.cutoff_heights = Some(Cutoff::new(1.0, 4.0).unwrap());
        }
        let m = MeshMetric::new(c, params).unwrap();
        let x = q.as_flat();
        let g = m.gradient(x).unwrap();
        let fd: Vec<f64> = (0..x.len())
            .map(|i| {
                let h = 1e-6 * (1.0 + x[i].abs());
                let mut a = x.to_vec();
                let mut b = x.to_vec();
                a[i] += h;
                b[i] -= h;
                (m.value(&a).unwrap() - m.value(&b).unwrap()) / (2.0 * h)
            })
            .collect();
        let diff: Vec<f64> = g.iter().zip(&fd).map(|(a, b)| a - b).collect();
        worst_grad = worst_grad.max(dot(&diff, &diff).sqrt() / dot(&g, &g).sqrt().max(1.0));
        let u: Vec<f64> = (0..x.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let w: Vec<f64> = (0..x.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let hu = m.hessian_vec(x, &u).unwrap();
        let hw = m.hessian_vec(x, &w).unwrap();
        let (a, b) = (dot(&w, &hu), dot(&u, &hw));
        worst_sym = worst_sym.max((a - b).abs() / a.abs().max(b.abs()).max(1.0));
    }
    check(
        worst_grad <= 1e-6 && worst_sym <= 1e-8,
        format!(
            "gradient relative error {worst_grad:.2e}, Hessian symmetry defect {worst_sym:.2e}"
        ),
    )
}

fn regularization() -> Verdict {
    let mut rng = common::rng(7);
    let mut violations = 0;
    let mut worst_gap: f64 = 0.0;
    for k in 0..10_000 {
        let mu = [1.0, 10.0, 100.0][k % 3];
        let mut pt = || [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
        let q = VertexConfiguration::new(vec![pt(), pt(), pt()]).unwrap();
        let d = dist_vertex_edge_euclid(&q, 0, [1, 2]);
        let big = dist_vertex_edge_1norm(&q, 0, [1, 2]).map_err(|e| e.to_string())?;
        let dmu = dist_vertex_edge_regularized(&q, 0, [1, 2], mu).map_err(|e| e.to_string())?;
        let tol = 1e-12 * (1.0 + big);
        let ok = dmu >= -tol
            && dmu <= big + tol
            && big <= std::f64::consts::SQRT_2 * d + tol
            && big - dmu <= 0.5 / mu + tol;
        if !ok {
            violations += 1;
        }
        worst_gap = worst_gap.max((big - dmu) * mu);
    }
    // jump of each derivative across a seam, extrapolated to zero width and
    // scaled by the size of that derivative (~ mu^(k-1))
    fn jump(f: impl Fn(f64) -> [f64; 4], x0: f64, orders: usize, mu: f64) -> f64 {
        let e = 1e-10;
        let at = |h: f64| (f(x0 - h), f(x0 + h));
        let ((a1, b1), (a2, b2)) = (at(e), at(e / 2.0));
        (0..orders)
            .map(|k| {
                let j = 2.0 * (a2[k] - b2[k]) - (a1[k] - b1[k]);
                j.abs() / mu.powi(k as i32 - 1).max(1.0)
            })
            .fold(0.0, f64::max)
    }
    let mut seam: f64 = 0.0;
    for mu in [1.0, 10.0, 100.0] {
        let knee = 0.5 / mu;
        let h = |x: f64| h_mu_derivatives(x, mu).unwrap();
        let g = |x: f64| g_mu_derivatives(x, 0.0, 1.0, mu).unwrap();
        seam = seam.max(jump(h, knee, 4, mu)).max(jump(h, -knee, 4, mu));
        // h is even with h''' odd, so only C^2 through zero
        seam = seam.max(jump(h, 0.0, 3, mu));
        for x0 in [-knee, 0.0, 1.0, 1.0 + knee] {
            seam = seam.max(jump(g, x0, 4, mu));
        }
    }
    check(
        violations == 0 && seam <= 1e-9,
        format!("{violations} bound violations in 1e4 pairs, max mu*|D - d_mu| {worst_gap:.3}, seam mismatch {seam:.1e}"),
    )
}

fn one_dimensional_fidelity() -> Verdict {
    let start = Instant::now();
    let two = |beta| LineConfiguration::at_reference(vec![0.0, 1.0], beta).unwrap();
    let opts = SolverOptions::default();
    let v0 = [0.4, -0.4];
    let traj = unwrap_run(geodesic_1d(&two(0.0), &v0, 5.0, 20_000, &opts))?;
    let oracle = common::rk4_two_points([0.0, 1.0], v0, 5.0, 20_000);
    let oracle_err = traj
        .states
        .iter()
        .zip(&oracle)
        .map(|(s, o)| common::max_abs_diff(s, o))
        .fold(0.0, f64::max);
    let mid: Vec<f64> = traj.states.iter().map(|s| s[0] + s[1]).collect();
    let second = mid
        .windows(3)
        .map(|w| (w[2] - 2.0 * w[1] + w[0]).abs())
        .fold(0.0, f64::max);
    let collide = unwrap_run(geodesic_1d(&two(1.0), &[1.0, -1.0], 10.0, 10_000, &opts))?;
    let min_gap = collide
        .states
        .iter()
        .map(|s| s[1] - s[0])
        .fold(f64::INFINITY, f64::min);
    let elapsed = start.elapsed();
    check(
        oracle_err <= 1e-6 && second <= 1e-8 && min_gap > 0.0 && elapsed < Duration::from_secs(5),
        format!(
            "oracle deviation {oracle_err:.1e}, midpoint second difference {second:.1e}, min gap {min_gap:.3}, runtime {elapsed:.2?}"
        ),
    )
}

fn oracle_equivalence() -> Verdict {
    let mut rng = common::rng(9);
    let mut mismatches = 0;
    let mut admissible = 0;
    for _ in 0..1000 {
        let (c, q0) = match rng.gen_range(0..4) {
            0 => fixtures::cross_mesh(),
            1 => fixtures::hex_fan(),
            2 => fixtures::grid(2, 2),
            _ => {
                let (c, q, _) = fixtures::disconnected_pair();
                (c, q)
            }
        };
        // dyadic coordinates make collinear and touching cases exact
        let scale = rng.gen_range(1..4) as f64 / 8.0;
        let q = q0.map(|p| {
            let snap = |x: f64| (x * 64.0).round() / 64.0;
            [
                snap(p[0]) + rng.gen_range(-4..=4) as f64 * scale / 4.0,
                snap(p[1]) + rng.gen_range(-4..=4) as f64 * scale / 4.0,
            ]
        });
        let fast = is_in_m0(&c, &q).unwrap().is_admissible();
        admissible += fast as usize;
        if fast != brute_force_intersection_oracle(&c, &q) {
            mismatches += 1;
        }
    }
    let (c, q, qt) = fixtures::disconnected_pair();
    let both_fixtures = [&q, &qt].iter().all(|x| {
        is_in_m0(&c, x).unwrap().is_admissible() && brute_force_intersection_oracle(&c, x)
    });
    let (cc, cq) = fixtures::cross_mesh();
    let crafted = [
        cq.map(|p| if p == [0.0, 0.0] { [3.0, 0.0] } else { p }),
        cq.map(|p| if p == [1.0, 1.0] { [-0.5, -0.25] } else { p }),
        cq.map(|p| if p == [1.0, -1.0] { [-1.0, -1.0] } else { p }),
    ];
    let crafted_ok = crafted.iter().all(|x| {
        !is_in_m0(&cc, x).unwrap().is_admissible() && !brute_force_intersection_oracle(&cc, x)
    });
    check(
        mismatches == 0 && both_fixtures && crafted_ok,
        format!("{mismatches} mismatches in 1000 trials ({admissible} admissible), fixtures ok {both_fixtures}, overlaps ok {crafted_ok}"),
    )
}

fn invariance() -> Verdict {
    let mut rng = common::rng(10);
    let (c, q) = fixtures::hex_fan();
    let q = q.map(|p| [p[0] + 0.05 * p[1], p[1]]);
    let (_, qref) = fixtures::hex_fan();
    let params = MetricParams::new(qref.clone()).with_betas(0.8, 0.2, 0.6);
    let system = MeshMetric::new(c.clone(), params.clone()).unwrap();
    let v0 = common::random_tangent(&mut rng, q.len(), 0.3);
    let base = unwrap_run(stormer_verlet(
        &c,
        &q,
        &v0,
        &params,
        1.0,
        300,
        &SolverOptions::default(),
    ))?;
    let mut worst_metric: f64 = 0.0;
    let mut worst_traj: f64 = 0.0;
    for _ in 0..5 {
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let b = [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)];
        let moved_params = MetricParams {
            qref: qref.rigid_motion(theta, b),
            ..params.clone()
        };
        let moved = MeshMetric::new(c.clone(), moved_params.clone()).unwrap();
        let tq = q.rigid_motion(theta, b);
        let v = common::random_tangent(&mut rng, q.len(), 1.0);
        let w = common::random_tangent(&mut rng, q.len(), 1.0);
        let g = system.metric_at(q.as_flat()).unwrap();
        let tg = moved.metric_at(tq.as_flat()).unwrap();
        let lhs = g.inner(v.as_flattened(), w.as_flattened());
        let rhs = tg.inner(
            common::rotate(&v, theta).as_flattened(),
            common::rotate(&w, theta).as_flattened(),
        );
        worst_metric = worst_metric.max((lhs - rhs).abs() / lhs.abs().max(1.0));
        let traj = unwrap_run(stormer_verlet(
            &c,
            &tq,
            &common::rotate(&v0, theta),
            &moved_params,
            1.0,
            300,
            &SolverOptions::default(),
        ))?;
        for (a, s) in base.states.iter().zip(&traj.states) {
            worst_traj = worst_traj.max(common::max_abs_diff(&common::rigid_flat(a, theta, b), s));
        }
    }
    check(
        worst_metric <= 1e-8 && worst_traj <= 1e-8,
        format!("metric defect {worst_metric:.1e}, trajectory defect {worst_traj:.1e}"),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "identity-metric geodesics are straight lines",
            identity_metric_geodesics,
        ),
        (
            "translations follow the Euclidean geodesic",
            translation_exactness,
        ),
        (
            "energy drift and its step-halving ratio",
            energy_conservation,
        ),
        ("Euclidean collapse vs complete metric", completeness),
        ("mesh-quality floor on the disk", mesh_quality_floor),
        ("gradient and Hessian-vector products", gradient_and_hessian),
        ("regularized distance properties", regularization),
        ("one-dimensional fidelity", one_dimensional_fidelity),
        ("admissibility oracle equivalence", oracle_equivalence),
        ("rigid-motion invariance", invariance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let t = start.elapsed();
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{t:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{t:.2?}]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
