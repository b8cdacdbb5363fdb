//! Evaluate f, its gradient and the metric g = I + grad f grad f^T.

use meshgeo::{fixtures, MeshMetric, MetricParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (c, q0) = fixtures::cross_mesh();
    let params = MetricParams::new(q0.clone()).with_betas(1.0, 0.2, 1.0);
    let metric = MeshMetric::new(c, params)?;

    let q = q0.map(|p| [p[0] + 0.1 * p[1], p[1]]);
    println!("f exact {:.6}", metric.f_exact(&q)?);
    println!("f smoothed {:.6}", metric.f_mu(&q)?);
    let grad = metric.grad_f_mu(&q)?;
    println!(
        "|grad f| {:.6}",
        grad.iter().map(|x| x * x).sum::<f64>().sqrt()
    );

    let g = metric.metric_at_config(&q)?;
    let v: Vec<f64> = (0..g.dim())
        .map(|i| if i % 2 == 0 { 1.0 } else { 0.0 })
        .collect();
    println!(
        "<v, v>_g {:.6} (Euclidean {:.1})",
        g.inner(&v, &v),
        v.iter().sum::<f64>()
    );
    let back = g.inv_apply(&g.apply(&v));
    let err = back
        .iter()
        .zip(&v)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("g^-1 g v round trip error {err:.1e}");

    let hv = metric.hessian_vec_f_mu(&q, &v)?;
    let fd = metric.hessian_vec_fd(&q, &v)?;
    let diff = hv
        .iter()
        .zip(&fd)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("Hessian-vector product vs finite differences: {diff:.1e}");
    Ok(())
}
