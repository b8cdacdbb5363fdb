//! Plain-text mesh and tangent files, CSV output and SVG rendering.
//!
//! Mesh file: a header line `NV NT`, then `NV` lines `x y`, then `NT`
//! lines with three 1-based vertex ids. Tangent file: a header `NV 0` (or
//! just `NV`) followed by `NV` lines `vx vy`. Blank lines and lines starting
//! with `#` are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::geometry::{GeometryError, Point, VertexConfiguration};
use crate::integrator::GeodesicTrajectory;
use crate::simplicial::{ComplexError, ConnectivityComplex};

/// First line of every CSV written by this crate.
pub const CSV_HEADER: &str = "# mesh-geodesics v1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn io_err(path: &Path, source: std::io::Error) -> IoError {
    IoError::Io {
        path: path.display().to_string(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub complex: ConnectivityComplex,
    pub coords: VertexConfiguration,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_fields(&mut self, what: &str) -> Result<Vec<&'a str>, IoError> {
        for (i, line) in self.inner.by_ref() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            self.last = i + 1;
            return Ok(t.split_whitespace().collect());
        }
        Err(IoError::Parse {
            line: self.last + 1,
            message: format!("unexpected end of file, expected {what}"),
        })
    }

    fn parse<T: std::str::FromStr>(&self, s: &str, what: &str) -> Result<T, IoError> {
        s.parse().map_err(|_| IoError::Parse {
            line: self.last,
            message: format!("cannot read {what} from {s:?}"),
        })
    }

    fn expect_len(&self, fields: &[&str], n: usize, what: &str) -> Result<(), IoError> {
        if fields.len() == n {
            Ok(())
        } else {
            Err(IoError::Parse {
                line: self.last,
                message: format!("expected {n} fields for {what}, found {}", fields.len()),
            })
        }
    }

    fn finish(&mut self) -> Result<(), IoError> {
        for (i, line) in self.inner.by_ref() {
            let t = line.trim();
            if !(t.is_empty() || t.starts_with('#')) {
                return Err(IoError::Parse {
                    line: i + 1,
                    message: "unexpected trailing content".into(),
                });
            }
        }
        Ok(())
    }
}

pub fn parse_mesh(text: &str) -> Result<Mesh, IoError> {
    let mut lines = Lines::new(text);
    let header = lines.next_fields("header `NV NT`")?;
    lines.expect_len(&header, 2, "header")?;
    let nv: usize = lines.parse(header[0], "vertex count")?;
    let nt: usize = lines.parse(header[1], "triangle count")?;
    let mut points = Vec::with_capacity(nv);
    for _ in 0..nv {
        let f = lines.next_fields("vertex coordinates")?;
        lines.expect_len(&f, 2, "a vertex")?;
        points.push([lines.parse(f[0], "x")?, lines.parse(f[1], "y")?]);
    }
    let mut columns = Vec::with_capacity(nt);
    for _ in 0..nt {
        let f = lines.next_fields("triangle")?;
        lines.expect_len(&f, 3, "a triangle")?;
        columns.push([
            lines.parse(f[0], "vertex id")?,
            lines.parse(f[1], "vertex id")?,
            lines.parse(f[2], "vertex id")?,
        ]);
    }
    lines.finish()?;
    let complex = ConnectivityComplex::from_matrix(nv, &columns)?;
    let coords = VertexConfiguration::new(points)?;
    Ok(Mesh { complex, coords })
}

pub fn format_mesh(complex: &ConnectivityComplex, q: &VertexConfiguration) -> String {
    let mut s = String::new();
    writeln!(s, "{} {}", q.len(), complex.num_triangles()).unwrap();
    for p in q.points() {
        writeln!(s, "{:.16e} {:.16e}", p[0], p[1]).unwrap();
    }
    for c in complex.connectivity_matrix() {
        writeln!(s, "{} {} {}", c[0], c[1], c[2]).unwrap();
    }
    s
}

pub fn read_mesh(path: impl AsRef<Path>) -> Result<Mesh, IoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_mesh(&text)
}

pub fn write_mesh(
    path: impl AsRef<Path>,
    complex: &ConnectivityComplex,
    q: &VertexConfiguration,
) -> Result<(), IoError> {
    let path = path.as_ref();
    fs::write(path, format_mesh(complex, q)).map_err(|e| io_err(path, e))
}

pub fn parse_tangent(text: &str) -> Result<Vec<Point>, IoError> {
    let mut lines = Lines::new(text);
    let header = lines.next_fields("header `NV 0`")?;
    if header.is_empty() || header.len() > 2 {
        return Err(IoError::Parse {
            line: lines.last,
            message: "expected header `NV 0`".into(),
        });
    }
    let nv: usize = lines.parse(header[0], "vertex count")?;
    let mut v = Vec::with_capacity(nv);
    for _ in 0..nv {
        let f = lines.next_fields("tangent vector")?;
        lines.expect_len(&f, 2, "a tangent vector")?;
        let x: f64 = lines.parse(f[0], "vx")?;
        let y: f64 = lines.parse(f[1], "vy")?;
        if !x.is_finite() || !y.is_finite() {
            return Err(IoError::Parse {
                line: lines.last,
                message: "tangent entries must be finite".into(),
            });
        }
        v.push([x, y]);
    }
    lines.finish()?;
    Ok(v)
}

pub fn format_tangent(v: &[Point]) -> String {
    let mut s = format!("{} 0\n", v.len());
    for p in v {
        writeln!(s, "{:.16e} {:.16e}", p[0], p[1]).unwrap();
    }
    s
}

pub fn read_tangent(path: impl AsRef<Path>) -> Result<Vec<Point>, IoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_tangent(&text)
}

pub fn write_tangent(path: impl AsRef<Path>, v: &[Point]) -> Result<(), IoError> {
    let path = path.as_ref();
    fs::write(path, format_tangent(v)).map_err(|e| io_err(path, e))
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<(), IoError> {
    let path = path.as_ref();
    fs::write(path, text).map_err(|e| io_err(path, e))
}

pub fn create_dir_all(path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    fs::create_dir_all(path).map_err(|e| io_err(path, e))
}

/// One row per completed step: `step,time,H,fp_iters_P,fp_iters_Q`.
pub fn energy_csv(traj: &GeodesicTrajectory) -> String {
    let mut s = format!("{CSV_HEADER}\nstep,time,H,fp_iters_P,fp_iters_Q\n");
    for (n, h) in traj.hamiltonian_log.iter().enumerate() {
        let d = if n == 0 {
            Default::default()
        } else {
            traj.diagnostics[n - 1]
        };
        writeln!(
            s,
            "{},{},{:e},{},{}",
            n,
            n as f64 * traj.dt,
            h,
            d.fp_iters_p,
            d.fp_iters_q
        )
        .unwrap();
    }
    s
}

/// Axis-aligned box `[xmin, ymin, xmax, ymax]` of a set of flat states.
pub fn bounding_box<'a>(states: impl IntoIterator<Item = &'a [f64]>) -> [f64; 4] {
    let mut b = [
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    ];
    for s in states {
        for p in s.chunks_exact(2) {
            b[0] = b[0].min(p[0]);
            b[1] = b[1].min(p[1]);
            b[2] = b[2].max(p[0]);
            b[3] = b[3].max(p[1]);
        }
    }
    b
}

fn svg_mesh(s: &mut String, complex: &ConnectivityComplex, q: &VertexConfiguration, color: &str) {
    writeln!(s, "  <g stroke=\"{color}\">").unwrap();
    for t in complex.triangles() {
        let pts: Vec<String> = t
            .iter()
            .map(|&v| {
                let p = q.point(v);
                format!("{:.6},{:.6}", p[0], p[1])
            })
            .collect();
        writeln!(s, "    <polygon points=\"{}\"/>", pts.join(" ")).unwrap();
    }
    writeln!(s, "  </g>").unwrap();
}

/// Render the current mesh in black over optional initial (red) and final
/// (blue) meshes. `bbox` fixes the view so that frames line up.
pub fn svg(
    complex: &ConnectivityComplex,
    current: &VertexConfiguration,
    initial: Option<&VertexConfiguration>,
    final_: Option<&VertexConfiguration>,
    bbox: [f64; 4],
) -> String {
    let w = (bbox[2] - bbox[0]).max(1e-12);
    let h = (bbox[3] - bbox[1]).max(1e-12);
    let pad = 0.05 * w.max(h);
    let mut s = String::new();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\" width=\"600\" height=\"{:.0}\">",
        bbox[0] - pad,
        -bbox[3] - pad,
        w + 2.0 * pad,
        h + 2.0 * pad,
        600.0 * (h + 2.0 * pad) / (w + 2.0 * pad)
    )
    .unwrap();
    writeln!(
        s,
        "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\" style=\"vector-effect:non-scaling-stroke\">"
    )
    .unwrap();
    if let Some(q) = initial {
        svg_mesh(&mut s, complex, q, "red");
    }
    if let Some(q) = final_ {
        svg_mesh(&mut s, complex, q, "blue");
    }
    svg_mesh(&mut s, complex, current, "black");
    s.push_str("</g>\n</svg>\n");
    s
}
