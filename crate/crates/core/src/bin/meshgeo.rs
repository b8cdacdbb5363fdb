//! Command-line front end: mesh validation, geodesics, the exponential map,
//! the 1D demo and the mesh-quality sweep.
//!
//! Exit codes: 0 success, 1 validation failure or bad input, 2 integration
//! failure, 3 I/O error.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use meshgeo::experiment::{
    quality_csv, quality_series, run_experiment, write_trajectory, ExperimentSpec, GridPoint,
    PresetKind, TangentSource,
};
use meshgeo::integrator::IntegrationError;
use meshgeo::io::{self, IoError};
use meshgeo::oned::{geodesic_1d, LineConfiguration};
use meshgeo::{
    fixtures, ConnectivityComplex, Cutoff, MetricParams, SolverOptions, VertexConfiguration,
};

enum Failure {
    Invalid(String),
    Integration(String),
    Io(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Io { .. } => Failure::Io(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

#[derive(Parser)]
#[command(
    name = "meshgeo",
    version,
    about = "Geodesics on the space of planar triangular meshes"
)]
struct Cli {
    /// key=value file supplying defaults for the metric and solver flags
    #[arg(long, global = true, env = "MESHGEO_CONFIG")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a mesh file: connectivity, orientation and admissibility.
    Validate(ValidateArgs),
    /// Integrate a geodesic and write snapshots, energy log and quality.
    Geodesic(GeodesicArgs),
    /// Exponential map: the geodesic at time 1.
    Exp(ExpArgs),
    /// Geodesic of ordered points on the line, as CSV.
    Demo1d(Demo1dArgs),
    /// Aspect-ratio study over a list of weights.
    Quality(QualityArgs),
}

#[derive(Args, Clone)]
struct MeshSource {
    /// Mesh file (`NV NT`, coordinates, 1-based triangles)
    #[arg(long, env = "MESHGEO_MESH", conflicts_with = "fixture")]
    mesh: Option<PathBuf>,
    /// Built-in mesh: cross, square, disk, hex
    #[arg(long, env = "MESHGEO_FIXTURE")]
    fixture: Option<String>,
}

#[derive(Args, Clone)]
struct TangentArgs {
    /// Tangent file (`NV` header then one `vx vy` line per vertex)
    #[arg(long, env = "MESHGEO_TANGENT", conflicts_with = "preset")]
    tangent: Option<PathBuf>,
    /// translate, shear, scale or rotate
    #[arg(long, env = "MESHGEO_PRESET")]
    preset: Option<String>,
    #[arg(long, env = "MESHGEO_MAGNITUDE")]
    magnitude: Option<f64>,
    /// Zero the preset at interior vertices
    #[arg(long, env = "MESHGEO_BOUNDARY_ONLY")]
    boundary_only: bool,
}

#[derive(Args, Clone, Default)]
struct MetricArgs {
    #[arg(long, env = "MESHGEO_BETA1")]
    beta1: Option<f64>,
    #[arg(long, env = "MESHGEO_BETA2")]
    beta2: Option<f64>,
    #[arg(long, env = "MESHGEO_BETA3")]
    beta3: Option<f64>,
    #[arg(long, env = "MESHGEO_MU")]
    mu: Option<f64>,
    /// Cut-off start, applied to both the height and the distance terms
    #[arg(long, env = "MESHGEO_CUTOFF_LO")]
    cutoff_lo: Option<f64>,
    #[arg(long, env = "MESHGEO_CUTOFF_HI")]
    cutoff_hi: Option<f64>,
}

#[derive(Args, Clone, Default)]
struct SolverArgs {
    /// Full admissibility check every k steps (0: final step only)
    #[arg(long, env = "MESHGEO_CHECK_EVERY")]
    check_every: Option<usize>,
    #[arg(long, env = "MESHGEO_TOL")]
    tol: Option<f64>,
    #[arg(long, env = "MESHGEO_MAX_ITER")]
    max_iter: Option<usize>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    source: MeshSource,
}

#[derive(Args)]
struct GeodesicArgs {
    #[command(flatten)]
    source: MeshSource,
    #[command(flatten)]
    tangent: TangentArgs,
    #[command(flatten)]
    metric: MetricArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long = "T", env = "MESHGEO_T")]
    t_final: Option<f64>,
    #[arg(long = "N", env = "MESHGEO_N")]
    n_steps: Option<usize>,
    /// Number of evenly spaced mesh snapshots
    #[arg(long, env = "MESHGEO_SNAPSHOTS")]
    snapshots: Option<usize>,
    #[arg(long, env = "MESHGEO_SVG")]
    svg: bool,
    #[arg(long, env = "MESHGEO_OUT", default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct ExpArgs {
    #[command(flatten)]
    source: MeshSource,
    #[command(flatten)]
    tangent: TangentArgs,
    #[command(flatten)]
    metric: MetricArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long = "N", env = "MESHGEO_N")]
    n_steps: Option<usize>,
    /// Write the resulting mesh here instead of stdout
    #[arg(long, env = "MESHGEO_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Demo1dArgs {
    /// Number of points, placed at 0, 1, ..., n-1
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// Comma-separated initial velocities
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    v0: Vec<f64>,
    #[arg(long = "T", default_value_t = 10.0)]
    t_final: f64,
    #[arg(long = "N", default_value_t = 10_000)]
    n_steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QualityArgs {
    #[command(flatten)]
    source: MeshSource,
    #[command(flatten)]
    tangent: TangentArgs,
    #[command(flatten)]
    metric: MetricArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Comma-separated β₁ values, one grid point each
    #[arg(long, value_delimiter = ',', required = true)]
    beta1s: Vec<f64>,
    /// Comma-separated β₃ values; defaults to the β₁ list
    #[arg(long, value_delimiter = ',')]
    beta3s: Vec<f64>,
    /// Comma-separated step counts, one per grid point or a single value
    #[arg(long, value_delimiter = ',', required = true)]
    steps: Vec<usize>,
    #[arg(long = "T", env = "MESHGEO_T")]
    t_final: Option<f64>,
    #[arg(long, env = "MESHGEO_SNAPSHOTS")]
    snapshots: Option<usize>,
    #[arg(long, env = "MESHGEO_SVG")]
    svg: bool,
    #[arg(long, env = "MESHGEO_OUT", default_value = "quality")]
    out: PathBuf,
}

/// `key = value` lines; `#` starts a comment.
struct Config(HashMap<String, String>);

impl Config {
    fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let mut map = HashMap::new();
        let Some(path) = path else {
            return Ok(Self(map));
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Failure::Invalid(format!("{}:{}: expected key=value", path.display(), i + 1))
            })?;
            map.insert(k.trim().replace('_', "-"), v.trim().to_string());
        }
        Ok(Self(map))
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, Failure> {
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| Failure::Invalid(format!("config: cannot read {key} from {v:?}"))),
        }
    }

    /// Flag (or environment) value first, then the file, then `default`.
    fn pick<T: std::str::FromStr>(
        &self,
        flag: Option<T>,
        key: &str,
        default: T,
    ) -> Result<T, Failure> {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.get(key)?.unwrap_or(default)),
        }
    }
}

fn load_mesh(src: &MeshSource) -> Result<(ConnectivityComplex, VertexConfiguration), Failure> {
    match (&src.mesh, &src.fixture) {
        (Some(path), _) => {
            let m = io::read_mesh(path)?;
            Ok((m.complex, m.coords))
        }
        (None, Some(name)) => match name.as_str() {
            "cross" => Ok(fixtures::cross_mesh()),
            "square" => Ok(fixtures::unit_square_crossed()),
            "disk" => Ok(fixtures::disk()),
            "hex" => Ok(fixtures::hex_fan()),
            other => Err(Failure::Invalid(format!("unknown fixture {other:?}"))),
        },
        (None, None) => Err(Failure::Invalid("give --mesh or --fixture".into())),
    }
}

fn tangent_source(args: &TangentArgs, cfg: &Config) -> Result<TangentSource, Failure> {
    if let Some(path) = &args.tangent {
        return Ok(TangentSource::Field(io::read_tangent(path)?));
    }
    let preset = match &args.preset {
        Some(p) => p.clone(),
        None => cfg
            .get::<String>("preset")?
            .ok_or_else(|| Failure::Invalid("give --tangent or --preset".into()))?,
    };
    let kind: PresetKind = preset
        .parse()
        .map_err(|e: meshgeo::experiment::ExperimentError| Failure::Invalid(e.to_string()))?;
    Ok(TangentSource::Preset {
        kind,
        magnitude: cfg.pick(args.magnitude, "magnitude", 1.0)?,
        boundary_only: args.boundary_only || cfg.get::<bool>("boundary-only")?.unwrap_or(false),
    })
}

fn metric_params(
    args: &MetricArgs,
    cfg: &Config,
    qref: VertexConfiguration,
) -> Result<MetricParams, Failure> {
    let invalid = |e: meshgeo::metric::MetricError| Failure::Invalid(e.to_string());
    let lo = args
        .cutoff_lo
        .map_or_else(|| cfg.get::<f64>("cutoff-lo"), |v| Ok(Some(v)))?;
    let hi = args
        .cutoff_hi
        .map_or_else(|| cfg.get::<f64>("cutoff-hi"), |v| Ok(Some(v)))?;
    let cutoff = match (lo, hi) {
        (None, None) => None,
        (Some(lo), Some(hi)) => Some(Cutoff::new(lo, hi).map_err(invalid)?),
        _ => {
            return Err(Failure::Invalid(
                "--cutoff-lo and --cutoff-hi go together".into(),
            ))
        }
    };
    let p = MetricParams::new(qref)
        .with_betas(
            cfg.pick(args.beta1, "beta1", 1.0)?,
            cfg.pick(args.beta2, "beta2", 0.0)?,
            cfg.pick(args.beta3, "beta3", 1.0)?,
        )
        .with_mu(cfg.pick(args.mu, "mu", 100.0)?)
        .with_cutoffs(cutoff, cutoff);
    p.validate().map_err(invalid)?;
    Ok(p)
}

fn solver_options(args: &SolverArgs, cfg: &Config) -> Result<SolverOptions, Failure> {
    let d = SolverOptions::default();
    Ok(SolverOptions {
        tol: cfg.pick(args.tol, "tol", d.tol)?,
        max_iter: cfg.pick(args.max_iter, "max-iter", d.max_iter)?,
        check_every: cfg.pick(args.check_every, "check-every", d.check_every)?,
        ..d
    })
}

fn validate(args: &ValidateArgs) -> Outcome {
    let (c, q) = load_mesh(&args.source)?;
    let v = c.validate();
    let orient = c.check_orientable();
    let report = meshgeo::is_in_m0(&c, &q).map_err(|e| Failure::Invalid(e.to_string()))?;
    println!(
        "vertices: {}  triangles: {}  edges: {}",
        c.num_vertices(),
        c.num_triangles(),
        c.num_edges()
    );
    println!("pure: {}", v.pure);
    println!("2-path connected: {}", v.two_path_connected);
    if !v.overloaded_edges.is_empty() {
        println!("edges with 3+ triangles: {}", v.overloaded_edges.len());
    }
    println!("orientable: {}", orient.orientable);
    println!("consistently oriented: {}", c.is_consistently_oriented());
    println!("geometric complex: {}", report.is_geometric_complex);
    println!(
        "abstract complex matches: {}",
        report.abstract_complex_matches
    );
    println!("all signed areas positive: {}", report.all_areas_positive);
    println!("min signed area: {:e}", report.min_signed_area);
    println!("aspect ratio: {}", report.aspect_ratio);
    if let Some(violation) = report.first_violation {
        println!("first violation: {violation}");
    }
    let ok = v.is_connectivity_complex() && report.is_admissible_oriented();
    println!("admissible: {ok}");
    if ok {
        Ok(())
    } else {
        Err(Failure::Invalid(
            "mesh is not an admissible oriented mesh".into(),
        ))
    }
}

fn integration_failure(e: &IntegrationError) -> Failure {
    match e {
        IntegrationError::InvalidInput(m) => Failure::Invalid(m.clone()),
        other => Failure::Integration(other.to_string()),
    }
}

fn geodesic(args: &GeodesicArgs, cfg: &Config) -> Outcome {
    let (c, q) = load_mesh(&args.source)?;
    let v = tangent_source(&args.tangent, cfg)?.resolve(&c, &q);
    let params = metric_params(&args.metric, cfg, q.clone())?;
    let opts = solver_options(&args.solver, cfg)?;
    let t_final = cfg.pick(args.t_final, "T", 1.0)?;
    let n_steps = cfg.pick(args.n_steps, "N", 1000)?;
    let snapshots = cfg.pick(args.snapshots, "snapshots", 5)?;
    let svg = args.svg || cfg.get::<bool>("svg")?.unwrap_or(false);

    let (traj, err) = match meshgeo::stormer_verlet(&c, &q, &v, &params, t_final, n_steps, &opts) {
        Ok(t) => (t, None),
        Err(f) => (*f.partial, Some(f.error)),
    };
    if let Some(IntegrationError::InvalidInput(m)) = &err {
        return Err(Failure::Invalid(m.clone()));
    }
    write_trajectory(&args.out, &c, &traj, snapshots, svg)?;
    let quality = quality_series(&c, &traj);
    io::write_text(args.out.join("quality.csv"), &quality_csv(&quality))?;
    let min_ar = quality.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
    println!("steps completed: {} of {}", traj.steps_completed(), n_steps);
    println!(
        "max relative energy drift: {:e}",
        traj.max_relative_energy_drift()
    );
    println!("min aspect ratio: {min_ar}");
    println!("output: {}", args.out.display());
    match err {
        None => Ok(()),
        Some(e) => Err(integration_failure(&e)),
    }
}

fn exp(args: &ExpArgs, cfg: &Config) -> Outcome {
    let (c, q) = load_mesh(&args.source)?;
    let v = tangent_source(&args.tangent, cfg)?.resolve(&c, &q);
    let params = metric_params(&args.metric, cfg, q.clone())?;
    let opts = SolverOptions {
        store_every: 0,
        ..solver_options(&args.solver, cfg)?
    };
    let n_steps = cfg.pick(args.n_steps, "N", 1000)?;
    let traj = meshgeo::stormer_verlet(&c, &q, &v, &params, 1.0, n_steps, &opts)
        .map_err(|f| integration_failure(&f.error))?;
    let text = io::format_mesh(&c, &traj.final_configuration());
    match &args.out {
        Some(path) => io::write_text(path, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn demo1d(args: &Demo1dArgs) -> Outcome {
    let q: Vec<f64> = (0..args.n).map(|i| i as f64).collect();
    let config = LineConfiguration::at_reference(q, args.beta)
        .map_err(|e| Failure::Invalid(e.to_string()))?;
    let v0 = if args.v0.is_empty() {
        vec![0.0; args.n]
    } else {
        args.v0.clone()
    };
    if v0.len() != args.n {
        return Err(Failure::Invalid(format!(
            "--v0 needs {} values, got {}",
            args.n,
            v0.len()
        )));
    }
    let result = geodesic_1d(
        &config,
        &v0,
        args.t_final,
        args.n_steps,
        &SolverOptions::default(),
    );
    let (traj, err) = match result {
        Ok(t) => (t, None),
        Err(f) => (*f.partial, Some(f.error)),
    };
    let mut s = format!("{}\nstep,time", io::CSV_HEADER);
    for i in 1..=args.n {
        write!(s, ",q{i}").unwrap();
    }
    for i in 1..=args.n {
        write!(s, ",v{i}").unwrap();
    }
    s.push('\n');
    for k in 0..traj.len() {
        write!(s, "{},{}", traj.step_indices[k], traj.times[k]).unwrap();
        for x in traj.states[k].iter().chain(&traj.velocities[k]) {
            write!(s, ",{x}").unwrap();
        }
        s.push('\n');
    }
    match &args.out {
        Some(path) => io::write_text(path, &s)?,
        None => print!("{s}"),
    }
    match err {
        None => Ok(()),
        Some(e) => Err(integration_failure(&e)),
    }
}

fn quality(args: &QualityArgs, cfg: &Config) -> Outcome {
    let (c, q) = load_mesh(&args.source)?;
    let tangent = tangent_source(&args.tangent, cfg)?;
    let params = metric_params(&args.metric, cfg, q.clone())?;
    let beta3s = if args.beta3s.is_empty() {
        &args.beta1s
    } else {
        &args.beta3s
    };
    if beta3s.len() != args.beta1s.len() {
        return Err(Failure::Invalid(
            "--beta1s and --beta3s differ in length".into(),
        ));
    }
    if args.steps.len() != 1 && args.steps.len() != args.beta1s.len() {
        return Err(Failure::Invalid(
            "--steps needs one value or one per grid point".into(),
        ));
    }
    let grid = (0..args.beta1s.len())
        .map(|i| GridPoint {
            beta1: args.beta1s[i],
            beta3: beta3s[i],
            n_steps: args.steps[if args.steps.len() == 1 { 0 } else { i }],
        })
        .collect();
    let spec = ExperimentSpec {
        complex: c,
        q0: q,
        tangent,
        params,
        grid,
        t_final: cfg.pick(args.t_final, "T", 2.0)?,
        snapshots: cfg.pick(args.snapshots, "snapshots", 3)?,
        svg: args.svg || cfg.get::<bool>("svg")?.unwrap_or(false),
        output_dir: Some(args.out.clone()),
        solver: solver_options(&args.solver, cfg)?,
    };
    let report = run_experiment(&spec).map_err(|e| match e {
        meshgeo::experiment::ExperimentError::Io(e) => Failure::from(e),
        other => Failure::Invalid(other.to_string()),
    })?;
    print!("{}", report.summary_csv());
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    let cfg = Config::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Validate(a) => validate(a),
        Command::Geodesic(a) => geodesic(a, &cfg),
        Command::Exp(a) => exp(a, &cfg),
        Command::Demo1d(a) => demo1d(a),
        Command::Quality(a) => quality(a, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Integration(m)) => {
            eprintln!("integration failed: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("I/O error: {m}");
            ExitCode::from(3)
        }
    }
}
