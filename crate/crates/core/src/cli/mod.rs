//! The `cw-lab` command line: JSON in, JSON out.
//!
//! Exit codes: 0 success, 1 a verification reported a failed check, 2 input
//! error, 3 an operation's precondition does not hold. Errors are written to
//! stderr as `{"error": {"kind": .., "detail": ..}}`.

mod inputs;

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::beta::BetaSolution;
use crate::curvature::{self, SymBilinear};
use crate::dynamics;
use crate::error::CwError;
use crate::flat::{self, SmoothMap};
use crate::group::{self, Homothety};
use crate::linalg::rows_to_matrix;
use crate::point::Point;
use crate::profile::{ProfileSpec, SymmetricProfile, DEFAULT_TOLERANCE};
use crate::quotients;
use crate::report::Report;
use crate::sampling;
use crate::sign::Sign;

use inputs::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// Tolerance names accepted by `--tolerance`, with their defaults.
pub const TOLERANCES: &[(&str, f64)] = &[("profile", DEFAULT_TOLERANCE), ("pullback", 1e-9), ("factor", 1e-8)];

/// Library operation → the subcommand that exposes it.
pub const REGISTRY: &[(&str, &str)] = &[
    ("classify", "classify"),
    ("beta_eval", "beta"),
    ("symplectic_form", "beta"),
    ("beta_reparam", "beta"),
    ("metric_at", "curvature"),
    ("christoffel_at", "curvature"),
    ("kulkarni_nomizu", "curvature"),
    ("riemann", "curvature"),
    ("ricci", "curvature"),
    ("scalar", "curvature"),
    ("schouten", "curvature"),
    ("weyl", "curvature"),
    ("cotton", "curvature"),
    ("conformal_change_at", "conformal-change"),
    ("apply", "apply"),
    ("compose", "compose"),
    ("inverse", "inverse"),
    ("project", "project"),
    ("homothety_factor_check", "factor-check"),
    ("centralises", "centralises"),
    ("centraliser_of_pure", "centralises"),
    ("fixed_point", "fixed-point"),
    ("torsion_fixed_point", "torsion-fixed-point"),
    ("is_essential", "essential"),
    ("inessential_rescaling", "rescaling"),
    ("solve_conjugation_beta", "solve-beta"),
    ("normal_form", "normal-form"),
    ("orbit_obstruction_sequence", "orbit"),
    ("pd_necessary_report", "pd-report"),
    ("centraliser_projection_demo", "centraliser-demo"),
    ("minkowski_map", "pullback-check"),
    ("imaginary_local_map", "pullback-check"),
    ("pullback_metric", "pullback-check"),
    ("flatness_blowup_demo", "blowup"),
    ("verify_imaginary_torus_example", "verify-example"),
    ("verify_real_lattice_example", "verify-example"),
    ("verify_failed_3d_example", "verify-example"),
    ("verify_inessential_rescale_U", "verify-example"),
    ("self_adjacency", "self-adjacency"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    ImaginaryTorus,
    RealLattice,
    Failed3d,
    RemovedFixedPoints,
    InessentialRescale,
}

#[derive(Debug, Parser)]
#[command(name = "cw-lab", version, about = "Computations on Cahen–Wallach spaces")]
pub struct Cli {
    /// Override a named tolerance, e.g. `--tolerance pullback=1e-8`.
    #[arg(long = "tolerance", value_name = "NAME=VAL", global = true)]
    pub tolerance: Vec<String>,
    #[arg(long, env = "CW_LAB_SEED", default_value_t = 42, global = true)]
    pub seed: u64,
    #[arg(long, default_value_t = 50, global = true)]
    pub samples: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral type of a profile `{"n", "S"}`.
    Classify { input: PathBuf },
    /// Values, symplectic pairing and reparametrisation of a β.
    Beta { input: PathBuf },
    /// Metric, Christoffel symbols or a curvature tensor.
    Curvature { input: PathBuf },
    /// Curvature of `e^{2f} g` from a 2-jet of `f`.
    ConformalChange { input: PathBuf },
    Apply { input: PathBuf },
    Compose { input: PathBuf },
    Inverse { input: PathBuf },
    Project { input: PathBuf },
    /// Checks `φ*g = e^{2s} g` at given or sampled points.
    FactorCheck { input: PathBuf },
    Centralises { input: PathBuf },
    FixedPoint { input: PathBuf },
    TorsionFixedPoint { input: PathBuf },
    Essential { input: PathBuf },
    /// Evaluates the rescaling making a fixed-point-free strict homothety an isometry.
    Rescaling { input: PathBuf },
    SolveBeta { input: PathBuf },
    NormalForm { input: PathBuf },
    Orbit { input: PathBuf },
    PdReport { input: PathBuf },
    CentraliserDemo { input: PathBuf },
    /// Pullback through a flat model map; without input, the full flat-model report.
    PullbackCheck {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Integrates `ẏ = y² − ε`.
    Blowup {
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        eps: i64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        y0: f64,
        #[arg(long, default_value_t = 3.0)]
        tmax: f64,
    },
    VerifyExample {
        #[arg(value_enum)]
        name: ExampleName,
        /// Parameter of the real lattice example.
        #[arg(long, default_value_t = 3)]
        r: u32,
    },
    SelfAdjacency { input: PathBuf },
}

/// Names of all subcommands.
pub fn subcommand_names() -> Vec<String> {
    Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect()
}

#[derive(Debug)]
enum Failure {
    Lib(CwError),
    Parse(String),
    Io(String),
}

impl From<CwError> for Failure {
    fn from(e: CwError) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Lib(e) if e.is_input_error() || matches!(e, CwError::Domain(_)) => EXIT_INPUT,
            Failure::Lib(_) => EXIT_PRECONDITION,
            Failure::Parse(_) | Failure::Io(_) => EXIT_INPUT,
        }
    }

    fn payload(&self) -> Value {
        let (kind, detail) = match self {
            Failure::Lib(e) => (e.kind().to_string(), e.to_string()),
            Failure::Parse(d) => ("parse".into(), d.clone()),
            Failure::Io(d) => ("io".into(), d.clone()),
        };
        json!({"error": {"kind": kind, "detail": detail}})
    }
}

type Outcome = std::result::Result<(Value, bool), Failure>;

struct Ctx {
    tolerances: BTreeMap<String, f64>,
    seed: u64,
    samples: usize,
}

impl Ctx {
    fn tol(&self, name: &str) -> f64 {
        self.tolerances[name]
    }

    fn profile(&self, spec: &ProfileSpec) -> Result<Arc<SymmetricProfile>, Failure> {
        let m = rows_to_matrix(&spec.s)
            .ok_or_else(|| CwError::MalformedProfile("S must be a non-empty rectangular array".into()))?;
        if m.nrows() != spec.n || m.ncols() != spec.n {
            return Err(CwError::DimensionMismatch { expected: spec.n, got: m.nrows() }.into());
        }
        Ok(Arc::new(SymmetricProfile::with_tolerance(m, self.tol("profile"))?))
    }

    fn homothety(&self, profile: &Arc<SymmetricProfile>, spec: &group::HomothetySpec) -> Result<Homothety, Failure> {
        Ok(Homothety::from_spec(profile.clone(), spec)?)
    }

    fn homotheties(
        &self,
        profile: &Arc<SymmetricProfile>,
        specs: &[group::HomothetySpec],
    ) -> Result<Vec<Homothety>, Failure> {
        specs.iter().map(|s| self.homothety(profile, s)).collect()
    }
}

fn parse_tolerances(raw: &[String]) -> Result<BTreeMap<String, f64>, Failure> {
    let mut map: BTreeMap<String, f64> = TOLERANCES.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    for item in raw {
        let (name, val) = item
            .split_once('=')
            .ok_or_else(|| Failure::Parse(format!("tolerance `{item}` is not NAME=VAL")))?;
        if !map.contains_key(name) {
            return Err(Failure::Parse(format!("unknown tolerance `{name}`")));
        }
        let v: f64 = val.parse().map_err(|_| Failure::Parse(format!("tolerance `{item}` is not a number")))?;
        if !(v > 0.0) || !v.is_finite() {
            return Err(Failure::Parse(format!("tolerance `{name}` must be positive")));
        }
        map.insert(name.to_string(), v);
    }
    Ok(map)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Parse(e.to_string()))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serialisable output")
}

fn ok<T: Serialize>(v: &T) -> Outcome {
    Ok((to_value(v), true))
}

fn report_outcome(r: &Report) -> Outcome {
    Ok((to_value(r), r.passed()))
}

fn point_in(profile: &SymmetricProfile, p: Option<Point>) -> Result<Point, Failure> {
    let p = p.unwrap_or_else(|| Point::origin(profile.n()));
    if p.n() != profile.n() {
        return Err(CwError::DimensionMismatch { expected: profile.dim(), got: p.n() + 2 }.into());
    }
    Ok(p)
}

fn sym_from_rows(rows: &[Vec<f64>]) -> Result<SymBilinear, Failure> {
    let m = rows_to_matrix(rows).ok_or_else(|| CwError::InvalidInput("tensor must be a rectangular array".into()))?;
    Ok(SymBilinear::new(m)?)
}

fn dispatch(cmd: &Command, ctx: &Ctx) -> Outcome {
    match cmd {
        Command::Classify { input } => {
            let spec: ProfileSpec = read_json(input)?;
            ok(&ctx.profile(&spec)?.classify())
        }
        Command::Beta { input } => {
            let inp: BetaInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            let beta = BetaSolution::from_spec(profile.clone(), &inp.beta)?;
            let values: Vec<Value> = inp
                .t
                .iter()
                .map(|&t| {
                    let (v, d) = beta.eval(t);
                    json!({"t": t, "value": v.as_slice(), "derivative": d.as_slice()})
                })
                .collect();
            let mut out = json!({"values": values});
            if let Some(other) = &inp.other {
                let other = BetaSolution::from_spec(profile.clone(), other)?;
                out["symplectic"] = json!(beta.symplectic_form(&other)?);
            }
            if let Some(r) = &inp.reparam {
                let a = matrix(&r.a)?;
                out["reparam"] = to_value(&beta.reparam(r.c, r.eps, &a)?.to_spec());
            }
            Ok((out, true))
        }
        Command::Curvature { input } => {
            let inp: CurvatureInput = read_json(input)?;
            let value = if inp.tensor == "kulkarni-nomizu" {
                let (a, b) = inp
                    .a
                    .as_ref()
                    .zip(inp.b.as_ref())
                    .ok_or_else(|| CwError::InvalidInput("kulkarni-nomizu needs A and B".into()))?;
                to_value(&curvature::kulkarni_nomizu(&sym_from_rows(a)?, &sym_from_rows(b)?)?)
            } else {
                let spec = inp
                    .profile
                    .as_ref()
                    .ok_or_else(|| CwError::InvalidInput(format!("{} needs a profile", inp.tensor)))?;
                let profile = ctx.profile(spec)?;
                let p = point_in(&profile, inp.point.clone());
                match inp.tensor.as_str() {
                    "metric" => to_value(&curvature::metric_at(&profile, &p?)?),
                    "christoffel" => to_value(&curvature::christoffel_at(&profile, &p?)?),
                    "riemann" => to_value(&curvature::riemann(&profile)),
                    "ricci" => to_value(&curvature::ricci(&profile)),
                    "scalar" => json!(curvature::scalar(&profile)),
                    "schouten" => to_value(&curvature::schouten(&profile)),
                    "weyl" => to_value(&curvature::weyl(&profile)),
                    "cotton" if inp.point.is_some() => to_value(&curvature::cotton_at(&profile, &p?)?),
                    "cotton" => to_value(&curvature::cotton(&profile)),
                    other => return Err(CwError::InvalidInput(format!("unknown tensor `{other}`")).into()),
                }
            };
            Ok((json!({"tensor": inp.tensor, "value": value}), true))
        }
        Command::ConformalChange { input } => {
            let inp: ConformalInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            let p = point_in(&profile, inp.point)?;
            ok(&curvature::conformal_change_at(&profile, &p, &inp.jet)?)
        }
        Command::Apply { input } => {
            let inp: ApplyInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            ok(&ctx.homothety(&profile, &inp.phi)?.apply(&inp.point)?)
        }
        Command::Compose { input } => {
            let inp: PairInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            let (phi, psi) = (ctx.homothety(&profile, &inp.phi)?, ctx.homothety(&profile, &inp.psi)?);
            ok(&phi.compose(&psi)?.to_spec())
        }
        Command::Inverse { input } => {
            let inp: PhiInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            ok(&ctx.homothety(&profile, &inp.phi)?.inverse().to_spec())
        }
        Command::Project { input } => {
            let inp: PhiInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            ok(&ctx.homothety(&profile, &inp.phi)?.project())
        }
        Command::FactorCheck { input } => {
            let inp: FactorInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            let phi = ctx.homothety(&profile, &inp.phi)?;
            let points = if inp.points.is_empty() {
                let mut rng = sampling::rng(ctx.seed);
                (0..ctx.samples).map(|_| sampling::random_point(&mut rng, profile.n(), 1.0)).collect()
            } else {
                inp.points
            };
            let vectors: Vec<_> = inp.vectors.iter().map(|v| nalgebra::DVector::from_vec(v.clone())).collect();
            let dev = group::homothety_factor_check(&phi, &points, &vectors)?;
            let pass = dev <= ctx.tol("factor");
            Ok((json!({"max_deviation": dev, "pass": pass, "points": points.len()}), pass))
        }
        Command::Centralises { input } => {
            let inp: CentralisesInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            let phi = ctx.homothety(&profile, &inp.phi)?;
            let mut out = json!({});
            if let Some(eta) = &inp.eta {
                out["centralises"] = json!(phi.centralises(&ctx.homothety(&profile, eta)?)?);
            }
            if let Some(s) = inp.s {
                out["in_pure_centraliser"] = json!(group::centraliser_of_pure(s)?.contains(&phi));
            }
            if inp.eta.is_none() && inp.s.is_none() {
                return Err(CwError::InvalidInput("give `eta` or `s`".into()).into());
            }
            Ok((out, true))
        }
        Command::FixedPoint { input } => {
            let inp: PhiInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            ok(&dynamics::fixed_point(&ctx.homothety(&profile, &inp.phi)?))
        }
        Command::TorsionFixedPoint { input } => {
            let inp: TorsionInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            ok(&dynamics::torsion_fixed_point(&ctx.homothety(&profile, &inp.phi)?, inp.k)?)
        }
        Command::Essential { input } => {
            let inp: PhiInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            let phi = ctx.homothety(&profile, &inp.phi)?;
            let essential = dynamics::is_essential(&phi)?;
            let fp = dynamics::fixed_point(&phi);
            Ok((json!({"essential": essential, "fixed_point": fp.point}), true))
        }
        Command::Rescaling { input } => {
            let inp: RescalingInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            let phi = ctx.homothety(&profile, &inp.phi)?;
            let f = dynamics::inessential_rescaling(&phi)?;
            let mut values = Vec::with_capacity(inp.points.len());
            let mut equivariance = 0.0_f64;
            for p in &inp.points {
                let p = point_in(&profile, Some(p.clone()))?;
                let fp = f.eval(&p);
                equivariance = equivariance.max((f.eval(&phi.apply(&p)?) - fp + phi.s()).abs());
                values.push(fp);
            }
            ok(&json!({"c": f.c, "s": f.s, "values": values, "equivariance_residual": equivariance}))
        }
        Command::SolveBeta { input } => {
            let inp: SolveBetaInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            let a = matrix(&inp.a)?;
            let betahat = BetaSolution::from_spec(profile.clone(), &inp.betahat)?;
            let dets = dynamics::conjugation_block_determinants(&profile, &a, inp.s, inp.c)?;
            let beta = dynamics::solve_conjugation_beta(&profile, &a, inp.s, inp.c, &betahat)?;
            ok(&json!({"beta": beta.to_spec(), "block_determinants": dets}))
        }
        Command::NormalForm { input } => {
            let inp: PhiInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            let nf = dynamics::normal_form(&ctx.homothety(&profile, &inp.phi)?)?;
            ok(&json!({
                "conjugator": nf.conjugator.to_spec(),
                "normal": nf.normal.to_spec(),
                "residual": nf.residual,
            }))
        }
        Command::Orbit { input } => {
            let inp: OrbitInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            let (gamma, phi) = (ctx.homothety(&profile, &inp.gamma)?, ctx.homothety(&profile, &inp.phi)?);
            ok(&dynamics::orbit_obstruction_sequence(&gamma, &phi, inp.k_max)?)
        }
        Command::PdReport { input } => {
            let inp: PdInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            ok(&dynamics::pd_necessary_report(&ctx.homotheties(&profile, &inp.generators)?, inp.max_length)?)
        }
        Command::CentraliserDemo { input } => {
            let inp: DemoInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            let eta = ctx.homothety(&profile, &inp.eta)?;
            ok(&dynamics::centraliser_projection_demo(&eta, &ctx.homotheties(&profile, &inp.gammas)?)?)
        }
        Command::PullbackCheck { input: None, dim } => {
            if *dim == 0 {
                return Err(CwError::InvalidInput("--dim must be at least 1".into()).into());
            }
            report_outcome(&flat::flat_model_report(*dim, ctx.samples, ctx.seed)?)
        }
        Command::PullbackCheck { input: Some(path), .. } => {
            let inp: PullbackInput = read_json(path)?;
            let n = inp.point.n();
            let p = inp.point.to_vector();
            let (pulled, expected) = match inp.map.as_str() {
                "minkowski" => (
                    flat::pullback_metric(&flat::MinkowskiMap { n }, &flat::minkowski_metric, &p)?,
                    curvature::metric_at(&flat::g_plus(n), &inp.point)?.scale((2.0 * inp.point.t).exp()),
                ),
                "imaginary-strip" => (
                    flat::pullback_metric(&flat::ImaginaryLocalMap { n }, &flat::minkowski_metric, &p)?,
                    curvature::metric_at(&flat::g_minus(n), &inp.point)?.scale(1.0 / inp.point.t.cos().powi(2)),
                ),
                other => return Err(CwError::InvalidInput(format!("unknown map `{other}`")).into()),
            };
            let image = match inp.map.as_str() {
                "minkowski" => flat::MinkowskiMap { n }.forward(&p)?,
                _ => flat::ImaginaryLocalMap { n }.forward(&p)?,
            };
            let dev = pulled.max_diff(&expected) / expected.max_abs().max(1.0);
            let pass = dev <= ctx.tol("pullback");
            Ok((
                json!({"image": image.as_slice(), "pullback": pulled, "expected": expected, "deviation": dev, "pass": pass}),
                pass,
            ))
        }
        Command::Blowup { eps, y0, tmax } => {
            let sign = match eps {
                1 => Sign::Plus,
                -1 => Sign::Minus,
                _ => return Err(CwError::InvalidInput(format!("eps must be ±1, got {eps}")).into()),
            };
            ok(&flat::flatness_blowup_demo(sign, *y0, *tmax)?)
        }
        Command::VerifyExample { name, r } => {
            let (samples, seed) = (ctx.samples, ctx.seed);
            let report = match name {
                ExampleName::ImaginaryTorus => quotients::verify_imaginary_torus_example(samples, seed)?,
                ExampleName::RealLattice => quotients::verify_real_lattice_example(*r, samples, seed)?,
                ExampleName::Failed3d => quotients::verify_failed_3d_example(samples, seed)?,
                ExampleName::RemovedFixedPoints => quotients::verify_removed_fixed_points_example(samples, seed)?,
                ExampleName::InessentialRescale => quotients::verify_inessential_rescale_u(samples, seed)?,
            };
            report_outcome(&report)
        }
        Command::SelfAdjacency { input } => {
            let inp: AdjacencyInput = read_json(input)?;
            let profile = ctx.profile(&inp.profile)?;
            let gens = ctx.homotheties(&profile, &inp.generators)?;
            let region = quotients::BoxRegion::new(inp.region.outer, inp.region.holes)?;
            let [lo, hi] = inp.range;
            let set = quotients::self_adjacency(&region, &gens, lo..=hi)?;
            ok(&json!({"indices": set, "count": set.len()}))
        }
    }
}

fn matrix(rows: &[Vec<f64>]) -> Result<nalgebra::DMatrix<f64>, Failure> {
    Ok(rows_to_matrix(rows).ok_or_else(|| CwError::InvalidInput("matrix must be a non-empty rectangular array".into()))?)
}

fn emit(value: &Value, cli: &Cli) -> Result<(), Failure> {
    let mut text = match cli.format {
        Format::Json => serde_json::to_string(value),
        Format::Pretty => serde_json::to_string_pretty(value),
    }
    .expect("serialisable output");
    text.push('\n');
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = parse_tolerances(&cli.tolerance).and_then(|tolerances| {
        let ctx = Ctx { tolerances, seed: cli.seed, samples: cli.samples };
        let (value, passed) = dispatch(&cli.command, &ctx)?;
        emit(&value, cli)?;
        Ok(passed)
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(f) => {
            eprintln!("{}", f.payload());
            f.exit_code()
        }
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            let _ = e.print();
            EXIT_OK
        }
        Err(e) => {
            eprintln!("{}", Failure::Parse(e.to_string().trim().to_string()).payload());
            EXIT_INPUT
        }
    }
}
