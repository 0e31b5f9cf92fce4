//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::algebra::{AlgebraSpec, Element};
use crate::dynamics::{heisenberg_rhs, Hamiltonian};
use crate::eigen::operator_eigen;
use crate::enveloping::{word_from_json, Enveloping, MultOp, Word};
use crate::error::{NaqmError, Result};
use crate::gns::{gns_report, tracial_gns};
use crate::instances::{
    bonafide_hamiltonian, clifford_check, clifford_gamma, jordan_model, lie_unitization, matrix_algebra,
    octonion_algebra, octonion_left_matrices, pauli_jordan, pauli_model, phase_matrix, signed_permutation_check,
    su2_constants, OctonionTable,
};
use crate::io::{
    canonical_json, complex_json, complex_vec_json, csv_float, format_element, load_algebra, load_scenario, load_word,
    parse_vector, ComplexRepr, Scenario, StateDef, TimeGrid,
};
use crate::matrix::Matrix;
use crate::scalar::{tolerance_from_env, Exact, Scalar};
use crate::states::{
    check_uncertainty_relation, mixed_state, tracial_state, vector_state, StateFunctional, TraceFunctional,
};

type C = Complex64;

#[derive(Debug, Parser)]
#[command(
    name = "naqm",
    version,
    about = "Nonassociative quantum mechanics on finite-dimensional *-algebras"
)]
pub struct Cli {
    /// Exact rational arithmetic (algebra check, env dim, demo)
    #[arg(long, global = true, conflicts_with = "float")]
    pub exact: bool,
    /// Double-precision arithmetic
    #[arg(long, global = true)]
    pub float: bool,
    /// Float equality tolerance (overrides NAQM_TOL)
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Algebra definition checks
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Multiplication algebra computations
    #[command(subcommand)]
    Env(EnvCmd),
    /// GNS representation of a state and its purity
    Gns(GnsArgs),
    /// Eigenvectors of a multiplication operator
    Eigen(EigenArgs),
    /// Uncertainty relation for two observables
    Uncertainty(UncertaintyArgs),
    /// Schrodinger evolution on a time grid, written as CSV
    Evolve(EvolveArgs),
    /// Built-in demonstrations
    #[command(subcommand)]
    Demo(DemoCmd),
}

#[derive(Debug, Args)]
pub struct AlgebraSource {
    /// Algebra JSON file, or builtin:octonion | builtin:jordan:N | builtin:pauli |
    /// builtin:matrix:N | builtin:su2
    #[arg(long)]
    pub algebra: Option<String>,
    /// Scenario JSON file
    #[arg(long)]
    pub scenario: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    /// Verify unit, star and trace axioms
    Check(AlgebraSource),
}

#[derive(Debug, Subcommand)]
pub enum EnvCmd {
    /// Dimension of the subalgebra generated by multiplication operators
    Dim(EnvDimArgs),
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum Generators {
    Left,
    Right,
    Both,
}

#[derive(Debug, Args)]
pub struct EnvDimArgs {
    #[command(flatten)]
    pub source: AlgebraSource,
    #[arg(long, value_enum, default_value = "left")]
    pub generators: Generators,
    /// Do not add the identity operator to the generators
    #[arg(long)]
    pub no_unit: bool,
}

#[derive(Debug, Args)]
pub struct GnsArgs {
    #[command(flatten)]
    pub source: AlgebraSource,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    #[command(flatten)]
    pub source: AlgebraSource,
    /// Word file of the operator
    #[arg(long)]
    pub operator: PathBuf,
}

#[derive(Debug, Args)]
pub struct UncertaintyArgs {
    #[command(flatten)]
    pub source: AlgebraSource,
    /// Word file of the first observable
    #[arg(long = "a")]
    pub a: PathBuf,
    /// Word file of the second observable
    #[arg(long = "b")]
    pub b: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub source: AlgebraSource,
    /// Word file of the Hamiltonian
    #[arg(long)]
    pub hamiltonian: Option<PathBuf>,
    /// Initial vector: inline JSON or a file
    #[arg(long)]
    pub psi0: Option<String>,
    /// Start time (default 0)
    #[arg(long)]
    pub t0: Option<f64>,
    /// End time (default 1)
    #[arg(long)]
    pub t1: Option<f64>,
    /// Number of time steps (default 10)
    #[arg(long)]
    pub steps: Option<usize>,
    /// Reduced Planck constant (default 1)
    #[arg(long)]
    pub hbar: Option<f64>,
    /// Word files of observables whose expectation values are tabulated
    #[arg(long = "observable")]
    pub observables: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum DemoCmd {
    /// Octonion multiplication table and headline quantities
    Octonion,
    /// Jordan matrix algebra M_N
    Jordan { n: usize },
}

/// Exit status together with a message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<NaqmError> for Failure {
    fn from(e: NaqmError) -> Self {
        let code = match e {
            NaqmError::Io(ref io) if io.kind() != std::io::ErrorKind::NotFound => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Exact,
    Float,
}

struct Ctx {
    mode: Mode,
    tol: f64,
}

/// Parses arguments and runs a command, writing the report to `--out` or
/// `stdout`. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, passed)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| Failure {
                    code: 1,
                    message: format!("cannot write {}: {e}", path.display()),
                }),
                None => stdout.write_all(text.as_bytes()).map_err(|e| Failure {
                    code: 1,
                    message: e.to_string(),
                }),
            };
            match written {
                Err(f) => {
                    let _ = writeln!(stderr, "error: {}", f.message);
                    f.code
                }
                Ok(()) if !passed => {
                    let _ = writeln!(stderr, "error: validation failed");
                    2
                }
                Ok(()) => 0,
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli) -> std::result::Result<(String, bool), Failure> {
    let tol = match cli.tol {
        Some(t) if t.is_finite() && t > 0.0 => t,
        Some(t) => {
            return Err(Failure {
                code: 2,
                message: format!("--tol must be positive, got {t}"),
            })
        }
        None => tolerance_from_env(),
    };
    let algebraic = matches!(cli.command, Command::Algebra(_) | Command::Env(_) | Command::Demo(_));
    if cli.exact && !algebraic {
        return Err(Failure {
            code: 2,
            message: "--exact is only available for algebra check, env dim and demo".into(),
        });
    }
    let mode = if cli.float {
        Mode::Float
    } else if algebraic {
        Mode::Exact
    } else {
        Mode::Float
    };
    let ctx = Ctx { mode, tol };
    let (value, passed) = match &cli.command {
        Command::Algebra(AlgebraCmd::Check(src)) => match ctx.mode {
            Mode::Exact => algebra_check::<Exact>(&ctx, src)?,
            Mode::Float => algebra_check::<C>(&ctx, src)?,
        },
        Command::Env(EnvCmd::Dim(args)) => match ctx.mode {
            Mode::Exact => env_dim::<Exact>(&ctx, args)?,
            Mode::Float => env_dim::<C>(&ctx, args)?,
        },
        Command::Gns(args) => (gns_cmd(&ctx, args)?, true),
        Command::Eigen(args) => (eigen_cmd(&ctx, args)?, true),
        Command::Uncertainty(args) => uncertainty_cmd(&ctx, args)?,
        Command::Evolve(args) => return Ok((evolve_cmd(&ctx, args)?, true)),
        Command::Demo(DemoCmd::Octonion) => demo_octonion(&ctx)?,
        Command::Demo(DemoCmd::Jordan { n }) => demo_jordan(&ctx, *n)?,
    };
    Ok((canonical_json(&value), passed))
}

/// Resolves `builtin:` names or loads an algebra file.
pub fn resolve_algebra<S: Scalar>(spec: &str) -> Result<AlgebraSpec<S>> {
    let Some(rest) = spec.strip_prefix("builtin:") else {
        return load_algebra(Path::new(spec));
    };
    let parts: Vec<&str> = rest.split(':').collect();
    let size = |p: Option<&&str>| -> Result<usize> {
        p.and_then(|s| s.parse().ok())
            .ok_or_else(|| NaqmError::InvalidInput(format!("builtin '{rest}' needs a size")))
    };
    match parts[0] {
        "octonion" | "octonions" => Ok(octonion_algebra()),
        "jordan" => crate::instances::jordan_matrix_algebra(size(parts.get(1))?),
        "pauli" => Ok(pauli_jordan()),
        "matrix" => matrix_algebra(size(parts.get(1))?),
        "su2" => lie_unitization(3, &su2_constants::<S>(), 1e-12),
        other => Err(NaqmError::InvalidInput(format!("unknown builtin algebra '{other}'"))),
    }
}

fn scenario_of(src: &AlgebraSource) -> Result<Scenario> {
    match &src.scenario {
        Some(p) => load_scenario(p),
        None => Ok(Scenario::default()),
    }
}

fn algebra_of<S: Scalar>(src: &AlgebraSource, scenario: &Scenario) -> Result<AlgebraSpec<S>> {
    let spec = src
        .algebra
        .clone()
        .or_else(|| scenario.algebra.clone())
        .ok_or_else(|| NaqmError::InvalidInput("no algebra given (use --algebra)".into()))?;
    let alg = resolve_algebra::<S>(&spec)?;
    match &scenario.trace {
        Some(t) => {
            let cov: Vec<S> = t.iter().map(|c| c.to_scalar()).collect();
            alg.with_trace(cov)
        }
        None => Ok(alg),
    }
}

fn algebra_check<S: Scalar>(ctx: &Ctx, src: &AlgebraSource) -> Result<(Value, bool)> {
    let scenario = scenario_of(src)?;
    let alg = algebra_of::<S>(src, &scenario)?;
    let axioms = alg.check_axioms(ctx.tol);
    let trace = alg
        .trace_covector()
        .map(|_| TraceFunctional::of(&alg).map(|t| t.check_axioms(&alg, ctx.tol)))
        .transpose()?;
    let passed = axioms.passed && trace.as_ref().is_none_or(|t| t.passed);
    let value = json!({
        "algebra": alg.label(),
        "dim": alg.dim(),
        "exact": S::EXACT,
        "axioms": serde_json::to_value(&axioms).expect("report"),
        "trace_axioms": trace.map(|t| serde_json::to_value(&t).expect("report")),
        "passed": passed,
    });
    Ok((value, passed))
}

fn generators<S: Scalar>(env: &Enveloping<S>, which: Generators) -> Vec<MultOp<S>> {
    match which {
        Generators::Left => env.left_generators(),
        Generators::Right => env.right_generators(),
        Generators::Both => {
            let mut g = env.left_generators();
            g.extend(env.right_generators());
            g
        }
    }
}

fn rank_tol<S: Scalar>() -> f64 {
    if S::EXACT {
        0.0
    } else {
        1e-8
    }
}

fn env_dim<S: Scalar>(_ctx: &Ctx, args: &EnvDimArgs) -> Result<(Value, bool)> {
    let scenario = scenario_of(&args.source)?;
    let alg = algebra_of::<S>(&args.source, &scenario)?;
    let env = Enveloping::new(&alg);
    let gens = generators(&env, args.generators);
    let sub = env.span_closure(&gens, !args.no_unit, rank_tol::<S>())?;
    let mut report = sub.report(alg.label());
    report["full_matrix_algebra"] = json!(sub.dim == alg.dim() * alg.dim());
    report["exact"] = json!(S::EXACT);
    Ok((report, true))
}

fn complex_list(v: &Value, what: &str) -> Result<Vec<C>> {
    serde_json::from_value::<Vec<ComplexRepr>>(v.clone())
        .map(|xs| xs.into_iter().map(|c| c.to_scalar()).collect())
        .map_err(|e| NaqmError::InvalidInput(format!("{what}: {e}")))
}

fn build_state(
    alg: &AlgebraSpec<C>,
    tau: &TraceFunctional<C>,
    def: Option<&StateDef>,
    tol: f64,
) -> Result<StateFunctional<C>> {
    let Some(def) = def else {
        return Ok(tracial_state(alg, tau));
    };
    match def.kind.as_str() {
        "tracial" => Ok(tracial_state(alg, tau)),
        "vector" => {
            let v = def
                .psi
                .as_ref()
                .ok_or_else(|| NaqmError::InvalidInput("vector state needs psi".into()))?;
            let psi = Element::new(complex_list(v, "psi")?);
            alg.check_dim(&psi)?;
            vector_state(alg, tau, &psi, tol)
        }
        "mixed" => {
            let v = def
                .psi
                .as_ref()
                .and_then(Value::as_array)
                .ok_or_else(|| NaqmError::InvalidInput("mixed state needs a list of psi".into()))?;
            let psis = v
                .iter()
                .enumerate()
                .map(|(k, p)| {
                    let e = Element::new(complex_list(p, &format!("psi[{k}]"))?);
                    alg.check_dim(&e)?;
                    Ok(e)
                })
                .collect::<Result<Vec<_>>>()?;
            let probs: Vec<C> = def
                .probs
                .as_ref()
                .ok_or_else(|| NaqmError::InvalidInput("mixed state needs probs".into()))?
                .iter()
                .map(|p| C::new(*p, 0.0))
                .collect();
            mixed_state(alg, tau, &probs, &psis, tol)
        }
        other => Err(NaqmError::InvalidInput(format!("unknown state kind '{other}'"))),
    }
}

fn full_basis(env: &Enveloping<C>) -> Result<crate::enveloping::GeneratedSubalgebra<C>> {
    let gens = generators(env, Generators::Both);
    env.span_closure(&gens, true, 1e-8)
}

fn gns_cmd(ctx: &Ctx, args: &GnsArgs) -> Result<Value> {
    let scenario = scenario_of(&args.source)?;
    let alg = algebra_of::<C>(&args.source, &scenario)?;
    let tau = TraceFunctional::of(&alg)?;
    let omega = build_state(&alg, &tau, scenario.state.as_ref(), ctx.tol)?;
    let env = Enveloping::new(&alg);
    let basis = full_basis(&env)?;
    let report = gns_report(&env, &omega, &basis, ctx.tol)?;
    let mut v = serde_json::to_value(&report).expect("report");
    v["operator_basis_dim"] = json!(basis.dim);
    v["state"] = json!(omega.kind().name());
    Ok(v)
}

fn eigen_cmd(_ctx: &Ctx, args: &EigenArgs) -> Result<Value> {
    let scenario = scenario_of(&args.source)?;
    let alg = algebra_of::<C>(&args.source, &scenario)?;
    let env = Enveloping::new(&alg);
    let x = env.evaluate_word(&load_word::<C>(&args.operator)?)?;
    let tau = TraceFunctional::of(&alg).ok();
    let pairs = operator_eigen(&alg, tau.as_ref(), &x)?;
    Ok(Value::Array(
        pairs
            .iter()
            .map(|p| {
                json!({
                    "lambda": complex_json(&p.value),
                    "residual": p.residual,
                    "vector": complex_vec_json(p.vector.coeffs()),
                    "generalized": p.generalized,
                })
            })
            .collect(),
    ))
}

fn uncertainty_cmd(ctx: &Ctx, args: &UncertaintyArgs) -> Result<(Value, bool)> {
    let scenario = scenario_of(&args.source)?;
    let alg = algebra_of::<C>(&args.source, &scenario)?;
    let tau = TraceFunctional::of(&alg)?;
    let omega = build_state(&alg, &tau, scenario.state.as_ref(), ctx.tol)?;
    let env = Enveloping::new(&alg);
    let a = env.evaluate_word(&load_word::<C>(&args.a)?)?;
    let b = env.evaluate_word(&load_word::<C>(&args.b)?)?;
    let r = check_uncertainty_relation(&env, &omega, &a, &b, ctx.tol)?;
    let holds = r.holds;
    Ok((serde_json::to_value(&r).expect("report"), holds))
}

fn word_arg(path: Option<&PathBuf>, inline: Option<&Value>, what: &str) -> Result<Word<C>> {
    match (path, inline) {
        (Some(p), _) => load_word(p),
        (None, Some(v)) => word_from_json(v),
        (None, None) => Err(NaqmError::InvalidInput(format!("missing {what}"))),
    }
}

fn evolve_cmd(ctx: &Ctx, args: &EvolveArgs) -> Result<String> {
    let scenario = scenario_of(&args.source)?;
    let alg = algebra_of::<C>(&args.source, &scenario)?;
    let env = Enveloping::new(&alg);
    let hword = word_arg(
        args.hamiltonian.as_ref(),
        scenario.hamiltonian.as_ref(),
        "--hamiltonian",
    )?;
    let hbar = args.hbar.or(scenario.hbar).unwrap_or(1.0);
    let h = Hamiltonian::new(&env, env.evaluate_word(&hword)?, C::new(hbar, 0.0), ctx.tol)?;
    let psi0 = match (&args.psi0, &scenario.psi0) {
        (Some(s), _) => parse_vector::<C>(s, alg.dim())?,
        (None, Some(v)) => {
            let e = Element::new(complex_list(v, "psi0")?);
            alg.check_dim(&e)?;
            e
        }
        (None, None) => return Err(NaqmError::InvalidInput("missing --psi0".into())),
    };
    let grid = match (args.t0, args.t1, args.steps, &scenario.time) {
        (Some(t0), Some(t1), Some(steps), _) => TimeGrid { t0, t1, steps },
        (None, None, None, Some(g)) => g.clone(),
        _ => {
            let base = scenario.time.clone().unwrap_or(TimeGrid {
                t0: 0.0,
                t1: 1.0,
                steps: 10,
            });
            TimeGrid {
                t0: args.t0.unwrap_or(base.t0),
                t1: args.t1.unwrap_or(base.t1),
                steps: args.steps.unwrap_or(base.steps),
            }
        }
    };
    grid.validate()?;
    let mut observables = Vec::new();
    for p in &args.observables {
        observables.push(env.evaluate_word(&load_word::<C>(p)?)?);
    }
    for v in &scenario.observables {
        observables.push(env.evaluate_word(&word_from_json::<C>(v)?)?);
    }
    let tau = TraceFunctional::of(&alg).ok();
    if !observables.is_empty() && tau.is_none() {
        return Err(NaqmError::InvalidInput("expectation values need a trace".into()));
    }
    let mut header = vec!["t".to_string()];
    for label in alg.labels() {
        header.push(format!("re_{label}"));
        header.push(format!("im_{label}"));
    }
    for k in 0..observables.len() {
        header.push(format!("exp_{k}"));
    }
    let mut out = header.join(",");
    out.push('\n');
    for t in grid.points() {
        let psi = h.schrodinger_evolve(&psi0, t)?;
        let mut row = vec![csv_float(t)];
        for c in psi.coeffs() {
            row.push(csv_float(c.re));
            row.push(csv_float(c.im));
        }
        if let Some(tau) = &tau {
            for o in &observables {
                let v = tau.inner(&alg, &psi, &o.act(&psi)?)?;
                row.push(csv_float(v.re));
            }
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn table<S: Scalar>(alg: &AlgebraSpec<S>) -> Value {
    let n = alg.dim();
    Value::Array(
        (0..n)
            .map(|mu| {
                Value::Array(
                    (0..n)
                        .map(|nu| {
                            let p = alg.multiply(&alg.basis(mu), &alg.basis(nu)).expect("basis");
                            json!(format_element(alg, &p))
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

fn algebraic_summary<S: Scalar>(alg: &AlgebraSpec<S>, tol: f64) -> Result<(Value, bool)> {
    let axioms = alg.check_axioms(tol);
    let trace = TraceFunctional::of(alg)?.check_axioms(alg, tol);
    let env = Enveloping::new(alg);
    let sub = env.span_closure(&env.left_generators(), true, rank_tol::<S>())?;
    let passed = axioms.passed && trace.passed;
    Ok((
        json!({
            "algebra": alg.label(),
            "dim": alg.dim(),
            "exact": S::EXACT,
            "multiplication_table": table(alg),
            "axioms": serde_json::to_value(&axioms).expect("report"),
            "trace_axioms": serde_json::to_value(&trace).expect("report"),
            "enveloping_dim": sub.dim,
        }),
        passed,
    ))
}

fn octonion_structure<S: Scalar>(tol: f64) -> Result<Value> {
    let e = octonion_left_matrices::<S>();
    let signed = (1..8).all(|i| signed_permutation_check(&e[i], tol))
        && (1..8).all(|i| (1..8).all(|j| signed_permutation_check(&(&e[i] * &e[j]), tol)));
    let phases = OctonionTable::n_all()
        .into_iter()
        .all(|(i, j, k)| phase_matrix::<S>(i, j, k).is_ok());
    let product = (2..8).fold(e[1].clone(), |acc, i| &acc * &e[i]);
    let minus_id = Matrix::<S>::identity(8).scale(&-S::one());
    Ok(json!({
        "signed_permutations": signed,
        "phase_matrices": phases,
        "e1_to_e7_product_is_minus_identity": product.approx_eq(&minus_id, tol),
        "clifford_relations": clifford_check(&clifford_gamma::<S>(), tol),
    }))
}

fn demo_octonion(ctx: &Ctx) -> Result<(Value, bool)> {
    let (mut v, passed) = match ctx.mode {
        Mode::Exact => algebraic_summary(&octonion_algebra::<Exact>(), ctx.tol)?,
        Mode::Float => algebraic_summary(&octonion_algebra::<C>(), ctx.tol)?,
    };
    v["structure"] = match ctx.mode {
        Mode::Exact => octonion_structure::<Exact>(ctx.tol)?,
        Mode::Float => octonion_structure::<C>(ctx.tol)?,
    };
    let o = octonion_algebra::<C>();
    let env = Enveloping::new(&o);
    let tau = TraceFunctional::of(&o)?;
    let omega = tracial_state(&o, &tau);
    let a = env.left_op(&o.basis(7))?.scale(&C::new(0.0, 1.0));
    let b = env.evaluate_word(&Word::sequence(&[
        (crate::Side::L, 1),
        (crate::Side::L, 2),
        (crate::Side::L, 4),
    ]))?;
    let ct = omega.eval(&a.commutator(&b)?);
    let u = check_uncertainty_relation(&env, &omega, &a, &b, ctx.tol)?;
    let basis = full_basis(&env)?;
    let g = gns_report(&env, &omega, &basis, ctx.tol)?;
    v["commutator_trace"] = complex_json(&ct);
    v["uncertainty"] = json!({
        "delta_a": u.delta1,
        "delta_b": u.delta2,
        "half_commutator": u.rhs,
        "slack": u.slack,
        "minimum_uncertainty": u.slack.abs() <= 1e-10,
    });
    v["tracial_state"] = json!({
        "gns_quotient_dim": g.quotient_dim,
        "commutant_dim": g.commutant_dim,
        "pure": g.pure,
    });
    Ok((v, passed))
}

fn demo_jordan(ctx: &Ctx, n: usize) -> Result<(Value, bool)> {
    let (mut v, passed) = match ctx.mode {
        Mode::Exact => algebraic_summary(&jordan_model::<Exact>(n)?.into_algebra(), ctx.tol)?,
        Mode::Float => algebraic_summary(&jordan_model::<C>(n)?.into_algebra(), ctx.tol)?,
    };
    let alg = jordan_model::<C>(n)?.into_algebra();
    v["commutative"] = json!(alg.is_commutative(ctx.tol));
    let tau = TraceFunctional::of(&alg)?;
    let (pre, _) = tracial_gns(&alg, &tau, ctx.tol)?;
    v["tracial_gns_dim"] = json!(pre.dim());
    if n == 2 {
        let model = pauli_model::<Exact>();
        let p = model.algebra();
        let env = Enveloping::new(p);
        let h = bonafide_hamiltonian(&model, &p.basis(2), &p.basis(3), &Exact::one(), 0.0)?;
        let z_hat = env.left_op(&p.basis(3))?;
        let ham = Hamiltonian {
            op: h.clone(),
            hbar: Exact::one(),
        };
        let rhs = heisenberg_rhs(&ham, &z_hat)?;
        v["pauli"] = json!({
            "bonafide_hamiltonian_equals_z": h.matrix() == z_hat.matrix(),
            "z_constant_of_motion": rhs.matrix().data().iter().all(|c| *c == Exact::zero()),
        });
    }
    Ok((v, passed))
}
