//! Command-line front end. [`run`] returns the exit status and everything
//! that would be printed, so the binary and the tests share one code path.
//!
//! Exit status: 0 on success or when a check holds, 1 when a check fails,
//! 2 on usage, parse, typing or file errors.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::axioms::{
    scan_doubling, scan_env_a, scan_env_b, scan_env_c, scan_prep_state, scan_xi, AxiomReport, EnvStructure,
};
use crate::channels::{check_cp, choi_of_kraus, kraus_from_choi, ChoiMatrix, KRAUS_CUTOFF};
use crate::cp::{cp_compose, KrausMor};
use crate::dsl::{
    eval, fmt_f64, parse_expr, parse_script_with, render_mor, run_script, DslError, Env, LitScalar, MorFile, Semiring,
};
use crate::laws::check_laws;
use crate::mor::{CMor, Mor};
use crate::object::Object;
use crate::sample::{HilbSampler, RelSampler, Sampler};
use crate::scalar::Scalar;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const TOL_ENV_VAR: &str = "CPKIT_TOL";

#[derive(Parser, Debug)]
#[command(name = "cpkit", version, about = "CP/CPM constructions, Choi/Kraus tools and axiom checkers")]
struct Cli {
    /// Scalar semiring: complex (FdHilb) or bool (Rel).
    #[arg(long, global = true, default_value = "complex")]
    semiring: Semiring,

    /// Script whose bindings are in scope for the command.
    #[arg(long, global = true)]
    script: Option<PathBuf>,

    /// Bind NAME to the morphism stored in FILE (repeatable).
    #[arg(long = "bind", global = true, value_name = "NAME=FILE")]
    binds: Vec<String>,

    /// Comparison tolerance; defaults to $CPKIT_TOL, then 1e-9.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run --script and/or evaluate an expression.
    Eval { expr: Option<String> },
    /// Compare two expressions entrywise.
    Eq { lhs: String, rhs: String },
    /// Certify complete positivity of a Choi matrix file.
    CheckCp {
        file: PathBuf,
        #[arg(long)]
        in_dim: Option<usize>,
    },
    /// Kraus form of a completely positive Choi matrix.
    Dilate {
        file: PathBuf,
        #[arg(long)]
        in_dim: Option<usize>,
        /// Write the dilation `in -> out (x) ancilla` as a morphism file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Choi matrix of the CP map with Kraus EXPR : A -> out (x) ancilla.
    Choi {
        expr: String,
        #[arg(long)]
        out_dim: usize,
    },
    /// Kraus form of G o F for Kraus expressions G and F.
    CpCompose {
        g: String,
        f: String,
        #[arg(long)]
        g_out: usize,
        #[arg(long)]
        f_out: usize,
    },
    /// Randomized check of one axiom.
    CheckAxioms {
        #[arg(long, value_enum)]
        axiom: AxiomKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        /// Use a discarding map scaled by 2 (0 in Rel) instead of the canonical one.
        #[arg(long)]
        corrupt: bool,
    },
    /// Randomized dagger symmetric monoidal law suite.
    Laws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AxiomKind {
    EnvA,
    EnvB,
    EnvC,
    Doubling,
    PrepState,
    Xi,
}

/// Outcome of a command that ran to completion.
struct Done {
    code: i32,
    out: String,
}

impl Done {
    fn ok(out: String) -> Self {
        Done { code: 0, out }
    }

    fn check(passed: bool, out: String) -> Self {
        Done { code: if passed { 0 } else { 1 }, out }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    match execute(cli) {
        Ok(done) => (done.code, done.out),
        Err(e) => (2, format!("error: {e}\n")),
    }
}

fn resolve_tol(flag: Option<f64>) -> Result<f64, DslError> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV_VAR) {
            Ok(s) => s.trim().parse().map_err(|_| DslError::Io(format!("{TOL_ENV_VAR}='{s}' is not a number")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(DslError::Io(format!("tolerance must be a finite non-negative number, got {tol}")));
    }
    Ok(tol)
}

fn execute(cli: Cli) -> Result<Done, DslError> {
    let tol = resolve_tol(cli.tol)?;
    match cli.semiring {
        Semiring::Complex => execute_in::<Complex64>(&cli, tol),
        Semiring::Bool => execute_in::<bool>(&cli, tol),
    }
}

fn load_env<S: LitScalar>(cli: &Cli, tol: f64, out: &mut String) -> Result<(Env<S>, usize), DslError> {
    let mut env = Env::new();
    for spec in &cli.binds {
        let (name, path) = spec
            .split_once('=')
            .ok_or_else(|| DslError::Io(format!("--bind expects NAME=FILE, got '{spec}'")))?;
        parse_expr(name).ok().filter(|t| matches!(t, crate::dsl::Term::Name(n) if n == name)).ok_or_else(|| {
            DslError::Io(format!("--bind name '{name}' is not an identifier"))
        })?;
        env.insert(name.to_string(), MorFile::read(path.as_ref())?.to_mor::<S>()?);
    }
    let mut failed = 0;
    if let Some(path) = &cli.script {
        let text = std::fs::read_to_string(path).map_err(|e| DslError::Io(format!("{}: {e}", path.display())))?;
        let bound: HashSet<String> = env.keys().cloned().collect();
        let script = parse_script_with(&text, &bound)?;
        let rep = run_script(&script, &mut env, tol)?;
        out.push_str(&rep.output);
        failed = rep.failed_asserts;
    }
    Ok((env, failed))
}

fn eval_src<S: LitScalar>(src: &str, env: &Env<S>) -> Result<Mor<S>, DslError> {
    eval(&parse_expr(src)?, env)
}

fn kraus_of<S: LitScalar>(src: &str, env: &Env<S>, out_dim: usize) -> Result<KrausMor<S>, DslError> {
    let f = eval_src(src, env)?;
    let total = f.cod().total();
    if out_dim == 0 || !total.is_multiple_of(out_dim) {
        return Err(DslError::Type {
            subterm: src.to_string(),
            msg: format!("codomain of dimension {total} does not split with output dimension {out_dim}"),
        });
    }
    let (b, c) = (Object::dim(out_dim), Object::dim(total / out_dim));
    let typed = f.retype(f.dom().clone(), b.tensor(&c))?;
    Ok(KrausMor::new(typed, b, c)?)
}

fn execute_in<S: LitScalar>(cli: &Cli, tol: f64) -> Result<Done, DslError> {
    let mut out = String::new();
    let (env, failed) = load_env::<S>(cli, tol, &mut out)?;
    match &cli.command {
        Command::Eval { expr } => {
            if expr.is_none() && cli.script.is_none() {
                return Err(DslError::Io("eval needs an expression or --script".into()));
            }
            if let Some(src) = expr {
                let t = parse_expr(src)?;
                let m = eval(&t, &env)?;
                writeln!(out, "expr={t}").unwrap();
                out.push_str(&render_mor(&m));
            }
            Ok(Done::check(failed == 0, out))
        }
        Command::Eq { lhs, rhs } => {
            let (l, r) = (eval_src(lhs, &env)?, eval_src(rhs, &env)?);
            writeln!(out, "semiring={}", S::NAME).unwrap();
            writeln!(out, "tol={}", fmt_f64(tol)).unwrap();
            let equal = match l.max_dist(&r) {
                Ok(d) => {
                    writeln!(out, "deviation={}", fmt_f64(d)).unwrap();
                    d <= tol
                }
                Err(_) => {
                    writeln!(out, "reason=shapes {}x{} and {}x{} differ", l.rows(), l.cols(), r.rows(), r.cols())
                        .unwrap();
                    false
                }
            };
            writeln!(out, "equal={equal}").unwrap();
            Ok(Done::check(equal && failed == 0, out))
        }
        Command::Choi { expr, out_dim } => {
            let k = complex_only(kraus_of(expr, &env, *out_dim)?)?;
            let c = choi_of_kraus(&k);
            writeln!(out, "in_dim={}", c.in_dim).unwrap();
            writeln!(out, "out_dim={}", c.out_dim).unwrap();
            out.push_str(&render_mor(&c.matrix));
            Ok(Done::ok(out))
        }
        Command::CpCompose { g, f, g_out, f_out } => {
            let (kg, kf) = (kraus_of(g, &env, *g_out)?, kraus_of(f, &env, *f_out)?);
            let h = cp_compose(&kg, &kf)?;
            writeln!(out, "input={}", h.input()).unwrap();
            writeln!(out, "output={}", h.output()).unwrap();
            writeln!(out, "ancilla={}", h.ancilla()).unwrap();
            out.push_str(&render_mor(h.kraus()));
            Ok(Done::ok(out))
        }
        Command::CheckCp { file, in_dim } => {
            require_complex::<S>("check-cp")?;
            let c = read_choi(file, *in_dim)?;
            let (cp, min) = check_cp(&c, tol)?;
            writeln!(out, "in_dim={}", c.in_dim).unwrap();
            writeln!(out, "out_dim={}", c.out_dim).unwrap();
            writeln!(out, "min_eigenvalue={}", fmt_f64(min)).unwrap();
            writeln!(out, "cp={cp}").unwrap();
            Ok(Done::check(cp, out))
        }
        Command::Dilate { file, in_dim, out: target } => {
            require_complex::<S>("dilate")?;
            let c = read_choi(file, *in_dim)?;
            let (cp, min) = check_cp(&c, tol)?;
            if !cp {
                writeln!(out, "min_eigenvalue={}", fmt_f64(min)).unwrap();
                writeln!(out, "cp=false").unwrap();
                return Ok(Done::check(false, out));
            }
            let d = kraus_from_choi(&c, KRAUS_CUTOFF)?;
            writeln!(out, "in_dim={}", c.in_dim).unwrap();
            writeln!(out, "out_dim={}", c.out_dim).unwrap();
            writeln!(out, "ancilla_dim={}", d.ancilla_dim).unwrap();
            writeln!(out, "reconstruction_error={}", fmt_f64(d.reconstruction_error)).unwrap();
            for (i, k) in d.kraus_ops.iter().enumerate() {
                writeln!(out, "kraus={i}").unwrap();
                out.push_str(&render_mor(k));
            }
            if let Some(path) = target {
                MorFile::from_mor(&d.g).write(path)?;
            }
            Ok(Done::ok(out))
        }
        Command::CheckAxioms { axiom, seed, samples, max_dim, corrupt } => {
            if *max_dim == 0 {
                return Err(DslError::Io("--max-dim must be at least 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let report = match cli.semiring {
                Semiring::Complex => {
                    let env = if *corrupt {
                        EnvStructure::corrupted(Complex64::new(2.0, 0.0))
                    } else {
                        EnvStructure::canonical()
                    };
                    let sampler = HilbSampler { max_dim: *max_dim };
                    let r = if *axiom == AxiomKind::EnvC {
                        scan_env_c(&env, &sampler, &mut rng, *samples, tol)?
                    } else {
                        scan_generic(*axiom, &env, &sampler, &mut rng, *samples, *max_dim, tol)?
                    };
                    report_text(&r)
                }
                Semiring::Bool => {
                    if *axiom == AxiomKind::EnvC {
                        return Err(DslError::Io("env-c is only available for --semiring complex".into()));
                    }
                    let env = if *corrupt { EnvStructure::corrupted(false) } else { EnvStructure::canonical() };
                    let sampler = RelSampler { max_size: *max_dim };
                    report_text(&scan_generic(*axiom, &env, &sampler, &mut rng, *samples, *max_dim, tol)?)
                }
            };
            out.push_str(&report.1);
            Ok(Done::check(report.0, out))
        }
        Command::Laws { seed, trials, max_dim } => {
            if *max_dim == 0 {
                return Err(DslError::Io("--max-dim must be at least 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let report = match cli.semiring {
                Semiring::Complex => check_laws(&HilbSampler { max_dim: *max_dim }, &mut rng, *trials, tol)?,
                Semiring::Bool => check_laws(&RelSampler { max_size: *max_dim }, &mut rng, *trials, tol)?,
            };
            writeln!(out, "semiring={}", cli.semiring.name()).unwrap();
            writeln!(out, "trials={}", report.trials).unwrap();
            out.push_str(&report.to_string());
            writeln!(out, "passed={}", report.passed()).unwrap();
            Ok(Done::check(report.passed(), out))
        }
    }
}

fn scan_generic<S, Sm>(
    axiom: AxiomKind,
    env: &EnvStructure<S>,
    sampler: &Sm,
    rng: &mut ChaCha8Rng,
    samples: usize,
    max_dim: usize,
    tol: f64,
) -> Result<AxiomReport<S>, DslError>
where
    S: Scalar,
    Sm: Sampler<S>,
{
    Ok(match axiom {
        AxiomKind::EnvA => scan_env_a(env, max_dim, tol),
        AxiomKind::EnvB => scan_env_b(env, sampler, rng, samples, tol)?,
        AxiomKind::Doubling => scan_doubling(sampler, rng, samples, samples.min(12), tol)?,
        AxiomKind::PrepState => scan_prep_state(sampler, rng, samples, 12, tol)?,
        AxiomKind::Xi => scan_xi(env, sampler, rng, samples, tol)?,
        AxiomKind::EnvC => unreachable!("env-c is dispatched separately"),
    })
}

fn report_text<S: Scalar>(r: &AxiomReport<S>) -> (bool, String) {
    (r.holds(), format!("semiring={}\n{r}\n", S::NAME))
}

fn require_complex<S: Scalar>(cmd: &str) -> Result<(), DslError> {
    if S::NAME == Complex64::NAME {
        Ok(())
    } else {
        Err(DslError::Io(format!("{cmd} is only available for --semiring complex")))
    }
}

/// The same Kraus morphism viewed at `Complex64`, when that is what `S` is.
fn complex_only<S: LitScalar>(k: KrausMor<S>) -> Result<KrausMor<Complex64>, DslError> {
    require_complex::<S>("choi")?;
    let any: &dyn std::any::Any = &k;
    Ok(any.downcast_ref::<KrausMor<Complex64>>().expect("S is Complex64").clone())
}

/// A Choi matrix file. The input dimension comes from `--in-dim`, else from
/// a two-factor domain `[in, out]`, else the matrix is taken to be square
/// in both dimensions.
fn read_choi(path: &std::path::Path, in_dim: Option<usize>) -> Result<ChoiMatrix, DslError> {
    let m: CMor = MorFile::read(path)?.to_mor()?;
    let n = m.rows();
    let ni = match (in_dim, m.dom().factors()) {
        (Some(d), _) => d,
        (None, [i, _]) => *i,
        _ => {
            let r = (n as f64).sqrt().round() as usize;
            if r * r != n {
                return Err(DslError::Io(format!("cannot infer Choi dimensions of a {n}x{n} matrix; pass --in-dim")));
            }
            r
        }
    };
    if ni == 0 || !n.is_multiple_of(ni) {
        return Err(DslError::Io(format!("input dimension {ni} does not divide {n}")));
    }
    let obj = Object::dim(n);
    Ok(ChoiMatrix::new(m.retype(obj.clone(), obj)?, ni, n / ni)?)
}
