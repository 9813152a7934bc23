use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tbraid::local_rep::RMatrix;
use tbraid::scalar::{Rational, Scalar};
use tbraid::tensor::{
    assemble, check_functoriality, check_ybe_graded, GradedOperator, Intertwiner, TensorError,
};
use tbraid::verify::{summarize, sweep_identity, Identity, SweepOptions, VerificationReport};

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;
const EXIT_PRECHECK: u8 = 4;

/// Largest sweep bound accepted without `--force`.
const SAFETY_LIMIT: u32 = 10;

#[derive(Parser)]
#[command(name = "tbraid", version, about = "Braid-ring identities and tensor-space braidings")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep identities exactly over all parameter tuples up to a bound.
    Identities(IdentitiesArgs),
    /// Check the braid relation and invertibility of an R-matrix file.
    RmatrixCheck(RmatrixCheckArgs),
    /// Assemble T(R) up to a total grade and export it.
    Build(BuildArgs),
    /// Check the graded Yang–Baxter equation for T(R).
    VerifyYbe(VerifyYbeArgs),
    /// Check that a map V → V' intertwines T(R) and T(R').
    Functoriality(FunctorialityArgs),
}

#[derive(Args)]
struct IdentitiesArgs {
    /// Identity to sweep; repeatable.
    #[arg(long)]
    name: Vec<String>,
    /// Sweep every identity.
    #[arg(long)]
    all: bool,
    /// Bound on the parameter sum (default depends on the identity).
    #[arg(long)]
    bound: Option<u32>,
    /// Allow bounds above the safety limit.
    #[arg(long)]
    force: bool,
    /// Report file, one JSON record per tuple.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random draws per tuple for randomized identities.
    #[arg(long, default_value_t = 4)]
    samples: u32,
}

#[derive(Args)]
struct RmatrixCheckArgs {
    #[arg(long)]
    rmatrix: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct NumericArgs {
    /// Value of q, as a decimal or a fraction p/q.
    #[arg(long, default_value = "1")]
    q: String,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Exact rational arithmetic instead of double precision.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    rmatrix: PathBuf,
    #[arg(long)]
    max_grade: u32,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    num: NumericArgs,
}

#[derive(Args)]
struct VerifyYbeArgs {
    #[arg(long, required_unless_present = "operator", conflicts_with = "operator")]
    rmatrix: Option<PathBuf>,
    /// Previously built operator file instead of an R-matrix.
    #[arg(long)]
    operator: Option<PathBuf>,
    /// Check every grade up to this one (default: the operator's g_max).
    #[arg(long)]
    max_grade: Option<u32>,
    #[command(flatten)]
    num: NumericArgs,
}

#[derive(Args)]
struct FunctorialityArgs {
    #[arg(long)]
    rmatrix: PathBuf,
    #[arg(long)]
    target_rmatrix: PathBuf,
    #[arg(long)]
    intertwiner: PathBuf,
    #[arg(long)]
    max_grade: u32,
    #[command(flatten)]
    num: NumericArgs,
}

/// An exit code with a message for stderr.
struct Failure(u8, String);

impl Failure {
    fn input(msg: impl std::fmt::Display) -> Self {
        Failure(EXIT_INPUT, msg.to_string())
    }
}

impl From<TensorError> for Failure {
    fn from(e: TensorError) -> Self {
        match e {
            TensorError::Precheck { .. } => Failure(EXIT_PRECHECK, e.to_string()),
            _ => Failure::input(e),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path).map(BufWriter::new).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_report(out: &mut impl Write, reports: &[VerificationReport]) -> std::io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut *out, &r.to_record())?;
        writeln!(out)?;
    }
    Ok(())
}

fn cmd_identities(args: &IdentitiesArgs) -> Outcome {
    let ids: Vec<Identity> = if args.all {
        Identity::ALL.to_vec()
    } else if args.name.is_empty() {
        return Err(Failure::input("give --name or --all"));
    } else {
        args.name.iter().map(|n| n.parse()).collect::<Result<_, _>>().map_err(Failure::input)?
    };
    if let Some(b) = args.bound {
        if b > SAFETY_LIMIT && !args.force {
            return Err(Failure::input(format!("bound {b} above safety limit {SAFETY_LIMIT}; pass --force")));
        }
    }
    let opts = SweepOptions { seed: args.seed, samples: args.samples };
    let mut out = args.out.as_deref().map(create).transpose()?;
    let mut failed = false;
    for id in ids {
        let bound = args.bound.unwrap_or(id.default_bound());
        let reports = sweep_identity(id, bound, &opts);
        let summary = summarize(&reports);
        println!(
            "{:<28} bound {bound}: {}/{} hold ({:.1} ms)",
            id.name(),
            summary.total - summary.failures.len(),
            summary.total,
            summary.elapsed.as_secs_f64() * 1e3
        );
        for f in &summary.failures {
            println!("  FAIL {:?}: difference {}", f.params, f.difference);
        }
        failed |= !summary.failures.is_empty();
        if let Some(w) = out.as_mut() {
            write_report(w, &reports).map_err(|e| Failure(EXIT_INTERNAL, e.to_string()))?;
        }
    }
    if let Some(mut w) = out {
        w.flush().map_err(|e| Failure(EXIT_INTERNAL, e.to_string()))?;
    }
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}

fn load_rmatrix(path: &Path) -> Result<RMatrix, Failure> {
    RMatrix::load(path).map_err(Failure::input)
}

fn cmd_rmatrix_check(args: &RmatrixCheckArgs) -> Outcome {
    if args.tol <= 0.0 {
        return Err(Failure::input("--tol must be positive"));
    }
    let r = load_rmatrix(&args.rmatrix)?;
    let check = r.check(args.tol);
    println!("dim {}", r.dim());
    println!("ybe residual {:e}", check.ybe_residual);
    println!("invertible {}", check.invertible);
    match check.condition_number {
        Some(c) => println!("condition number {c:e}"),
        None => println!("condition number inf"),
    }
    Ok(if check.holds { EXIT_OK } else { EXIT_FAILED })
}

fn parse_q<S: Scalar>(text: &str) -> Result<S, Failure> {
    let q = S::parse_text(text).map_err(|e| Failure::input(format!("--q: {e}")))?;
    if q.is_zero() {
        return Err(Failure::input("--q must be nonzero"));
    }
    Ok(q)
}

fn validated_rmatrix(path: &Path, tol: f64) -> Result<RMatrix, Failure> {
    if tol <= 0.0 {
        return Err(Failure::input("--tol must be positive"));
    }
    let r = load_rmatrix(path)?;
    let check = r.check(tol);
    if !check.holds {
        return Err(Failure::input(format!(
            "{} is not an invertible braiding (ybe residual {:e}, invertible {})",
            path.display(),
            check.ybe_residual,
            check.invertible
        )));
    }
    Ok(r)
}

fn build<S: Scalar>(args: &BuildArgs) -> Outcome {
    let r = validated_rmatrix(&args.rmatrix, args.num.tol)?;
    let q: S = parse_q(&args.num.q)?;
    let t = assemble(&r, q, args.max_grade)?;
    println!("blocks {}", t.block_count());
    for ((b, c, k), cond) in t.condition_numbers() {
        let cond = cond.map_or("inf".to_string(), |v| format!("{v:e}"));
        println!("  ({b},{c},{k}) size {} cond {cond}", r.dim().pow(b + c));
    }
    if let Some(path) = &args.out {
        let mut w = create(path)?;
        w.write_all(t.to_json().as_bytes())
            .and_then(|_| w.flush())
            .map_err(|e| Failure(EXIT_INTERNAL, e.to_string()))?;
    }
    Ok(EXIT_OK)
}

fn print_ybe<S: Scalar>(t: &GradedOperator<S>, max_grade: u32, tol: f64) -> Outcome {
    let mut ok = true;
    for g in 0..=max_grade {
        let rep = check_ybe_graded(t, g, tol)?;
        println!(
            "grade {g}: max residual {:e} ({} splits) {}",
            rep.max_residual,
            rep.splits.len(),
            if rep.holds { "ok" } else { "FAIL" }
        );
        ok &= rep.holds;
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn verify_ybe<S: Scalar>(args: &VerifyYbeArgs) -> Outcome {
    if args.num.tol <= 0.0 {
        return Err(Failure::input("--tol must be positive"));
    }
    let t: GradedOperator<S> = match (&args.operator, &args.rmatrix) {
        (Some(path), _) => GradedOperator::load(path)?,
        (None, Some(path)) => {
            let r = validated_rmatrix(path, args.num.tol)?;
            let g = args.max_grade.ok_or_else(|| Failure::input("--max-grade is required with --rmatrix"))?;
            assemble(&r, parse_q(&args.num.q)?, g)?
        }
        (None, None) => return Err(Failure::input("give --rmatrix or --operator")),
    };
    let g = args.max_grade.unwrap_or(t.g_max());
    if g > t.g_max() {
        return Err(Failure::input(format!("--max-grade {g} exceeds the operator's g_max {}", t.g_max())));
    }
    print_ybe(&t, g, args.num.tol)
}

/// Whether an operator file holds exact entries.
fn operator_is_exact(path: &Path) -> Result<bool, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(v.get("exact").and_then(|e| e.as_bool()).unwrap_or(false))
}

fn functoriality<S: Scalar>(args: &FunctorialityArgs) -> Outcome {
    let tol = args.num.tol;
    let r = validated_rmatrix(&args.rmatrix, tol)?;
    let r_prime = validated_rmatrix(&args.target_rmatrix, tol)?;
    let f: Intertwiner<S> = Intertwiner::load(&args.intertwiner)?;
    let q: S = parse_q(&args.num.q)?;
    let g_max = args.max_grade.max(2);
    let t = assemble(&r, q.clone(), g_max)?;
    let t_prime = assemble(&r_prime, q, g_max)?;
    let rep = check_functoriality(&t, &t_prime, &f, args.max_grade, tol)?;
    println!("blocks checked {}", rep.splits.len());
    println!("max residual {:e}", rep.max_residual);
    Ok(if rep.holds { EXIT_OK } else { EXIT_FAILED })
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Identities(a) => cmd_identities(a),
        Command::RmatrixCheck(a) => cmd_rmatrix_check(a),
        Command::Build(a) if a.num.exact => build::<Rational>(a),
        Command::Build(a) => build::<f64>(a),
        Command::VerifyYbe(a) => {
            let exact = match &a.operator {
                Some(p) => operator_is_exact(p)?,
                None => a.num.exact,
            };
            if exact {
                verify_ybe::<Rational>(a)
            } else {
                verify_ybe::<f64>(a)
            }
        }
        Command::Functoriality(a) if a.num.exact => functoriality::<Rational>(a),
        Command::Functoriality(a) => functoriality::<f64>(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    }
    let code = match std::panic::catch_unwind(|| dispatch(&cli)) {
        Ok(Ok(code)) => code,
        Ok(Err(Failure(code, msg))) => {
            eprintln!("error: {msg}");
            code
        }
        Err(_) => EXIT_INTERNAL,
    };
    ExitCode::from(code)
}
