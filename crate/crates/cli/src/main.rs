use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use semiop::engine::{
    a_crawford, a_min_modulus, a_numerical_radius, m_lambda, seminorm, Lambda, OptimizerConfig,
};
use semiop::harness::{self, run_suite};
use semiop::linalg::svd;
use semiop::orthogonality::{
    bj_orthogonal, certificate_check, triangle_equality, CertificateStatus, DEFAULT_TOLERANCE, DEFAULT_XI_SAMPLES,
};
use semiop::{ComplexMatrix, EvalResult, PositiveOperator};
use semiop_cli::matrix_file::read_matrix;
use semiop_cli::{complex12, sig12, vector12, CliError, Exit};

#[derive(Parser)]
#[command(name = "semiop", version, about = "(A,λ)-seminorms and Birkhoff-James orthogonality of matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one quantity of an operator.
    Compute(ComputeArgs),
    /// Tabulate the seminorm over an even λ grid as CSV.
    Sweep(SweepArgs),
    /// Decide orthogonality of T to S.
    Orth(PairArgs),
    /// Compare ‖T+S‖ with ‖T‖ + ‖S‖.
    Triangle(PairArgs),
    /// Run a property suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// Positive semidefinite weight (identity when omitted).
    #[arg(long = "a", value_name = "A.json")]
    a: Option<PathBuf>,
    #[arg(long, env = "SEMIOP_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    restarts: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Seminorm,
    Wa,
    Ca,
    Minmod,
    M,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long, value_name = "T.json")]
    op: PathBuf,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, value_enum, default_value = "seminorm")]
    quantity: Quantity,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_name = "T.json")]
    op: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    steps: u64,
    #[arg(long, value_name = "sweep.csv")]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long = "t", value_name = "T.json")]
    t: PathBuf,
    #[arg(long = "s", value_name = "S.json")]
    s: PathBuf,
    #[arg(long)]
    lambda: f64,
    /// Relative gap tolerance (orth only).
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, env = "SEMIOP_SEED", default_value_t = 0)]
    seed: u64,
    /// Re-run the single trial with this seed (from a failure record).
    #[arg(long, value_name = "TRIAL_SEED")]
    replay: Option<u64>,
}

impl Common {
    fn config(&self) -> OptimizerConfig {
        let mut cfg = OptimizerConfig::with_seed(self.seed);
        if let Some(k) = self.restarts {
            cfg.restarts = k as usize;
        }
        cfg
    }

    fn weight(&self, n: usize) -> Result<PositiveOperator, CliError> {
        let a = match &self.a {
            Some(path) => PositiveOperator::new(read_matrix(path)?, None)?,
            None => PositiveOperator::identity(n),
        };
        if a.dim() != n {
            return Err(CliError::usage(format!("A is {}×{} but the operator is {n}×{n}", a.dim(), a.dim())));
        }
        Ok(a)
    }
}

fn lambda(value: f64) -> Result<Lambda<f64>, CliError> {
    Ok(Lambda::new(value)?)
}

fn describe(out: &mut String, r: &EvalResult) {
    writeln!(out, "value={}", sig12(r.value)).unwrap();
    writeln!(out, "certified={}", r.certified).unwrap();
    writeln!(out, "restarts={}", r.restarts_used).unwrap();
    writeln!(out, "residual={}", sig12(r.stationarity_residual)).unwrap();
    writeln!(out, "witness={}", vector12(&r.lifted)).unwrap();
}

fn compute(args: &ComputeArgs) -> Result<String, CliError> {
    let t = read_matrix(&args.op)?;
    let a = args.common.weight(t.rows())?;
    let cfg = args.common.config();
    let need_lambda = || {
        args.lambda
            .ok_or_else(|| CliError::usage("--lambda is required for this quantity"))
            .and_then(lambda)
    };
    let (name, r) = match args.quantity {
        Quantity::Seminorm => ("seminorm", seminorm(&t, &a, need_lambda()?, &cfg)?),
        Quantity::Wa => ("wa", a_numerical_radius(&t, &a, &cfg)?),
        Quantity::Ca => ("ca", a_crawford(&t, &a, &cfg)?),
        Quantity::Minmod => ("minmod", a_min_modulus(&t, &a)?),
        Quantity::M => ("m", m_lambda(&t, &a, need_lambda()?, &cfg)?),
    };
    let mut out = format!("quantity={name}\n");
    if let Some(l) = args.lambda {
        writeln!(out, "lambda={}", sig12(l)).unwrap();
    }
    describe(&mut out, &r);
    Ok(out)
}

fn sweep(args: &SweepArgs) -> Result<String, CliError> {
    let t = read_matrix(&args.op)?;
    let a = args.common.weight(t.rows())?;
    let cfg = args.common.config();
    let red = a.reduce(&t)?;
    let norm = if red.dim() == 0 { 0.0 } else { svd(&red.b)?.sigma_max() };
    let w = a_numerical_radius(&t, &a, &cfg)?.value;
    let mut csv = String::from("lambda,seminorm,w_a,norm_a,certified\n");
    let last = args.steps - 1;
    for j in 0..args.steps {
        let l = j as f64 / last as f64;
        let r = seminorm(&t, &a, lambda(l)?, &cfg)?;
        writeln!(csv, "{},{},{},{},{}", sig12(l), sig12(r.value), sig12(w), sig12(norm), r.certified).unwrap();
    }
    fs::write(&args.out, &csv).map_err(|e| CliError::io(format!("cannot write {}: {e}", args.out.display())))?;
    Ok(format!("rows={}\nout={}\n", args.steps, args.out.display()))
}

fn read_pair(args: &PairArgs) -> Result<(ComplexMatrix, ComplexMatrix, PositiveOperator), CliError> {
    let t = read_matrix(&args.t)?;
    let s = read_matrix(&args.s)?;
    if s.rows() != t.rows() {
        return Err(CliError::usage(format!("T is {0}×{0} but S is {1}×{1}", t.rows(), s.rows())));
    }
    let a = args.common.weight(t.rows())?;
    Ok((t, s, a))
}

fn orth(args: &PairArgs) -> Result<String, CliError> {
    let (t, s, a) = read_pair(args)?;
    let cfg = args.common.config();
    let l = lambda(args.lambda)?;
    if !(args.tol >= 0.0) {
        return Err(CliError::usage("--tol must be nonnegative"));
    }
    let v = bj_orthogonal(&t, &s, &a, l, args.tol, &cfg)?;
    let cert = certificate_check(&t, &s, &a, l, &v, DEFAULT_XI_SAMPLES, &cfg)?;
    let status = match cert.status {
        CertificateStatus::Holds => "holds",
        CertificateStatus::Fails => "fails",
        CertificateStatus::NotApplicable => "not-applicable",
    };
    let mut out = String::new();
    writeln!(out, "orthogonal={}", v.orthogonal).unwrap();
    writeln!(out, "xi_star={}", complex12(v.xi_star)).unwrap();
    writeln!(out, "rho_zero={}", sig12(v.rho_zero)).unwrap();
    writeln!(out, "rho_min={}", sig12(v.rho_min)).unwrap();
    writeln!(out, "gap={}", sig12(v.relative_gap)).unwrap();
    writeln!(out, "m={}", sig12(v.m_value)).unwrap();
    writeln!(out, "tolerance={}", sig12(v.tolerance_used)).unwrap();
    writeln!(out, "certificate={status}").unwrap();
    if cert.status != CertificateStatus::NotApplicable {
        writeln!(out, "certificate_worst_margin={}", sig12(cert.worst_margin)).unwrap();
    }
    Ok(out)
}

fn triangle(args: &PairArgs) -> Result<String, CliError> {
    let (t, s, a) = read_pair(args)?;
    let r = triangle_equality(&t, &s, &a, lambda(args.lambda)?, &args.common.config())?;
    let mut out = String::new();
    writeln!(out, "sum_seminorm={}", sig12(r.sum_seminorm)).unwrap();
    writeln!(out, "seminorm_sum={}", sig12(r.seminorm_sum)).unwrap();
    writeln!(out, "holds={}", r.holds).unwrap();
    writeln!(out, "witness_value={}", complex12(r.witness_value)).unwrap();
    writeln!(out, "target={}", sig12(r.target)).unwrap();
    writeln!(out, "near_miss={}", r.near_miss).unwrap();
    writeln!(out, "witness={}", vector12(&r.witness)).unwrap();
    Ok(out)
}

fn verify(args: &VerifyArgs) -> Result<(String, Exit), CliError> {
    if let Some(seed) = args.replay {
        let trial = harness::replay(&args.suite, seed)?;
        let mut out = format!("suite={} replay={seed} pass={} digest={:016x}\n", args.suite, trial.pass, trial.digest);
        for (k, v) in &trial.observed {
            writeln!(out, "{k}={v:e}").unwrap();
        }
        if let Some(note) = &trial.note {
            writeln!(out, "note {note}").unwrap();
        }
        let exit = if trial.pass { Exit::Ok } else { Exit::PropertyFailure };
        return Ok((out, exit));
    }
    let report = run_suite(&args.suite, args.trials, args.seed)?;
    eprintln!("elapsed={:.3}s", report.elapsed);
    let exit = if report.ok() { Exit::Ok } else { Exit::PropertyFailure };
    Ok((report.body(), exit))
}

fn run(cli: &Cli) -> Result<(String, Exit), CliError> {
    let ok = |s: String| (s, Exit::Ok);
    match &cli.command {
        Command::Compute(a) => compute(a).map(ok),
        Command::Sweep(a) => sweep(a).map(ok),
        Command::Orth(a) => orth(a).map(ok),
        Command::Triangle(a) => triangle(a).map(ok),
        Command::Verify(a) => verify(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, exit)) => {
            print!("{out}");
            ExitCode::from(exit.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit.code())
        }
    }
}
