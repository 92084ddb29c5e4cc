use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use selmer_core::classify::{classify, residue_degree, NamedCurve, UserInvariants, SCHEMA_VERSION};
use selmer_core::curve::{reduction_type, ReductionType};
use selmer_core::lfunc::{euler_factor, unit_root, DEFAULT_PRECISION};
use selmer_core::registry::{parse_a_invariants, Registry};
use selmer_core::report::{render_text, to_canonical_json};
use selmer_core::torsion::torsion_point_degrees;
use selmer_core::Error;

const EXIT_COMPUTATION: u8 = 1;
const EXIT_HYPOTHESIS: u8 = 2;
const EXIT_USAGE: u8 = 64;

const EXAMPLE_E: &str = "21a4";
const EXAMPLE_A: &str = "1950y1";
const EXAMPLE_P: u64 = 5;

/// Prime classification and local data for dual Selmer groups over
/// `Q(A[p^inf])`.
#[derive(Parser)]
#[command(name = "selmer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the primes of P0 and evaluate the rank formula and verdict.
    Classify(ClassifyArgs),
    /// The worked example: E = 21a4, A = 1950y1, p = 5, lambda = mu = rk = 0.
    PaperExample(ExampleArgs),
    /// Euler factor at q, and optionally the unit root at p.
    Euler(EulerArgs),
    /// Degrees of the p-torsion of the reduction at q over F_{q^f}.
    Torsion(TorsionArgs),
}

#[derive(Args)]
struct Format {
    /// JSON output.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Plain-text output.
    #[arg(long)]
    text: bool,
}

#[derive(Args)]
struct RegistryArg {
    /// Registry file (`label:a1,a2,a3,a4,a6` per line) instead of the bundled one.
    #[arg(long, value_name = "PATH")]
    registry: Option<PathBuf>,
}

impl RegistryArg {
    fn load(&self) -> Result<Registry, Error> {
        match &self.registry {
            Some(path) => Registry::load(path),
            None => Ok(Registry::bundled()),
        }
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    p: u64,
    /// Selmer curve as a1,a2,a3,a4,a6.
    #[arg(long = "curve-E", value_name = "A_INVS", allow_hyphen_values = true, conflicts_with = "label_e", required_unless_present = "label_e")]
    curve_e: Option<String>,
    #[arg(long = "label-E", value_name = "LABEL")]
    label_e: Option<String>,
    /// Curve whose p-power torsion cuts out the tower, as a1,a2,a3,a4,a6.
    #[arg(long = "curve-A", value_name = "A_INVS", allow_hyphen_values = true, conflicts_with = "label_a", required_unless_present = "label_a")]
    curve_a: Option<String>,
    #[arg(long = "label-A", value_name = "LABEL")]
    label_a: Option<String>,
    #[arg(long)]
    lambda: Option<u64>,
    #[arg(long)]
    mu: Option<u64>,
    #[arg(long = "rk-zp")]
    rk_zp: Option<u64>,
    /// p-adic precision of the unit root.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    #[command(flatten)]
    format: Format,
    #[command(flatten)]
    registry: RegistryArg,
}

#[derive(Args)]
struct ExampleArgs {
    #[command(flatten)]
    format: Format,
    #[command(flatten)]
    registry: RegistryArg,
}

#[derive(Args)]
struct CurveArg {
    /// Curve as a1,a2,a3,a4,a6.
    #[arg(long, value_name = "A_INVS", allow_hyphen_values = true, conflicts_with = "label", required_unless_present = "label")]
    curve: Option<String>,
    #[arg(long, value_name = "LABEL")]
    label: Option<String>,
}

#[derive(Args)]
struct EulerArgs {
    #[command(flatten)]
    curve: CurveArg,
    #[arg(long)]
    q: u64,
    /// Also compute the unit root of the Euler factor at this prime.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    #[command(flatten)]
    format: Format,
    #[command(flatten)]
    registry: RegistryArg,
}

#[derive(Args)]
struct TorsionArgs {
    #[command(flatten)]
    curve: CurveArg,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
    /// Base field degree; defaults to the order of q mod p.
    #[arg(long)]
    f: Option<u64>,
    #[command(flatten)]
    format: Format,
    #[command(flatten)]
    registry: RegistryArg,
}

struct Outcome {
    stdout: String,
    code: u8,
    message: Option<String>,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0, message: None }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnknownLabel(_) | Error::BadCurveSpec(_) | Error::Registry { .. } => EXIT_USAGE,
        e if e.is_hypothesis_failure() => EXIT_HYPOTHESIS,
        _ => EXIT_COMPUTATION,
    }
}

fn resolve(registry: &Registry, coeffs: Option<&str>, label: Option<&str>) -> Result<NamedCurve, Error> {
    match (coeffs, label) {
        (Some(c), _) => Ok(NamedCurve::new(None, parse_a_invariants(c)?)),
        (None, Some(l)) => Ok(NamedCurve::new(Some(l), registry.get(l)?.clone())),
        (None, None) => unreachable!("clap requires one of the two"),
    }
}

fn json_string(v: &serde_json::Value) -> String {
    to_canonical_json(v).expect("value serializes")
}

fn run_classify(
    e: &NamedCurve,
    a: &NamedCurve,
    p: u64,
    user: &UserInvariants,
    precision: u32,
    text: bool,
) -> Result<Outcome, Error> {
    let report = classify(e, a, p, user, precision)?;
    let stdout = if text { render_text(&report) } else { to_canonical_json(&report).expect("report serializes") };
    let mut problems = Vec::new();
    if !report.hypotheses.ordinary_ok {
        problems.push(format!("E does not have good ordinary reduction at {p}"));
    }
    if !report.hypotheses.cm_free_ok {
        problems.push("E or A has complex multiplication".to_string());
    }
    if problems.is_empty() {
        Ok(Outcome::ok(stdout))
    } else {
        Ok(Outcome { stdout, code: EXIT_HYPOTHESIS, message: Some(problems.join("; ")) })
    }
}

fn cmd_classify(args: &ClassifyArgs) -> Result<Outcome, Error> {
    let registry = args.registry.load()?;
    let e = resolve(&registry, args.curve_e.as_deref(), args.label_e.as_deref())?;
    let a = resolve(&registry, args.curve_a.as_deref(), args.label_a.as_deref())?;
    let user = UserInvariants { lambda: args.lambda, mu: args.mu, rk_zp: args.rk_zp, example_conditional: false };
    run_classify(&e, &a, args.p, &user, args.precision, args.format.text)
}

fn cmd_paper_example(args: &ExampleArgs) -> Result<Outcome, Error> {
    let registry = args.registry.load()?;
    let e = resolve(&registry, None, Some(EXAMPLE_E))?;
    let a = resolve(&registry, None, Some(EXAMPLE_A))?;
    let user = UserInvariants { lambda: Some(0), mu: Some(0), rk_zp: Some(0), example_conditional: true };
    run_classify(&e, &a, EXAMPLE_P, &user, DEFAULT_PRECISION, args.format.text)
}

fn curve_name(c: &NamedCurve) -> String {
    c.label.clone().unwrap_or_else(|| c.curve.to_string())
}

fn cmd_euler(args: &EulerArgs) -> Result<Outcome, Error> {
    let registry = args.registry.load()?;
    let c = resolve(&registry, args.curve.curve.as_deref(), args.curve.label.as_deref())?;
    let factor = euler_factor(&c.curve, args.q)?;
    let root = match args.p {
        None => None,
        Some(p) => match reduction_type(&c.curve, p)? {
            ReductionType::Good { trace } => Some(unit_root(trace, p, args.precision)?),
            _ => return Err(Error::BadReduction(p)),
        },
    };
    let stdout = if args.format.json {
        json_string(&json!({
            "schema_version": SCHEMA_VERSION,
            "curve": curve_name(&c),
            "q": args.q,
            "euler_factor": factor,
            "euler_factor_display": factor.to_string(),
            "unit_root": root,
        }))
    } else {
        let mut s = format!("P_{}(T) = {}\n", args.q, factor);
        if let Some(b) = &root {
            s.push_str(&format!("unit root b = {b}\n"));
        }
        s
    };
    Ok(Outcome::ok(stdout))
}

fn cmd_torsion(args: &TorsionArgs) -> Result<Outcome, Error> {
    let registry = args.registry.load()?;
    let c = resolve(&registry, args.curve.curve.as_deref(), args.curve.label.as_deref())?;
    let f = match args.f {
        Some(f) => f,
        None => residue_degree(args.q, args.p)?,
    };
    let mut profile = torsion_point_degrees(&c.curve, args.p, args.q, f as usize)?;
    if let Some(label) = &c.label {
        profile.curve = label.clone();
    }
    let tower = profile.has_p_power_point_degree();
    let stdout = if args.format.json {
        json_string(&json!({
            "schema_version": SCHEMA_VERSION,
            "profile": profile,
            "tower_torsion": tower,
        }))
    } else {
        let mut s = format!("curve {}, psi_{} mod {} over F_{}^{}\n", profile.curve, args.p, args.q, args.q, f);
        s.push_str(&format!("x-factor degrees: {:?}\n", profile.x_factor_degrees));
        s.push_str(&format!("point degrees: {:?}\n", profile.point_degrees));
        for fac in &profile.factors {
            s.push_str(&format!("  {} (point degree {})\n", fac.polynomial, fac.point_degree));
        }
        s.push_str(&format!("p-torsion in cyclotomic tower: {tower}\n"));
        s
    };
    Ok(Outcome::ok(stdout))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::PaperExample(a) => cmd_paper_example(a),
        Command::Euler(a) => cmd_euler(a),
        Command::Torsion(a) => cmd_torsion(a),
    };
    match result {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            if let Some(m) = out.message {
                eprintln!("error: {m}");
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
