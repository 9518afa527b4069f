//! Command line front end for `qcharlab-core`.
//!
//! Exit codes: 0 success, 1 usage, 2 invalid input or I/O failure,
//! 3 theorem or invariant violation.

pub mod sweep;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qcharlab_core::{
    classify_as, dominant_spectrum, kr_qchar_by_partitions, q_factorize, qchar, root_coordinates, transform, weight_of,
    Direction, Error, KRSpec, LMonomial, MinAffSpec, QChar, QCharCache, TensorReport, Transform, Variant,
};

pub use sweep::{run_sweep, SweepConfig, SweepSummary, THREADS_ENV};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qcharlab", version, about = "Qcharacters of minimal affinizations and their tensor products")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Qcharacter of a minimal affinization or KR module.
    Qchar(QcharArgs),
    /// Classify a minimal affinization tensored with a KR module.
    Tensor(TensorArgs),
    /// Run a classification sweep from a JSON config.
    Sweep(SweepArgs),
    /// q-factorize a dominant rank-one monomial.
    Factorize(FactorizeArgs),
    /// Apply a duality or shift map to a monomial.
    Transform(TransformArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirArg {
    Inc,
    Dec,
}

impl From<DirArg> for Direction {
    fn from(d: DirArg) -> Self {
        match d {
            DirArg::Inc => Direction::Increasing,
            DirArg::Dec => Direction::Decreasing,
        }
    }
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Rank of sl_{n+1}.
    #[arg(long)]
    n: usize,
    /// Highest weight as comma-separated coefficients.
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value = "inc")]
    dir: DirArg,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    shift: i32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Oracle {
    Tableaux,
    Partitions,
}

#[derive(Args, Debug)]
struct QcharArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// KR module as `node,r,k`, instead of --lambda.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "lambda")]
    kr: Option<String>,
    #[arg(long, value_enum, default_value = "tableaux")]
    oracle: Oracle,
    /// List every term.
    #[arg(long)]
    full: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Normal,
    A,
    B,
    C,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Normal => Variant::Normal,
            VariantArg::A => Variant::A,
            VariantArg::B => Variant::B,
            VariantArg::C => Variant::C,
        }
    }
}

#[derive(Args, Debug)]
struct TensorArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// KR module as `node,r,k`.
    #[arg(long, allow_hyphen_values = true)]
    kr: String,
    /// Read the pair in this branch instead of the detected one.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// JSON sweep configuration.
    #[arg(long)]
    config: PathBuf,
    /// Overrides the output path of the config.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FactorizeArgs {
    /// Monomial such as `Y[1,0] Y[1,2]^2`.
    monomial: String,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Star,
    StarInv,
    Minus,
    Kappa,
    Tau,
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Shift for `tau`.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    t: i32,
    monomial: String,
    #[arg(long)]
    json: bool,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::UndefinedInput(_) => EXIT_INVALID,
            Error::InvariantViolation(_) | Error::TheoremViolation(_) => EXIT_VIOLATION,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure { code: EXIT_INVALID, message: format!("I/O error: {e}") }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Qchar(a) => cmd_qchar(a, out),
        Command::Tensor(a) => cmd_tensor(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Factorize(a) => cmd_factorize(a, out),
        Command::Transform(a) => cmd_transform(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn parse_kr(n: usize, text: &str) -> Result<KRSpec, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || Failure { code: EXIT_INVALID, message: format!("--kr expects node,r,k; got {text:?}") };
    if parts.len() != 3 {
        return Err(bad());
    }
    let node = parts[0].parse().map_err(|_| bad())?;
    let r = parts[1].parse().map_err(|_| bad())?;
    let k = parts[2].parse().map_err(|_| bad())?;
    Ok(KRSpec::new(n, node, r, k)?)
}

fn parse_spec(a: &SpecArgs) -> Result<MinAffSpec, Failure> {
    let lambda = a.lambda.clone().ok_or(Failure { code: EXIT_INVALID, message: "--lambda is required".into() })?;
    Ok(MinAffSpec::new(a.n, lambda, a.dir.into(), a.shift)?)
}

fn json_line(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<(), Failure> {
    let v = serde_json::to_value(value).map_err(|e| Failure { code: EXIT_INVALID, message: e.to_string() })?;
    writeln!(out, "{v}").map_err(io_failure)
}

/// Terms ordered from the top: by height of `top / m` in the root lattice, then canonically.
fn ordered_terms(q: &QChar) -> Vec<(&LMonomial, u64)> {
    let top = q.dominant_terms().into_iter().next().map(|e| e.0);
    let height = |m: &LMonomial| -> i64 {
        top.as_ref()
            .and_then(|t| root_coordinates(&weight_of(&(t / m))))
            .map(|c| c.iter().sum::<u64>() as i64)
            .unwrap_or(i64::MAX)
    };
    let mut terms: Vec<(&LMonomial, u64)> = q.terms().iter().map(|(m, &c)| (m, c)).collect();
    terms.sort_by_cached_key(|(m, _)| (height(m), (*m).clone()));
    terms
}

fn cmd_qchar(a: QcharArgs, out: &mut dyn Write) -> CmdResult {
    let q = match (&a.kr, a.oracle) {
        (Some(kr), Oracle::Partitions) => {
            let kr = parse_kr(a.spec.n, kr)?;
            if kr.node() != a.spec.n {
                return Err(Failure {
                    code: EXIT_INVALID,
                    message: "the partition oracle needs a KR module at node n".into(),
                });
            }
            kr_qchar_by_partitions(kr.rank(), kr.r(), kr.k())?
        }
        (Some(kr), Oracle::Tableaux) => qchar(&parse_kr(a.spec.n, kr)?.to_minaff())?,
        (None, Oracle::Tableaux) => qchar(&parse_spec(&a.spec)?)?,
        (None, Oracle::Partitions) => {
            return Err(Failure { code: EXIT_INVALID, message: "--oracle partitions needs --kr".into() })
        }
    };
    if a.json {
        json_line(out, &q)?;
        return Ok(EXIT_OK);
    }
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io_failure);
    w(out, format!("terms: {}", q.len()))?;
    let dom: Vec<String> = dominant_spectrum(&q).entries.iter().map(|e| e.0.to_string()).collect();
    w(out, format!("dominant: {}", dom.join(", ")))?;
    if a.full {
        for (m, c) in ordered_terms(&q) {
            w(out, format!("{c} {m}"))?;
        }
    }
    Ok(EXIT_OK)
}

fn render_report(r: &TensorReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{}", if r.is_reducible() { "reducible" } else { "irreducible" })?;
    writeln!(out, "variant: {}", serde_json::to_value(r.variant).expect("serializes").as_str().unwrap_or_default())?;
    writeln!(out, "lambda: {}", r.lambda)?;
    let case = serde_json::to_value(r.case).expect("serializes");
    writeln!(out, "case: {}", case.as_str().unwrap_or_default())?;
    if let (Some(p), Some(kp)) = (r.p, r.kprime) {
        writeln!(out, "p: {p}, k': {kp}")?;
    }
    if let Some(lp) = &r.lambda_prime {
        writeln!(out, "lambda': {lp}")?;
    }
    writeln!(out, "D ({}):", r.d.len())?;
    for e in &r.d {
        writeln!(out, "  {} x{}", e.m, e.mult)?;
    }
    let sh = &r.socle_head;
    writeln!(out, "V:  socle {}, head {}", sh.v.socle, sh.v.head)?;
    writeln!(out, "V': socle {}, head {}", sh.vprime.socle, sh.vprime.head)
}

fn cmd_tensor(a: TensorArgs, out: &mut dyn Write) -> CmdResult {
    let spec = parse_spec(&a.spec)?;
    let kr = parse_kr(a.spec.n, &a.kr)?;
    let variant = match a.variant {
        Some(v) => v.into(),
        None => Variant::of(&spec, &kr)?,
    };
    let (report, _) = classify_as(variant, &spec, &kr, &QCharCache::new())?;
    if a.json {
        json_line(out, &report)?;
    } else {
        render_report(&report, out).map_err(io_failure)?;
    }
    Ok(EXIT_OK)
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write) -> CmdResult {
    let text = fs::read_to_string(&a.config).map_err(io_failure)?;
    let mut config: SweepConfig = serde_json::from_str(&text)
        .map_err(|e| Failure { code: EXIT_INVALID, message: format!("bad sweep config: {e}") })?;
    if let Some(o) = a.output {
        config.output = o;
    }
    config.validate()?;
    let mut buf = Vec::new();
    let summary = run_sweep(&config, &mut buf)?;
    fs::write(&config.output, buf).map_err(io_failure)?;
    json_line(out, &summary)?;
    Ok(if summary.violations > 0 { EXIT_VIOLATION } else { EXIT_OK })
}

fn cmd_factorize(a: FactorizeArgs, out: &mut dyn Write) -> CmdResult {
    let m = LMonomial::parse(1, &a.monomial)?;
    let f = q_factorize(&m)?;
    if a.json {
        json_line(out, &f)?;
    } else {
        let parts: Vec<String> = f.strings.iter().map(|(r, k)| format!("Y[1,{r},{k}]")).collect();
        writeln!(out, "{}", if parts.is_empty() { "1".to_string() } else { parts.join(" ") }).map_err(io_failure)?;
    }
    Ok(EXIT_OK)
}

fn cmd_transform(a: TransformArgs, out: &mut dyn Write) -> CmdResult {
    let m = LMonomial::parse(a.n, &a.monomial)?;
    let kind = match a.kind {
        KindArg::Star => Transform::Star,
        KindArg::StarInv => Transform::StarInv,
        KindArg::Minus => Transform::Minus,
        KindArg::Kappa => Transform::Kappa,
        KindArg::Tau => Transform::Tau(a.t),
    };
    let image = transform(&m, kind);
    if a.json {
        json_line(out, &image)?;
    } else {
        writeln!(out, "{image}").map_err(io_failure)?;
    }
    Ok(EXIT_OK)
}
