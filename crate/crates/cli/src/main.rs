//! `gw-wel`: quadratic Welschinger counts, curve invariants, move tests,
//! the rank recursion, local-model verification and the real oracle.
//!
//! Exit codes: 0 success, 1 failed check or undecided comparison,
//! 2 configuration or curve not generic, 3 input error.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use gw_welschinger::curvesing::{classify_locus, singular_locus, welschinger_class, CurveError, PlaneCurve, WelOptions};
use gw_welschinger::enumerate::{
    generate_config, kontsevich_n, move_test, real_signature_oracle, run_batch, BatchOutcome, Comparison, ConfigFile, EnumError,
    PencilOptions, PointConfiguration,
};
use gw_welschinger::scalars::FieldDescriptor;
use gw_welschinger::suites;

use report::{config_json, count_json, square_class_json};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "gw-wel", version, about = "Quadratically enriched counts of rational plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// `Wel_d` of a configuration read from a file or generated from a seed.
    Count(CountArgs),
    /// Singularities and Welschinger class of a curve `F(X0, X1, X2) = 0`.
    Curve(CurveArgs),
    /// Counts of two configurations, compared when their types agree.
    MoveTest(MoveArgs),
    /// The classical counts `N_1, ..., N_max`.
    Recursion {
        #[arg(long, default_value_t = 5)]
        max: u32,
    },
    /// Local-model suites.
    Verify(VerifyArgs),
    /// Signed count of real nodal cubics in floating point (ℚ only).
    Oracle(ConfigArgs),
}

#[derive(Args, Debug, Clone)]
struct ConfigArgs {
    #[arg(long, default_value_t = 3)]
    degree: u32,
    /// JSON configuration file.
    #[arg(long)]
    points: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Orbit degrees, e.g. `1x6,2` or `1,1,1,1,1,1,2`; all rational by default.
    #[arg(long = "type")]
    kind: Option<String>,
    /// `Q` or `Fp:<p>`.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Generated runs with seeds `seed, seed + 1, ...` (evaluated in parallel).
    #[arg(long, default_value_t = 1)]
    runs: u64,
    /// Also run the real oracle and require agreement (ℚ only).
    #[arg(long)]
    oracle: bool,
}

#[derive(Args, Debug)]
struct CurveArgs {
    /// Text file holding one ternary form; `#` starts a comment.
    #[arg(long)]
    file: PathBuf,
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Skip the integrality and node-count checks.
    #[arg(long)]
    assume_integral: bool,
}

#[derive(Args, Debug)]
struct MoveArgs {
    /// Two configuration files; otherwise configurations are generated from
    /// `--seed` and `--seed + 1`.
    #[arg(long, num_args = 1)]
    points: Vec<PathBuf>,
    #[arg(long, default_value_t = 3)]
    degree: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "type")]
    kind: Option<String>,
    /// Type of the second configuration; defaults to `--type`.
    #[arg(long = "type-b")]
    kind_b: Option<String>,
    #[arg(long)]
    field: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Cusp,
    Tacnode,
    Triple,
    Residues,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long = "verify", value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials per suite; the defaults are 100 cusp, 50 tacnode, 20 triple
    /// point and 100 residue instances.
    #[arg(long)]
    trials: Option<usize>,
    /// Prime for the base-change suite.
    #[arg(long, default_value_t = 101)]
    prime: u64,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("not generic: {0}")]
    NotGeneric(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::NotGeneric(_) => 2,
            CliError::Input(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Failed(_) => "failed",
            CliError::NotGeneric(_) => "not_generic",
            CliError::Input(_) => "input",
        }
    }
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::NotGeneric(_) | EnumError::GenerationExhausted(_) => CliError::NotGeneric(e.to_string()),
            EnumError::InvalidConfiguration(_) | EnumError::UnsupportedDegree(_) | EnumError::Poly(_) => CliError::Input(e.to_string()),
            EnumError::Curve(c) => c.into(),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Poly(_) | CurveError::ZeroChart | CurveError::Degenerate => CliError::Input(e.to_string()),
            CurveError::NotIntegral
            | CurveError::NotNodal(_)
            | CurveError::WrongNodeCount { .. }
            | CurveError::PositiveDimensional
            | CurveError::NotReduced
            | CurveError::SingularAtInfinity(_)
            | CurveError::NotANode => CliError::NotGeneric(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

/// Result payload and the exit code it carries when the run itself succeeded.
struct Outcome {
    result: Value,
    code: u8,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Outcome { result, code: 0 }
    }
}

fn parse_field(s: &str) -> Result<FieldDescriptor, CliError> {
    s.parse().map_err(|e| CliError::Input(format!("--field {s}: {e}")))
}

/// `1x6,2` and `1,1,1,1,1,1,2` both denote six rational points and a pair.
fn parse_type(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Input(format!("--type {s}: expected entries like 1x6,2"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (deg, mult): (usize, usize) = match part.split_once(['x', '*']) {
            Some((d, m)) => (d.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?),
            None => (part.parse().map_err(|_| bad())?, 1usize),
        };
        out.extend(std::iter::repeat(deg).take(mult));
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_config(path: &Path, field: Option<&str>) -> Result<(PointConfiguration, Option<u32>), CliError> {
    let file: ConfigFile = serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let cfg = file.to_configuration()?;
    if let Some(f) = field {
        if parse_field(f)? != cfg.base() {
            return Err(CliError::Input(format!("--field {f} differs from the file's field {}", cfg.base())));
        }
    }
    Ok((cfg, file.degree))
}

fn default_type(kind: Option<&str>, d: u32) -> Result<Vec<usize>, CliError> {
    match kind {
        Some(k) => parse_type(k),
        None => Ok(vec![1; (3 * d).saturating_sub(1) as usize]),
    }
}

/// The configuration named by the arguments and its degree.
fn resolve(args: &ConfigArgs) -> Result<(PointConfiguration, u32), CliError> {
    match &args.points {
        Some(path) => {
            let (cfg, d) = load_config(path, args.field.as_deref())?;
            if let Some(d) = d.filter(|&d| d != args.degree) {
                return Err(CliError::Input(format!("file declares degree {d}, --degree is {}", args.degree)));
            }
            Ok((cfg, args.degree))
        }
        None => {
            let f = parse_field(args.field.as_deref().unwrap_or("Q"))?;
            let kind = default_type(args.kind.as_deref(), args.degree)?;
            Ok((generate_config(f, &kind, args.degree, args.seed)?, args.degree))
        }
    }
}

fn oracle_json(cfg: &PointConfiguration, seed: u64) -> Result<Value, CliError> {
    let o = real_signature_oracle(cfg, &PencilOptions { seed, ..PencilOptions::default() })?;
    Ok(json!({
        "signature": o.signature,
        "real_roots": o.real_roots,
        "min_separation": o.min_separation,
        "min_abs_e": o.min_abs_e,
    }))
}

fn with_oracle(mut run: Value, cfg: &PointConfiguration, seed: u64, signature: Option<i64>) -> Result<(Value, bool), CliError> {
    let o = oracle_json(cfg, seed)?;
    let agrees = signature.is_some_and(|s| o["signature"].as_i64() == Some(s));
    run["oracle"] = o;
    run["oracle_agrees"] = json!(agrees);
    Ok((run, agrees))
}

fn count(args: &CountArgs) -> Result<Outcome, CliError> {
    let c = &args.config;
    if args.oracle && c.points.is_none() && parse_field(c.field.as_deref().unwrap_or("Q"))? != FieldDescriptor::Rationals {
        return Err(CliError::Input("--oracle needs the field Q".into()));
    }
    if args.runs > 1 {
        if c.points.is_some() {
            return Err(CliError::Input("--runs applies to generated configurations only".into()));
        }
        return count_batch(args);
    }
    let (cfg, d) = resolve(c)?;
    if args.oracle && cfg.base() != FieldDescriptor::Rationals {
        return Err(CliError::Input("--oracle needs the field Q".into()));
    }
    let opts = PencilOptions { seed: c.seed, ..PencilOptions::default() };
    let rep = gw_welschinger::enumerate::welschinger_number(&cfg, d, &opts)?;
    let mut run = count_json(&rep, &cfg, c.seed);
    let mut code = 0;
    if args.oracle && d == 3 {
        let (r, agrees) = with_oracle(run, &cfg, c.seed, rep.signature())?;
        run = r;
        code = if agrees { 0 } else { 1 };
    }
    Ok(Outcome { result: json!({ "runs": [run], "rejections": [] }), code })
}

fn count_batch(args: &CountArgs) -> Result<Outcome, CliError> {
    let c = &args.config;
    let f = parse_field(c.field.as_deref().unwrap_or("Q"))?;
    let kind = default_type(c.kind.as_deref(), c.degree)?;
    if let Some(bad) = kind.iter().find(|k| !(1..=3).contains(*k)) {
        return Err(CliError::Input(format!("orbits of degree {bad} are not supported")));
    }
    let seeds: Vec<u64> = (0..args.runs).map(|i| c.seed + i).collect();
    let runs = run_batch(f, &kind, c.degree, &seeds, &PencilOptions::default());
    let mut accepted = Vec::new();
    let mut rejections = Vec::new();
    let mut code = 0;
    for r in runs {
        match r.outcome {
            BatchOutcome::Accepted(rep) => {
                let cfg = generate_config(f, &kind, c.degree, r.seed)?;
                let mut run = count_json(&rep, &cfg, r.seed);
                if args.oracle && c.degree == 3 {
                    let (v, agrees) = with_oracle(run, &cfg, r.seed, rep.signature())?;
                    run = v;
                    if !agrees {
                        code = 1;
                    }
                }
                accepted.push(run);
            }
            BatchOutcome::Rejected(why) => rejections.push(json!({ "seed": r.seed, "reason": why })),
            BatchOutcome::Failed(e) => {
                let e = CliError::from(e);
                code = code.max(e.code());
                rejections.push(json!({ "seed": r.seed, "reason": e.to_string(), "kind": e.kind() }));
            }
        }
    }
    if accepted.is_empty() {
        code = code.max(2);
    }
    Ok(Outcome { result: json!({ "runs": accepted, "rejections": rejections }), code })
}

fn curve(args: &CurveArgs) -> Result<Outcome, CliError> {
    let f = parse_field(&args.field)?;
    let text: String = read(&args.file)?.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join(" ");
    let c = PlaneCurve::parse(f, text.trim())?;
    let opts = WelOptions { seed: args.seed, assume_integral: args.assume_integral, enforce_node_count: !args.assume_integral, ..WelOptions::default() };
    let locus = singular_locus(&c, &opts)?;
    let kinds: Vec<Value> = classify_locus(&locus)?
        .into_iter()
        .map(|(m, k)| json!({ "kind": format!("{k:?}"), "field_of_definition": gw_welschinger::poly::parse::format_uni(&m, "t") }))
        .collect();
    let mut result = json!({
        "field": f.to_string(),
        "curve": gw_welschinger::poly::parse::format_ternary(c.form()),
        "degree": c.degree(),
        "arithmetic_genus": c.arithmetic_genus(),
        "singularities": kinds,
    });
    match welschinger_class(&c, &opts) {
        Ok(w) => {
            result["node_count"] = json!(w.node_count);
            result["norm"] = json!(w.norm.to_string());
            result["wel"] = square_class_json(&w.form());
            Ok(Outcome::ok(result))
        }
        Err(e) => {
            let e = CliError::from(e);
            result["error"] = json!({ "kind": e.kind(), "message": e.to_string() });
            Ok(Outcome { result, code: e.code() })
        }
    }
}

fn move_cmd(args: &MoveArgs) -> Result<Outcome, CliError> {
    let (a, b) = match args.points.as_slice() {
        [pa, pb] => (load_config(pa, args.field.as_deref())?.0, load_config(pb, args.field.as_deref())?.0),
        [] => {
            let f = parse_field(args.field.as_deref().unwrap_or("Q"))?;
            let ka = default_type(args.kind.as_deref(), args.degree)?;
            let kb = match &args.kind_b {
                Some(k) => parse_type(k)?,
                None => ka.clone(),
            };
            (generate_config(f, &ka, args.degree, args.seed)?, generate_config(f, &kb, args.degree, args.seed + 1)?)
        }
        _ => return Err(CliError::Input("move-test takes two --points files or none".into())),
    };
    let opts = PencilOptions { seed: args.seed, ..PencilOptions::default() };
    let m = move_test(&a, &b, args.degree, &opts)?;
    let (verdict, undecided, code) = match &m.comparison {
        Comparison::Skipped => ("not_compared", Vec::new(), 0),
        Comparison::Equivalent => ("equivalent", Vec::new(), 0),
        Comparison::Inequivalent => ("inequivalent", Vec::new(), 1),
        Comparison::Undecided(c) => ("undecided", c.clone(), 1),
    };
    Ok(Outcome {
        result: json!({
            "first": count_json(&m.first, &a, args.seed),
            "second": count_json(&m.second, &b, args.seed),
            "same_type": m.same_type,
            "comparison": verdict,
            "undecided_cofactors": undecided,
        }),
        code,
    })
}

fn recursion(max: u32) -> Result<Outcome, CliError> {
    let table = kontsevich_n(max).ok_or_else(|| CliError::Input(format!("--max {max}: expected 1 to 12")))?;
    let rows: Vec<Value> = table.iter().enumerate().map(|(i, n)| json!({ "degree": i + 1, "count": n.to_string() })).collect();
    Ok(Outcome::ok(json!({ "table": rows })))
}

fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    if FieldDescriptor::prime_field(args.prime).is_err() {
        return Err(CliError::Input(format!("--prime {}: expected a prime above 3", args.prime)));
    }
    let n = |default: usize| args.trials.unwrap_or(default);
    let s = args.seed;
    let reports = match args.suite {
        Suite::Cusp => vec![suites::cusp_suite(n(100), s)],
        Suite::Tacnode => vec![suites::tacnode_suite(n(50), s)],
        Suite::Triple => vec![suites::triple_suite(n(20), s)],
        Suite::Residues => vec![suites::residue_suite(n(100), s), suites::cusp_suite(n(100), s)],
        Suite::All => vec![
            suites::node_models(),
            suites::cusp_suite(n(100), s),
            suites::tacnode_suite(n(50), s),
            suites::triple_suite(n(20), s),
            suites::residue_suite(n(100), s),
            suites::functoriality_suite(args.prime, n(10), s),
            suites::representation_suite(n(200), s),
        ],
    };
    let ok = reports.iter().all(|r| r.ok());
    Ok(Outcome { result: json!({ "suites": reports, "passed": ok }), code: if ok { 0 } else { 1 } })
}

fn oracle(args: &ConfigArgs) -> Result<Outcome, CliError> {
    if args.degree != 3 {
        return Err(CliError::Input("the oracle handles degree 3 only".into()));
    }
    let (cfg, _) = resolve(args)?;
    if cfg.base() != FieldDescriptor::Rationals {
        return Err(CliError::Input("the oracle needs the field Q".into()));
    }
    Ok(Outcome::ok(json!({ "configuration": config_json(&cfg, 3), "oracle": oracle_json(&cfg, args.seed)? })))
}

fn command_echo() -> Value {
    json!(std::env::args().skip(1).collect::<Vec<_>>())
}

fn emit(report: &Value, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report).expect("JSON values serialize") + "\n";
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let help = matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let _ = e.print();
            return ExitCode::from(if help { 0 } else { 3 });
        }
    };
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Count(a) => count(a),
        Command::Curve(a) => curve(a),
        Command::MoveTest(a) => move_cmd(a),
        Command::Recursion { max } => recursion(*max),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => oracle(a),
    };
    let (result, code) = match outcome {
        Ok(o) => (o.result, o.code),
        Err(e) => {
            eprintln!("gw-wel: {e}");
            (json!({ "error": { "kind": e.kind(), "message": e.to_string() } }), e.code())
        }
    };
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "tool": concat!("gw-wel ", env!("CARGO_PKG_VERSION")),
        "command": command_echo(),
        "exit_code": code,
        "result": result,
        "timing": { "elapsed_ms": start.elapsed().as_millis() as u64 },
    });
    if let Err(e) = emit(&report, cli.out.as_deref()) {
        eprintln!("gw-wel: {e}");
        return ExitCode::from(3);
    }
    ExitCode::from(code)
}
