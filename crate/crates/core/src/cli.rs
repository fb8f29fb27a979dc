//! Command-line front end: argument parsing, dispatch, tables and their
//! round-trip verification.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::{format_num_den, parse_rational, qi, PadicNumber, Q};
use crate::deform::{CustomKernel, DeformParams, Preset, StructureFunction};
use crate::error::{Error, Result};
use crate::padicfun::{self, TwistParams};
use crate::quadrature::{self, QuadratureSpec, Regime};
use crate::report::Report;
use crate::series::{self, Family, PolyFamily, PolynomialExact, SpectralCalculus, Trig};
use crate::{deform, gammabeta, spinzeta};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUITE_FAILURE: i32 = 1;

#[derive(Parser, Debug)]
#[command(name = "rpq", version, about = "Exact R(p,q)-deformed calculus and p-adic extensions")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Global {
    /// Structure function preset (heine, quesne, bm, js, cj, hn or the full names).
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// JSON file with a custom kernel {numerator: [[s,t,c],...], denominator: [...]}.
    #[arg(long, global = true, conflicts_with = "preset")]
    pub kernel: Option<PathBuf>,
    /// Deformation parameter p; p-adic commands read it as the prime when --prime is absent.
    #[arg(short = 'p', global = true, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(short = 'q', global = true, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi1: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi2: Option<String>,
    /// p-adic twist parameter ρ.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub rho: Option<String>,
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// p-adic digits (default 16).
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Series order (default 12).
    #[arg(long, global = true)]
    pub order: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a single quantity.
    Eval(EvalArgs),
    /// Run identity suites.
    Check(CheckArgs),
    /// Emit or verify a table over a parameter grid.
    Table(TableArgs),
    /// SL(2, Z_p) spin generators.
    #[command(subcommand)]
    Spin(SpinOp),
    /// Spin(1/2) local zeta functions.
    #[command(subcommand)]
    Zeta(ZetaOp),
    /// Volkenborn integral of a polynomial.
    Volkenborn(VolkenbornArgs),
    /// p-adic R(ρ,q)-gamma.
    Pgamma(PgammaArgs),
    /// p-adic R(ρ,q)-beta.
    Pbeta(PairArgs),
    /// Carlitz-type deformed Bernoulli value.
    Carlitz(CarlitzArgs),
    /// Deformed gamma as a truncated product.
    Gamma(GammaArgs),
    /// Deformed beta.
    Beta(BetaArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalWhat {
    Number,
    Factorial,
    Binomial,
    Derivative,
    Antiderivative,
    Integral,
    Jackson,
    Exp,
    Trig,
    Family,
    Zigzag,
    PowerBasis,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    pub what: EvalWhat,
    #[arg(short = 'n', allow_hyphen_values = true)]
    pub n: Option<i64>,
    #[arg(short = 'm')]
    pub m: Option<i64>,
    /// Polynomial coefficients c0,c1,... as rationals.
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(short = 'a', allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(short = 'b', allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(short = 'x', allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Jackson nodes; omitted means the geometric closed form.
    #[arg(long)]
    pub terms: Option<usize>,
    #[arg(long, value_enum, default_value = "ratio")]
    pub regime: RegimeArg,
    /// Function name: sin, cos, tan, ...; upper case selects the E_R family.
    #[arg(long)]
    pub func: Option<String>,
    #[arg(long)]
    pub family: Option<String>,
    /// Use E_R instead of e_R.
    #[arg(long)]
    pub upper: bool,
    /// Allow Laurent results for csc and coth.
    #[arg(long)]
    pub laurent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Ratio,
    Mirrored,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Module {
    Deform,
    Series,
    Quadrature,
    Gammabeta,
    Padicfun,
    Spinzeta,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long = "module", value_enum)]
    pub modules: Vec<Module>,
    #[arg(long)]
    pub all: bool,
    /// Run at p = q = 1 and include the classical π/sin checks.
    #[arg(long)]
    pub classical_limit: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Numbers,
    Factorials,
    Family,
    Zigzag,
    Volkenborn,
    Zeta,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub kind: Option<TableKind>,
    #[arg(long, default_value_t = 0)]
    pub from: i64,
    #[arg(long, default_value_t = 10)]
    pub to: i64,
    /// bernoulli, euler or genocchi.
    #[arg(long, default_value = "bernoulli")]
    pub family: String,
    #[arg(short = 'x', default_value = "0", allow_hyphen_values = true)]
    pub x: String,
    /// Primes for zeta tables, comma separated.
    #[arg(long, default_value = "2,3,5")]
    pub primes: String,
    #[arg(long, default_value_t = 2)]
    pub s_from: i64,
    #[arg(long, default_value_t = 6)]
    pub s_to: i64,
    /// Re-evaluate every row of an existing table instead of emitting one.
    #[arg(long)]
    pub verify: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    Minus,
    Z,
    Plus,
}

#[derive(Args, Debug)]
pub struct SpinExpArgs {
    #[arg(long, value_enum, default_value = "z")]
    pub generator: Generator,
    #[arg(short = 't', allow_hyphen_values = true)]
    pub t: String,
    /// ħ in the generators.
    #[arg(long, default_value = "1")]
    pub scale: String,
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    /// Entries a,b,c,d of [[a,b],[c,d]].
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
}

#[derive(Subcommand, Debug)]
pub enum SpinOp {
    Exp(SpinExpArgs),
    Log(MatrixArgs),
    Level(MatrixArgs),
}

#[derive(Args, Debug)]
pub struct ZetaEvalArgs {
    #[arg(short = 's', allow_hyphen_values = true)]
    pub s: String,
}

#[derive(Args, Debug)]
pub struct GhostArgs {
    #[arg(long)]
    pub group: String,
    #[arg(short = 'l')]
    pub l: i64,
}

#[derive(Subcommand, Debug)]
pub enum ZetaOp {
    Eval(ZetaEvalArgs),
    Table(TableArgs),
    Igusa(ZetaEvalArgs),
    Ghost(GhostArgs),
}

#[derive(Args, Debug)]
pub struct VolkenbornArgs {
    #[arg(long)]
    pub poly: String,
    /// Levels N, comma separated (default 1..6).
    #[arg(long)]
    pub levels: Option<String>,
}

#[derive(Args, Debug)]
pub struct PgammaArgs {
    /// Integer argument (exact).
    #[arg(short = 'n', allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// p-adic integer argument as a rational; evaluated as a limit over digit truncations.
    #[arg(short = 'x', allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, default_value_t = 6)]
    pub levels: u32,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(short = 'x', allow_hyphen_values = true)]
    pub x: i64,
    #[arg(short = 'y', allow_hyphen_values = true)]
    pub y: i64,
}

#[derive(Args, Debug)]
pub struct CarlitzArgs {
    #[arg(short = 'n')]
    pub n: u32,
    #[arg(short = 'a', default_value = "0", allow_hyphen_values = true)]
    pub a: String,
    #[arg(short = 'x', default_value = "0", allow_hyphen_values = true)]
    pub x: String,
    #[arg(long)]
    pub levels: Option<String>,
}

#[derive(Args, Debug)]
pub struct GammaArgs {
    #[arg(short = 'z', allow_hyphen_values = true)]
    pub z: String,
    #[arg(long, default_value_t = gammabeta::DEFAULT_TRUNCATION)]
    pub truncation: usize,
}

#[derive(Args, Debug)]
pub struct BetaArgs {
    #[arg(short = 'x', allow_hyphen_values = true)]
    pub x: String,
    #[arg(short = 'y', allow_hyphen_values = true)]
    pub y: String,
    #[arg(long, default_value_t = gammabeta::DEFAULT_TRUNCATION)]
    pub truncation: usize,
}

/// Result of a command before formatting.
pub enum Output {
    Data { json: Value, plain: String },
    Table(Table),
    Suites { reports: Vec<Report>, passed: bool },
    Verified { rows: usize, failures: Vec<String> },
}

/// Parses `args` (including the program name), runs, and writes data to `out`
/// and diagnostics to `err`. Returns the exit code.
pub fn run_with(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(output) => emit(&cli, output, out, err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(args: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

fn emit(cli: &Cli, output: Output, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let g = &cli.global;
    let res = match output {
        Output::Data { json, plain } => {
            let text = match g.format.unwrap_or(default_format(&cli.command)) {
                Format::Json => pretty(&json),
                Format::Plain => plain,
                Format::Csv => match flat_csv(&json) {
                    Ok(s) => s,
                    Err(e) => {
                        let _ = writeln!(err, "error: {e}");
                        return e.exit_code();
                    }
                },
            };
            write_text(g.out.as_deref(), &text, out).map(|_| EXIT_OK)
        }
        Output::Table(t) => {
            let fmt = g.format.unwrap_or(Format::Csv);
            t.render(fmt).and_then(|text| write_text(g.out.as_deref(), &text, out)).map(|_| EXIT_OK)
        }
        Output::Suites { reports, passed } => {
            let text = match g.format.unwrap_or(Format::Json) {
                Format::Plain => plain_reports(&reports),
                Format::Json => pretty(&json!({ "passed": passed, "suites": reports })),
                Format::Csv => csv_reports(&reports),
            };
            let code = if passed { EXIT_OK } else { EXIT_SUITE_FAILURE };
            if !passed {
                if let Some((suite, c)) =
                    reports.iter().find_map(|r| r.first_failure().map(|c| (r.suite.clone(), c.clone())))
                {
                    let _ = writeln!(err, "FAILED {suite}: {} (lhs {}, rhs {})", c.name, c.lhs, c.rhs);
                }
            }
            write_text(g.out.as_deref(), &text, out).map(|_| code)
        }
        Output::Verified { rows, failures } => {
            for f in &failures {
                let _ = writeln!(err, "mismatch: {f}");
            }
            let v = json!({ "rows": rows, "mismatches": failures.len(), "round_trip": failures.is_empty() });
            let text = match g.format.unwrap_or(Format::Json) {
                Format::Plain => format!("{rows} rows, {} mismatches\n", failures.len()),
                _ => pretty(&v),
            };
            let code = if failures.is_empty() { EXIT_OK } else { EXIT_SUITE_FAILURE };
            write_text(g.out.as_deref(), &text, out).map(|_| code)
        }
    };
    match res {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn default_format(c: &Command) -> Format {
    match c {
        Command::Eval(_) => Format::Plain,
        _ => Format::Json,
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s
}

fn write_text(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string())),
    }
}

fn flat_csv(v: &Value) -> Result<String> {
    let obj = v
        .as_object()
        .filter(|o| o.values().all(|x| !x.is_object() && !x.is_array()))
        .ok_or_else(|| Error::Parse("this result is nested; use --format json".into()))?;
    let mut w = csv::Writer::from_writer(vec![]);
    let cell = |x: &Value| match x {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    w.write_record(obj.keys()).map_err(csv_err)?;
    w.write_record(obj.values().map(cell)).map_err(csv_err)?;
    finish_csv(w)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn plain_reports(reports: &[Report]) -> String {
    let mut s = String::new();
    for r in reports {
        for c in &r.checks {
            let tag = match (c.asserted, c.passed) {
                (false, _) => "MEASURED",
                (true, true) => "PASS",
                (true, false) => "FAIL",
            };
            s.push_str(&format!("{tag}\t{}: {}\t{}\n", r.suite, c.name, c.residual));
        }
    }
    s
}

fn csv_reports(reports: &[Report]) -> String {
    let mut w = csv::Writer::from_writer(vec![]);
    let _ = w.write_record(["suite", "name", "asserted", "passed", "lhs", "rhs", "residual"]);
    for r in reports {
        for c in &r.checks {
            let _ = w.write_record([
                r.suite.as_str(),
                &c.name,
                &c.asserted.to_string(),
                &c.passed.to_string(),
                &c.lhs,
                &c.rhs,
                &c.residual,
            ]);
        }
    }
    finish_csv(w).unwrap_or_default()
}

fn rat(s: &str) -> Result<Q> {
    parse_rational(s)
}

fn opt_rat(s: &Option<String>, default: Q) -> Result<Q> {
    s.as_deref().map(rat).transpose().map(|x| x.unwrap_or(default))
}

fn need<T: Clone>(x: &Option<T>, name: &str) -> Result<T> {
    x.clone().ok_or_else(|| Error::Parse(format!("missing {name}")))
}

fn structure(g: &Global) -> Result<StructureFunction> {
    if let Some(path) = &g.kernel {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        return Ok(StructureFunction::Custom(CustomKernel::from_json_str(&text)?));
    }
    Ok(Preset::parse(g.preset.as_deref().unwrap_or("js"))?.into())
}

/// Rational deformation parameters; `p = q = 1` unless given.
pub fn deform_params(g: &Global) -> Result<DeformParams<Q>> {
    let p = opt_rat(&g.p, Q::one())?;
    let q = opt_rat(&g.q, Q::one())?;
    let mut d = DeformParams::new(structure(g)?, p, q)?;
    if g.xi1.is_some() || g.xi2.is_some() {
        let x1 = opt_rat(&g.xi1, d.xi1().clone())?;
        let x2 = opt_rat(&g.xi2, d.xi2().clone())?;
        d = d.with_twist(x1, x2);
    }
    Ok(d)
}

fn prime(g: &Global) -> Result<u64> {
    if let Some(p) = g.prime {
        return Ok(p);
    }
    match &g.p {
        Some(s) => s.trim().parse::<u64>().map_err(|_| Error::Parse(format!("-p {s:?} is not a prime; use --prime"))),
        None => Ok(5),
    }
}

fn precision(g: &Global) -> u32 {
    g.precision.unwrap_or(16)
}

/// Classical twist unless `--rho` or `-q` is given.
pub fn twist_params(g: &Global) -> Result<TwistParams> {
    let p = prime(g)?;
    let n = precision(g);
    let tw = if g.rho.is_none() && g.q.is_none() {
        TwistParams::classical(p, n)?
    } else {
        TwistParams::new(p, &opt_rat(&g.rho, Q::one())?, &opt_rat(&g.q, Q::one())?, n)?
    };
    Ok(if g.preset.is_some() || g.kernel.is_some() { tw.with_structure(structure(g)?) } else { tw })
}

fn levels_arg(s: &Option<String>) -> Result<Vec<u32>> {
    match s {
        None => Ok(padicfun::default_levels()),
        Some(t) => t
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad level {x:?}"))))
            .collect(),
    }
}

fn data(json: Value, plain: impl Into<String>) -> Output {
    let mut plain = plain.into();
    if !plain.ends_with('\n') {
        plain.push('\n');
    }
    Output::Data { json, plain }
}

fn padic_json(x: &PadicNumber) -> Value {
    json!({
        "representative": x.to_rational().to_string(),
        "valuation": x.valuation(),
        "precision": x.precision(),
        "digits": x.digits(),
    })
}

pub fn execute(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    match &cli.command {
        Command::Eval(a) => cmd_eval(g, a),
        Command::Check(a) => cmd_check(g, a),
        Command::Table(a) => cmd_table(g, a, None),
        Command::Spin(op) => cmd_spin(g, op),
        Command::Zeta(op) => cmd_zeta(g, op),
        Command::Volkenborn(a) => {
            let tw = twist_params(g)?;
            let f = PolynomialExact::parse(&a.poly)?;
            let levels = levels_arg(&a.levels)?;
            let work = tw.precision() + padicfun::GUARD;
            let coeffs: Vec<PadicNumber> =
                f.to_vec().iter().map(|c| PadicNumber::from_rational(c, tw.prime(), work)).collect::<Result<_>>()?;
            let eval = |x: i64| -> Result<PadicNumber> {
                let xp = PadicNumber::from_i64(x, tw.prime(), work)?;
                let mut acc = PadicNumber::zero(tw.prime(), work);
                for c in coeffs.iter().rev() {
                    acc = acc.mul(&xp)?.add(c)?;
                }
                Ok(acc)
            };
            let r = padicfun::volkenborn_integral(&eval, &levels, &tw)?;
            let v = r.value.with_precision(tw.precision());
            let json = json!({
                "value": padic_json(&v),
                "levels": r.levels,
                "diff_valuations": r.diff_valuations,
                "certified_digits": r.certified_digits(),
            });
            Ok(data(json, v.to_rational().to_string()))
        }
        Command::Pgamma(a) => {
            let tw = twist_params(g)?;
            match (&a.n, &a.x) {
                (Some(n), None) => {
                    let v = padicfun::padic_gamma_rpq(*n, &tw)?.with_precision(tw.precision());
                    Ok(data(json!({ "n": n, "value": padic_json(&v), "exact": true }), v.to_rational().to_string()))
                }
                (None, Some(x)) => {
                    let xp = PadicNumber::from_rational(&rat(x)?, tw.prime(), tw.precision() + padicfun::GUARD)?;
                    let lim = padicfun::padic_gamma_limit(&xp, &tw, a.levels)?;
                    let last = lim.values.last().cloned().ok_or_else(|| Error::NoConvergence("no levels".into()))?;
                    let v = last.with_precision(tw.precision());
                    let json = json!({
                        "x": x,
                        "value": padic_json(&v),
                        "truncations": lim.truncations,
                        "diff_valuations": lim.diff_valuations,
                    });
                    Ok(data(json, v.to_rational().to_string()))
                }
                _ => Err(Error::Parse("give exactly one of -n or -x".into())),
            }
        }
        Command::Pbeta(a) => {
            let tw = twist_params(g)?;
            let v = padicfun::padic_beta_rpq(a.x, a.y, &tw)?.with_precision(tw.precision());
            Ok(data(json!({ "x": a.x, "y": a.y, "value": padic_json(&v) }), v.to_rational().to_string()))
        }
        Command::Carlitz(a) => {
            let tw = twist_params(g)?;
            let x = PadicNumber::from_rational(&rat(&a.x)?, tw.prime(), tw.precision() + padicfun::GUARD)?;
            let c = padicfun::carlitz_bernoulli(a.n, &rat(&a.a)?, &x, &levels_arg(&a.levels)?, &tw)?;
            let v = c.direct.with_precision(tw.precision());
            let json = json!({
                "n": a.n,
                "direct": padic_json(&v),
                "binomial": padic_json(&c.binomial.with_precision(tw.precision())),
                "certified_digits": c.certified_digits,
            });
            Ok(data(json, v.to_rational().to_string()))
        }
        Command::Gamma(a) => {
            let d = deform_params(g)?;
            let v = gammabeta::gamma_rpq(&rat(&a.z)?, &d, a.truncation)?;
            Ok(data(serde_json::to_value(&v).unwrap_or(Value::Null), v.value.to_string()))
        }
        Command::Beta(a) => {
            let d = deform_params(g)?;
            let v = gammabeta::beta_rpq(&rat(&a.x)?, &rat(&a.y)?, &d, a.truncation)?;
            Ok(data(serde_json::to_value(&v).unwrap_or(Value::Null), v.value.to_string()))
        }
    }
}

fn poly_arg(a: &EvalArgs) -> Result<PolynomialExact> {
    PolynomialExact::parse(&need(&a.poly, "--poly")?)
}

fn series_json(s: &series::FormalSeries, params: &DeformParams<Q>) -> Result<(Value, String)> {
    let plain = s.to_plain(params)?;
    let cs: Vec<String> = plain.coeffs().iter().map(|c| c.to_string()).collect();
    Ok((json!({ "leading_exponent": plain.leading_exponent(), "coefficients": cs }), plain.to_string()))
}

fn cmd_eval(g: &Global, a: &EvalArgs) -> Result<Output> {
    let d = deform_params(g)?;
    let order = g.order.unwrap_or(12);
    let single = |name: &str, v: Q| data(json!({ name: v.to_string() }), v.to_string());
    Ok(match a.what {
        EvalWhat::Number => single("value", d.number(need(&a.n, "-n")?)?),
        EvalWhat::Factorial => single("value", d.factorial(need(&a.n, "-n")?)?),
        EvalWhat::Binomial => single("value", d.binomial(need(&a.m, "-m")?, need(&a.n, "-n")?)?),
        EvalWhat::Derivative | EvalWhat::Antiderivative => {
            let f = poly_arg(a)?;
            let r = if a.what == EvalWhat::Derivative { f.rpq_derivative(&d)? } else { f.rpq_antiderivative(&d)? };
            let cs: Vec<String> = r.to_vec().iter().map(|c| c.to_string()).collect();
            data(json!({ "coefficients": cs }), r.to_string())
        }
        EvalWhat::Integral => {
            let f = poly_arg(a)?;
            let lo = opt_rat(&a.a, Q::zero())?;
            let hi = rat(&need(&a.b, "-b")?)?;
            single("value", quadrature::definite_integral_poly(&f, &lo, &hi, &d)?)
        }
        EvalWhat::Jackson => {
            let f = poly_arg(a)?;
            let regime = match a.regime {
                RegimeArg::Ratio => Regime::RatioBelowOne,
                RegimeArg::Mirrored => Regime::Mirrored,
            };
            let spec = QuadratureSpec::new(d, a.terms, regime)?;
            single("value", quadrature::jackson_sum_poly(&f, &rat(&need(&a.a, "-a")?)?, &spec)?)
        }
        EvalWhat::Exp => {
            let s = if a.upper { series::exp_upper(&d, order)? } else { series::exp_lower(&d, order)? };
            let (j, p) = series_json(&s, &d)?;
            data(j, p)
        }
        EvalWhat::Trig => {
            let (t, fam) = Trig::parse(&need(&a.func, "--func")?)?;
            let fam = if a.upper { Family::Upper } else { fam };
            let s = series::trig_series(&d, t, fam, order, a.laurent)?;
            let (j, p) = series_json(&s, &d)?;
            data(j, p)
        }
        EvalWhat::Family => {
            let fam = PolyFamily::parse(a.family.as_deref().unwrap_or("bernoulli"))?;
            let x = opt_rat(&a.x, Q::zero())?;
            let conv = if a.upper { Family::Upper } else { Family::Lower };
            let n = a.n.map(|n| n.max(0) as usize).unwrap_or(order);
            let vals = series::generating_polynomials(&d, fam, &x, n, conv)?;
            let cs: Vec<String> = vals.iter().map(|c| c.to_string()).collect();
            data(json!({ "family": fam.name(), "x": x.to_string(), "values": cs }), cs.join("\n"))
        }
        EvalWhat::Zigzag => {
            let count = a.n.map(|n| n.max(1) as usize).unwrap_or(8);
            let vals = series::zigzag_numbers(&d, count)?;
            let cs: Vec<String> = vals.iter().map(|c| c.to_string()).collect();
            data(json!({ "values": cs }), cs.join("\n"))
        }
        EvalWhat::PowerBasis => {
            let x = opt_rat(&a.x, Q::one())?;
            let y = opt_rat(&a.a, Q::zero())?;
            let mode = if a.upper { gammabeta::SignMode::Plus } else { gammabeta::SignMode::Minus };
            single("value", gammabeta::power_basis(&x, &y, need(&a.n, "-n")?, mode, &d)?)
        }
    })
}

fn cmd_check(g: &Global, a: &CheckArgs) -> Result<Output> {
    let modules: Vec<Module> = if a.all {
        Module::value_variants().to_vec()
    } else {
        a.modules.clone()
    };
    if modules.is_empty() {
        return Err(Error::Parse("nothing selected; pass --module <name> or --all".into()));
    }
    let mut reports = Vec::new();
    for m in modules {
        reports.extend(run_module(g, m, a.classical_limit)?);
    }
    let passed = reports.iter().all(|r| r.all_passed());
    Ok(Output::Suites { reports, passed })
}

fn rational_params(g: &Global, classical: bool, fallback: (Q, Q)) -> Result<DeformParams<Q>> {
    if classical {
        return Ok(DeformParams::classical());
    }
    if g.p.is_none() && g.q.is_none() && g.kernel.is_none() {
        let s = structure(g)?;
        return DeformParams::new(s, fallback.0, fallback.1);
    }
    deform_params(g)
}

fn check_primes(g: &Global) -> Result<Vec<u64>> {
    Ok(match (g.prime, &g.p) {
        (Some(p), _) => vec![p],
        (None, Some(_)) if g.rho.is_none() && g.q.is_none() => vec![prime(g)?],
        _ => vec![3, 5, 7],
    })
}

/// Suites run by `check --module m`.
pub fn run_module(g: &Global, m: Module, classical: bool) -> Result<Vec<Report>> {
    let default_pq = (Q::one(), qi(1) / qi(2));
    Ok(match m {
        Module::Deform => {
            if classical || g.preset.is_some() || g.kernel.is_some() || g.p.is_some() || g.q.is_some() {
                vec![deform::suite(&rational_params(g, classical, default_pq)?, 32)?]
            } else {
                let mut v = Vec::new();
                for pr in Preset::ALL {
                    v.push(deform::suite(&DeformParams::new(pr, qi(2), qi(1) / qi(3))?, 32)?);
                }
                v.push(deform::bm_identity_suite(&(qi(2) / qi(3)), 7, 4)?);
                v
            }
        }
        Module::Series => {
            let d = rational_params(g, classical, default_pq)?;
            let mut r = series::suite(&d, g.order.unwrap_or(8))?;
            r.extend(series::operator_algebra_check(&d, 8)?);
            vec![r]
        }
        Module::Quadrature => vec![quadrature::suite(&rational_params(g, classical, default_pq)?)?],
        Module::Gammabeta => {
            let d = rational_params(g, classical, default_pq)?;
            vec![gammabeta::suite(&d, classical)?]
        }
        Module::Padicfun => {
            let mut v = Vec::new();
            for p in check_primes(g)? {
                let n = precision(g);
                let tw = if classical {
                    TwistParams::classical(p, n)?
                } else if g.rho.is_some() || g.q.is_some() {
                    let mut g2 = g.clone();
                    g2.prime = Some(p);
                    twist_params(&g2)?
                } else {
                    TwistParams::new(p, &qi(1 + p as i64), &qi(1 + 2 * p as i64), n)?
                };
                let cl = TwistParams::classical(p, n)?;
                let mut r = padicfun::gamma_suite(&tw, 30)?;
                r.extend(padicfun::volkenborn_suite(&cl, &padicfun::default_levels())?);
                v.push(r);
            }
            v
        }
        Module::Spinzeta => {
            let mut v = Vec::new();
            for p in check_primes(g)? {
                v.push(spinzeta::suite(p, precision(g))?);
            }
            v
        }
    })
}

fn cmd_spin(g: &Global, op: &SpinOp) -> Result<Output> {
    let p = prime(g)?;
    let n = precision(g);
    let mat_json = |m: &spinzeta::Mat2Padic| -> Value {
        json!({
            "a": padic_json(&m.a), "b": padic_json(&m.b),
            "c": padic_json(&m.c), "d": padic_json(&m.d),
        })
    };
    let mat_plain = |m: &spinzeta::Mat2Padic| {
        format!(
            "{} {}\n{} {}",
            m.a.to_rational(),
            m.b.to_rational(),
            m.c.to_rational(),
            m.d.to_rational()
        )
    };
    let parse_matrix = |s: &str| -> Result<spinzeta::Mat2Padic> {
        let e: Vec<Q> = s.split(',').map(rat).collect::<Result<_>>()?;
        if e.len() != 4 {
            return Err(Error::Parse("--matrix needs four entries a,b,c,d".into()));
        }
        spinzeta::Mat2Padic::from_rationals([&e[0], &e[1], &e[2], &e[3]], p, n)
    };
    match op {
        SpinOp::Exp(a) => {
            let gens = spinzeta::spin_generators(&rat(&a.scale)?, p, n)?;
            let s = match a.generator {
                Generator::Minus => &gens.minus,
                Generator::Z => &gens.z,
                Generator::Plus => &gens.plus,
            };
            let t = PadicNumber::from_rational(&rat(&a.t)?, p, n)?;
            let e = spinzeta::mat_exp(s, &t)?;
            let json = json!({ "exp": mat_json(&e), "level": spinzeta::congruence_level(&e) });
            Ok(data(json, mat_plain(&e)))
        }
        SpinOp::Log(a) => {
            let l = spinzeta::mat_log(&parse_matrix(&a.matrix)?)?;
            Ok(data(json!({ "log": mat_json(&l) }), mat_plain(&l)))
        }
        SpinOp::Level(a) => {
            let lvl = spinzeta::congruence_level(&parse_matrix(&a.matrix)?);
            Ok(data(json!({ "level": lvl }), lvl.to_string()))
        }
    }
}

fn cmd_zeta(g: &Global, op: &ZetaOp) -> Result<Output> {
    match op {
        ZetaOp::Eval(a) => {
            let v = spinzeta::zeta_spin_half(prime(g)?, &rat(&a.s)?)?;
            Ok(data(serde_json::to_value(&v).unwrap_or(Value::Null), v.value.clone()))
        }
        ZetaOp::Table(a) => cmd_table(g, a, Some(TableKind::Zeta)),
        ZetaOp::Igusa(a) => {
            let p = prime(g)?;
            let t = spinzeta::t_of(p, &rat(&a.s)?)?;
            let v = spinzeta::igusa_zf(p)?.eval(&t)?;
            Ok(data(json!({ "p": p, "s": a.s, "value": v.to_string() }), v.to_string()))
        }
        ZetaOp::Ghost(a) => {
            let v = spinzeta::ghost_boundary(spinzeta::GhostGroup::parse(&a.group)?, a.l)?;
            Ok(data(json!({ "group": a.group, "l": a.l, "beta": v.to_string() }), v.to_string()))
        }
    }
}

/// Header plus rows of string cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub kind: TableKind,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Numbers => "numbers",
            TableKind::Factorials => "factorials",
            TableKind::Family => "family",
            TableKind::Zigzag => "zigzag",
            TableKind::Volkenborn => "volkenborn",
            TableKind::Zeta => "zeta",
        }
    }

    pub fn header(self) -> &'static [&'static str] {
        match self {
            TableKind::Numbers => &["preset", "p", "q", "n", "number"],
            TableKind::Factorials => &["preset", "p", "q", "n", "factorial"],
            TableKind::Family => &["family", "preset", "p", "q", "xi1", "xi2", "x", "n", "value"],
            TableKind::Zigzag => &["preset", "p", "q", "xi1", "xi2", "n", "zigzag"],
            TableKind::Volkenborn => &["prime", "rho", "q", "precision", "n", "moment"],
            TableKind::Zeta => &["p", "s", "value_num", "value_den"],
        }
    }

    fn from_header(h: &[String]) -> Result<Self> {
        TableKind::value_variants()
            .iter()
            .copied()
            .find(|k| k.header().iter().map(|s| s.to_string()).collect::<Vec<_>>() == h)
            .ok_or_else(|| Error::Parse(format!("unrecognised table header {h:?}")))
    }
}

impl Table {
    fn new(kind: TableKind) -> Self {
        Table { kind, header: kind.header().iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn render(&self, fmt: Format) -> Result<String> {
        match fmt {
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| Value::Object(self.header.iter().cloned().zip(r.iter().map(|c| json!(c))).collect()))
                    .collect();
                Ok(pretty(&json!({ "kind": self.kind.name(), "columns": self.header, "rows": rows })))
            }
            Format::Csv | Format::Plain => {
                let mut w = csv::WriterBuilder::new()
                    .delimiter(if fmt == Format::Plain { b'\t' } else { b',' })
                    .from_writer(vec![]);
                w.write_record(&self.header).map_err(csv_err)?;
                for r in &self.rows {
                    w.write_record(r).map_err(csv_err)?;
                }
                finish_csv(w)
            }
        }
    }

    /// Reads a table written as CSV or JSON.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            let header: Vec<String> = v["columns"]
                .as_array()
                .ok_or_else(|| Error::Parse("missing columns".into()))?
                .iter()
                .map(|c| c.as_str().unwrap_or_default().to_string())
                .collect();
            let kind = TableKind::from_header(&header)?;
            let rows = v["rows"]
                .as_array()
                .ok_or_else(|| Error::Parse("missing rows".into()))?
                .iter()
                .map(|r| header.iter().map(|h| r[h].as_str().unwrap_or_default().to_string()).collect())
                .collect();
            return Ok(Table { kind, header, rows });
        }
        let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let header: Vec<String> =
            rd.headers().map_err(|e| Error::Parse(e.to_string()))?.iter().map(|s| s.to_string()).collect();
        let kind = TableKind::from_header(&header)?;
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            rows.push(rec.iter().map(|s| s.to_string()).collect());
        }
        Ok(Table { kind, header, rows })
    }
}

fn cell(x: &Q) -> String {
    format_num_den(x)
}

fn structure_cell(s: &StructureFunction) -> String {
    match s {
        StructureFunction::Preset(p) => p.name().to_string(),
        StructureFunction::Custom(k) => k.to_json().to_string(),
    }
}

fn structure_from_cell(s: &str) -> Result<StructureFunction> {
    if s.trim_start().starts_with('{') {
        Ok(StructureFunction::Custom(CustomKernel::from_json_str(s)?))
    } else {
        Ok(Preset::parse(s)?.into())
    }
}

fn int_cell(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// Recomputes the value cells of a row from its parameter cells.
pub fn evaluate_row(kind: TableKind, row: &[String]) -> Result<Vec<String>> {
    let want = kind.header().len();
    if row.len() != want {
        return Err(Error::Parse(format!("row has {} cells, expected {want}", row.len())));
    }
    let mut out = row.to_vec();
    match kind {
        TableKind::Numbers | TableKind::Factorials => {
            let d = DeformParams::new(structure_from_cell(&row[0])?, rat(&row[1])?, rat(&row[2])?)?;
            let n = int_cell(&row[3])?;
            out[4] = cell(&if kind == TableKind::Numbers { d.number(n)? } else { d.factorial(n)? });
        }
        TableKind::Family => {
            let fam = PolyFamily::parse(&row[0])?;
            let d = DeformParams::new(structure_from_cell(&row[1])?, rat(&row[2])?, rat(&row[3])?)?
                .with_twist(rat(&row[4])?, rat(&row[5])?);
            let n = int_cell(&row[7])?;
            if n < 0 {
                return Err(Error::InvalidParameter("negative degree".into()));
            }
            let vals = series::generating_polynomials(&d, fam, &rat(&row[6])?, n as usize, Family::Lower)?;
            out[8] = cell(&vals[n as usize]);
        }
        TableKind::Zigzag => {
            let d = DeformParams::new(structure_from_cell(&row[0])?, rat(&row[1])?, rat(&row[2])?)?
                .with_twist(rat(&row[3])?, rat(&row[4])?);
            let n = int_cell(&row[5])?;
            if n < 0 {
                return Err(Error::InvalidParameter("negative index".into()));
            }
            out[6] = cell(&series::zigzag_numbers(&d, n as usize + 1)?[n as usize]);
        }
        TableKind::Volkenborn => {
            let p = int_cell(&row[0])? as u64;
            let (rho, q) = (rat(&row[1])?, rat(&row[2])?);
            let prec = int_cell(&row[3])? as u32;
            let tw = if rho.is_one() && q.is_one() {
                TwistParams::classical(p, prec)?
            } else {
                TwistParams::new(p, &rho, &q, prec)?
            };
            let n = int_cell(&row[4])?;
            out[5] = cell(&volkenborn_moment(&tw, n as u32)?);
        }
        TableKind::Zeta => {
            let v = spinzeta::zeta_spin_half(int_cell(&row[0])? as u64, &rat(&row[1])?)?.exact;
            out[2] = v.numer().to_string();
            out[3] = v.denom().to_string();
        }
    }
    Ok(out)
}

/// `∫ x^n dμ` reduced to the requested precision, as its rational representative.
pub fn volkenborn_moment(tw: &TwistParams, n: u32) -> Result<Q> {
    let work = tw.precision() + padicfun::GUARD;
    let p = tw.prime();
    let f = |x: i64| PadicNumber::from_i64(x, p, work)?.pow_int(n as i64);
    let r = padicfun::volkenborn_integral(&f, &padicfun::default_levels(), tw)?;
    Ok(r.value.with_precision(tw.precision()).to_rational())
}

/// Builds a table over the grid described by `a` and the global parameters.
pub fn build_table(g: &Global, a: &TableArgs, kind: TableKind) -> Result<Table> {
    let mut t = Table::new(kind);
    let ns: Vec<i64> = (a.from..=a.to).collect();
    let mut push = |cells: Vec<String>| -> Result<()> {
        t.rows.push(evaluate_row(kind, &cells)?);
        Ok(())
    };
    match kind {
        TableKind::Numbers | TableKind::Factorials | TableKind::Family | TableKind::Zigzag => {
            let d = deform_params(g)?;
            let (s, p, q) = (structure_cell(d.structure()), cell(d.p()), cell(d.q()));
            let (x1, x2) = (cell(d.xi1()), cell(d.xi2()));
            for n in &ns {
                let n = n.to_string();
                push(match kind {
                    TableKind::Numbers | TableKind::Factorials => vec![s.clone(), p.clone(), q.clone(), n, String::new()],
                    TableKind::Family => vec![
                        PolyFamily::parse(&a.family)?.name().to_string(),
                        s.clone(),
                        p.clone(),
                        q.clone(),
                        x1.clone(),
                        x2.clone(),
                        cell(&rat(&a.x)?),
                        n,
                        String::new(),
                    ],
                    _ => vec![s.clone(), p.clone(), q.clone(), x1.clone(), x2.clone(), n, String::new()],
                })?;
            }
        }
        TableKind::Volkenborn => {
            let tw = twist_params(g)?;
            let (rho, q) = if tw.is_classical() {
                (Q::one(), Q::one())
            } else {
                (opt_rat(&g.rho, Q::one())?, opt_rat(&g.q, Q::one())?)
            };
            for n in &ns {
                push(vec![
                    tw.prime().to_string(),
                    cell(&rho),
                    cell(&q),
                    tw.precision().to_string(),
                    n.to_string(),
                    String::new(),
                ])?;
            }
        }
        TableKind::Zeta => {
            let primes: Vec<u64> = a
                .primes
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad prime {s:?}"))))
                .collect::<Result<_>>()?;
            for p in primes {
                for s in a.s_from..=a.s_to {
                    push(vec![p.to_string(), s.to_string(), String::new(), String::new()])?;
                }
            }
        }
    }
    Ok(t)
}

/// Rows whose re-evaluation differs from the stored cells.
pub fn verify_table(t: &Table) -> Vec<String> {
    let mut bad = Vec::new();
    for (i, r) in t.rows.iter().enumerate() {
        match evaluate_row(t.kind, r) {
            Ok(again) if &again == r => {}
            Ok(again) => bad.push(format!("row {i}: stored {r:?}, recomputed {again:?}")),
            Err(e) => bad.push(format!("row {i}: {e}")),
        }
    }
    bad
}

fn cmd_table(g: &Global, a: &TableArgs, forced: Option<TableKind>) -> Result<Output> {
    if let Some(path) = &a.verify {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let t = Table::parse(&text)?;
        let failures = verify_table(&t);
        return Ok(Output::Verified { rows: t.rows.len(), failures });
    }
    let kind = forced.or(a.kind).ok_or_else(|| Error::Parse("table kind required".into()))?;
    Ok(Output::Table(build_table(g, a, kind)?))
}
