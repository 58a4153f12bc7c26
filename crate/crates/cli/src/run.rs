//! Command dispatch.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 resonance, 4 verification
//! failure, 5 nonterminating series.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use projquant::equivariance::{check_equivariance, sl_generators};
use projquant::quantize::{hypergeom_apply, normal_order, Coefficients, SeriesCoefficients};
use projquant::sphere::{sphere_table, verify_geodesic, verify_length_element, verify_power_identity};
use projquant::{BaseTable, Error, Family, Monomial, Poly, QContext, RadicalSymbol, Rational, Scalar};
use serde::Serialize;

use crate::json::{emit_json, operator_to_json, symbol_to_json, OperatorJson, SymbolJson};
use crate::parse::{parse_symbol, ParseError};
use crate::random;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESONANCE: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;
pub const EXIT_NONTERMINATING: i32 = 5;

/// How derivatives are attached to momenta when symbols become operators.
pub const NORMAL_ORDERING: &str = "p_i -> nu*d_i, coefficients on the left";

#[derive(Debug, Parser)]
#[command(name = "projquant", version, about = "Exact projectively equivariant quantization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|_| format!("'{s}' is not a rational such as 3 or -1/2"))
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Dimension of the projective space.
    #[arg(long)]
    pub n: Option<usize>,
    /// Weight of the source densities.
    #[arg(long, default_value = "1/2", value_parser = rational_arg)]
    pub lambda: Rational,
    /// Weight of the target densities.
    #[arg(long, default_value = "1/2", value_parser = rational_arg)]
    pub mu: Rational,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ExprArgs {
    #[command(flatten)]
    pub common: Common,
    /// Symbol in the surface syntax, e.g. "x1*p1 + 1/2*nu".
    #[arg(long)]
    pub expr: String,
    /// Keep only the terms up to this power of the divergence.
    #[arg(long)]
    pub truncation: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply the quantization map and print the resulting symbol.
    Quantize(ExprArgs),
    /// Apply the symbol map (inverse of quantize).
    Symbolize(ExprArgs),
    /// Quantize and print the normal-ordered differential operator.
    Operator(ExprArgs),
    /// Print the coefficient tables of both maps at ξ-degree k.
    Coeffs {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: u32,
    },
    /// Check equivariance under every sl(n+1) generator.
    CheckEquivariance {
        #[command(flatten)]
        common: Common,
        /// Check this symbol only instead of the monomial suite.
        #[arg(long)]
        expr: Option<String>,
        /// Bound on the x- and ξ-degree of the monomial suite.
        #[arg(long, default_value_t = 2)]
        degree: u32,
        /// Number of additional random symbols.
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Worked examples on the round sphere.
    #[command(subcommand)]
    Example(Example),
}

#[derive(Debug, Subcommand)]
pub enum Example {
    /// Quantize the weighted geodesic Hamiltonian and compare with the Laplacian.
    Geodesic(Common),
    /// Check the divergence of H^alpha.
    Power {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        alpha: Rational,
    },
    /// Check that H^alpha is fixed by quantization, alpha = (1-n)/4 by default.
    LengthElement {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        alpha: Option<Rational>,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Parse(ParseError),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resonance(_) => EXIT_RESONANCE,
        Error::NonterminatingSeries { .. } => EXIT_NONTERMINATING,
        Error::DimensionMismatch { .. }
        | Error::IndexOutOfRange { .. }
        | Error::BaseTableMismatch
        | Error::InvalidBase { .. }
        | Error::InvalidContext(_)
        | Error::NotOperatorSymbol(_)
        | Error::DegenerateCurvature(_) => EXIT_USAGE,
    }
}

#[derive(Serialize)]
struct WitnessJson {
    family: String,
    k: String,
    m: usize,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
}

#[derive(Serialize)]
struct ErrorReport {
    status: &'static str,
    error: ErrorBody,
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Parse(_) => EXIT_USAGE,
            Failure::Library(e) => exit_code(e),
        }
    }

    fn body(&self) -> ErrorBody {
        let (kind, column, witness) = match self {
            Failure::Usage(_) => ("usage", None, None),
            Failure::Parse(e) => ("parse", Some(e.column()), None),
            Failure::Library(Error::Resonance(w)) => (
                "resonance",
                None,
                Some(WitnessJson {
                    family: w.family.to_string(),
                    k: w.degree.to_string(),
                    m: w.order,
                }),
            ),
            Failure::Library(Error::NonterminatingSeries { .. }) => ("nonterminating", None, None),
            Failure::Library(Error::DegenerateCurvature(_)) => ("degenerate-curvature", None, None),
            Failure::Library(_) => ("invalid", None, None),
        };
        let message = match self {
            Failure::Usage(m) => m.clone(),
            Failure::Parse(e) => e.to_string(),
            Failure::Library(e) => e.to_string(),
        };
        ErrorBody {
            kind,
            message,
            column,
            witness,
        }
    }

    fn outcome(&self, format: Format) -> Outcome {
        let body = self.body();
        match format {
            Format::Json => Outcome {
                code: self.code(),
                stdout: emit_json(&ErrorReport {
                    status: "ERROR",
                    error: body,
                }),
                stderr: String::new(),
            },
            Format::Text => Outcome {
                code: self.code(),
                stdout: String::new(),
                stderr: format!("error: {}\n", body.message),
            },
        }
    }
}

/// Rendered output of a successful command.
struct Report {
    passed: bool,
    text: String,
    json: String,
}

impl Report {
    fn new<T: Serialize>(passed: bool, text: String, json: &T) -> Self {
        Report {
            passed,
            text,
            json: emit_json(json),
        }
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn context(common: &Common, default_n: usize) -> Result<(QContext, Arc<BaseTable>), Failure> {
    let n = common.n.unwrap_or(default_n);
    let ctx = QContext::new(n, common.lambda.clone(), common.mu.clone())?;
    Ok((ctx, sphere_table(n)?))
}

fn format_of(command: &Command) -> Format {
    match command {
        Command::Quantize(a) | Command::Symbolize(a) | Command::Operator(a) => a.common.format,
        Command::Coeffs { common, .. } | Command::CheckEquivariance { common, .. } => common.format,
        Command::Example(Example::Geodesic(common))
        | Command::Example(Example::Power { common, .. })
        | Command::Example(Example::LengthElement { common, .. }) => common.format,
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let json = args
                .windows(2)
                .any(|w| w[0] == "--format" && w[1] == "json");
            if code == EXIT_USAGE && json {
                return Failure::Usage(e.kind().to_string()).outcome(Format::Json);
            }
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let format = format_of(&cli.command);
    match dispatch(&cli.command) {
        Ok(report) => Outcome {
            code: if report.passed { EXIT_OK } else { EXIT_VERIFICATION },
            stdout: match format {
                Format::Text => report.text,
                Format::Json => report.json,
            },
            stderr: String::new(),
        },
        Err(f) => f.outcome(format),
    }
}

fn dispatch(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Quantize(a) => apply(a, Family::Quantization, "quantize"),
        Command::Symbolize(a) => apply(a, Family::Symbol, "symbolize"),
        Command::Operator(a) => operator(a),
        Command::Coeffs { common, k } => coeffs(common, *k),
        Command::CheckEquivariance {
            common,
            expr,
            degree,
            trials,
            seed,
        } => equivariance(common, expr.as_deref(), *degree, *trials, *seed),
        Command::Example(Example::Geodesic(common)) => geodesic(common),
        Command::Example(Example::Power { common, alpha }) => power(common, alpha),
        Command::Example(Example::LengthElement { common, alpha }) => length_element(common, alpha.as_ref()),
    }
}

#[derive(Serialize)]
struct SymbolReport {
    command: &'static str,
    n: usize,
    lambda: String,
    mu: String,
    input: String,
    result: String,
    truncated: bool,
    symbol: SymbolJson,
}

fn apply(a: &ExprArgs, family: Family, command: &'static str) -> Result<Report, Failure> {
    let (ctx, table) = context(&a.common, 1)?;
    let s = parse_symbol(&a.expr, &table)?;
    let series = hypergeom_apply(&ctx, family, &s, a.truncation)?;
    let result = series.value.to_string();
    let mut text = format!("{result}\n");
    if series.truncated {
        text.push_str("(truncated)\n");
    }
    let json = SymbolReport {
        command,
        n: ctx.n(),
        lambda: ctx.lambda().to_string(),
        mu: ctx.mu().to_string(),
        input: s.to_string(),
        result,
        truncated: series.truncated,
        symbol: symbol_to_json(&series.value),
    };
    Ok(Report::new(true, text, &json))
}

#[derive(Serialize)]
struct OperatorReport {
    command: &'static str,
    n: usize,
    lambda: String,
    mu: String,
    input: String,
    normal_ordering: &'static str,
    result: String,
    operator: OperatorJson,
}

fn operator(a: &ExprArgs) -> Result<Report, Failure> {
    let (ctx, table) = context(&a.common, 1)?;
    let s = parse_symbol(&a.expr, &table)?;
    let series = hypergeom_apply(&ctx, Family::Quantization, &s, a.truncation)?;
    let op = normal_order(&series.value)?;
    let json = OperatorReport {
        command: "operator",
        n: ctx.n(),
        lambda: ctx.lambda().to_string(),
        mu: ctx.mu().to_string(),
        input: s.to_string(),
        normal_ordering: NORMAL_ORDERING,
        result: op.to_string(),
        operator: operator_to_json(&op),
    };
    Ok(Report::new(true, format!("{op}\n"), &json))
}

#[derive(Serialize)]
struct CoeffRow {
    m: u32,
    q: String,
    s: String,
}

#[derive(Serialize)]
struct CoeffReport {
    n: usize,
    lambda: String,
    mu: String,
    k: u32,
    resonant: bool,
    entries: Vec<CoeffRow>,
}

fn coeffs(common: &Common, k: u32) -> Result<Report, Failure> {
    let (ctx, _) = context(common, 1)?;
    let q = SeriesCoefficients::quantization(&ctx);
    let s = SeriesCoefficients::symbol(&ctx);
    let degree = Rational::from_integer(k.into());
    let mut entries = Vec::new();
    for m in 0..=k {
        entries.push(CoeffRow {
            m,
            q: q.coefficient(&degree, m as usize)?.to_string(),
            s: s.coefficient(&degree, m as usize)?.to_string(),
        });
    }
    let mut text = format!("k = {k}\nm  C_m^k  C~_m^k\n");
    for r in &entries {
        let _ = writeln!(text, "{}  {}  {}", r.m, r.q, r.s);
    }
    let json = CoeffReport {
        n: ctx.n(),
        lambda: ctx.lambda().to_string(),
        mu: ctx.mu().to_string(),
        k,
        resonant: ctx.is_resonant(),
        entries,
    };
    Ok(Report::new(true, text, &json))
}

/// Every `x^a ξ^b` with `|a| ≤ degree` and `|b| ≤ degree`.
pub fn monomial_suite(table: &Arc<BaseTable>, degree: u32) -> Vec<RadicalSymbol> {
    let n = table.n();
    let mut halves = vec![vec![]];
    for _ in 0..n {
        halves = halves
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=degree - used).map(move |k| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for a in &halves {
        for b in &halves {
            let mono = Monomial::new(a.iter().chain(b).copied().collect());
            let p = Poly::from_term(mono, Scalar::one());
            out.push(RadicalSymbol::from_poly(table, p).expect("table dimension"));
        }
    }
    out
}

#[derive(Serialize)]
struct EquivarianceWitness {
    generator: String,
    symbol: String,
    discrepancy: String,
    operator: OperatorJson,
}

#[derive(Serialize)]
struct EquivarianceReport {
    status: &'static str,
    witness: Option<EquivarianceWitness>,
    n: usize,
    lambda: String,
    mu: String,
    normal_ordering: &'static str,
    generators: usize,
    symbols: usize,
    checks: usize,
    seed: u64,
}

fn equivariance(
    common: &Common,
    expr: Option<&str>,
    degree: u32,
    trials: usize,
    seed: u64,
) -> Result<Report, Failure> {
    let (ctx, table) = context(common, 1)?;
    let symbols = match expr {
        Some(text) => vec![parse_symbol(text, &table)?],
        None => {
            let mut v = monomial_suite(&table, degree);
            let mut rng = random::rng(seed);
            v.extend((0..trials).map(|_| random::polynomial_symbol(&mut rng, &table, degree)));
            v
        }
    };
    let generators = sl_generators(ctx.n());
    let mut witness = None;
    let mut checks = 0;
    'outer: for s in &symbols {
        for g in &generators {
            checks += 1;
            let r = check_equivariance(&ctx, s, g)?;
            if !r.passed {
                witness = Some(EquivarianceWitness {
                    generator: g.to_string(),
                    symbol: s.to_string(),
                    discrepancy: r.discrepancy.to_string(),
                    operator: operator_to_json(&r.discrepancy),
                });
                break 'outer;
            }
        }
    }
    let passed = witness.is_none();
    let mut text = format!(
        "status: {}\nchecks: {checks} ({} generators, {} symbols)\n",
        status(passed),
        generators.len(),
        symbols.len()
    );
    if let Some(w) = &witness {
        let _ = writeln!(text, "generator: {}\nsymbol: {}\ndiscrepancy: {}", w.generator, w.symbol, w.discrepancy);
    }
    let json = EquivarianceReport {
        status: status(passed),
        witness,
        n: ctx.n(),
        lambda: ctx.lambda().to_string(),
        mu: ctx.mu().to_string(),
        normal_ordering: NORMAL_ORDERING,
        generators: generators.len(),
        symbols: symbols.len(),
        checks,
        seed,
    };
    Ok(Report::new(passed, text, &json))
}

#[derive(Serialize)]
struct GeodesicJson {
    status: &'static str,
    witness: Option<OperatorJson>,
    n: usize,
    lambda: String,
    mu: String,
    delta: String,
    #[serde(rename = "C")]
    c: String,
    #[serde(rename = "R")]
    r: String,
    #[serde(rename = "CR")]
    cr: String,
    normal_ordering: &'static str,
    operator: String,
}

fn geodesic(common: &Common) -> Result<Report, Failure> {
    let (ctx, _) = context(common, 2)?;
    let report = verify_geodesic(&ctx)?;
    let cr = &report.c * &report.r;
    let mut text = format!(
        "status: {}\nn: {}\nlambda: {}\nmu: {}\nC: {}\nR: {}\nC*R: {}\nnormal ordering: {}\nQ(H_delta) = {}\n",
        status(report.passed),
        ctx.n(),
        ctx.lambda(),
        ctx.mu(),
        report.c,
        report.r,
        cr,
        NORMAL_ORDERING,
        report.lhs
    );
    if !report.passed {
        let _ = writeln!(text, "difference: {}", report.difference);
    }
    let json = GeodesicJson {
        status: status(report.passed),
        witness: (!report.passed).then(|| operator_to_json(&report.difference)),
        n: ctx.n(),
        lambda: ctx.lambda().to_string(),
        mu: ctx.mu().to_string(),
        delta: ctx.delta().to_string(),
        c: report.c.to_string(),
        r: report.r.to_string(),
        cr: cr.to_string(),
        normal_ordering: NORMAL_ORDERING,
        operator: report.lhs.to_string(),
    };
    Ok(Report::new(report.passed, text, &json))
}

#[derive(Serialize)]
struct PowerJson {
    status: &'static str,
    witness: Option<String>,
    n: usize,
    alpha: String,
    coefficient: String,
    annihilated: bool,
    divergence: String,
}

fn power(common: &Common, alpha: &Rational) -> Result<Report, Failure> {
    let n = common.n.unwrap_or(1);
    let report = verify_power_identity(n, alpha)?;
    let divergence = report.divergence.to_string();
    let text = format!(
        "status: {}\nn: {n}\nalpha: {alpha}\ncoefficient: {}\nD(H^alpha) = {divergence}\n",
        status(report.passed),
        report.coefficient
    );
    let json = PowerJson {
        status: status(report.passed),
        witness: (!report.passed).then(|| divergence.clone()),
        n,
        alpha: alpha.to_string(),
        coefficient: report.coefficient.to_string(),
        annihilated: report.annihilated,
        divergence,
    };
    Ok(Report::new(report.passed, text, &json))
}

#[derive(Serialize)]
struct FixedPointJson {
    status: &'static str,
    witness: Option<String>,
    n: usize,
    lambda: String,
    mu: String,
    alpha: String,
    value: String,
}

fn length_element(common: &Common, alpha: Option<&Rational>) -> Result<Report, Failure> {
    let (ctx, _) = context(common, 3)?;
    let alpha = alpha
        .cloned()
        .unwrap_or_else(|| Rational::new((1 - ctx.n() as i64).into(), 4.into()));
    let report = verify_length_element(&ctx, &alpha)?;
    let correction = report.correction.to_string();
    let mut text = format!(
        "status: {}\nn: {}\nalpha: {alpha}\nQ(H^alpha) = {}\n",
        status(report.passed),
        ctx.n(),
        report.value
    );
    if !report.passed {
        let _ = writeln!(text, "first correction: {correction}");
    }
    let json = FixedPointJson {
        status: status(report.passed),
        witness: (!report.passed).then_some(correction),
        n: ctx.n(),
        lambda: ctx.lambda().to_string(),
        mu: ctx.mu().to_string(),
        alpha: alpha.to_string(),
        value: report.value.to_string(),
    };
    Ok(Report::new(report.passed, text, &json))
}
