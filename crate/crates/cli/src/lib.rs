//! Command-line front end for `posroot`.
//!
//! [`run`] executes one parsed [`RunConfig`] and reports the exit status and
//! files written, so tests can drive it without spawning a process.

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use posroot::catalog::{kronecker_character, phi_nonneg_scan, ScanConfig};
use posroot::criterion::{
    adversarial_run, adversarial_statistics, certify_derivative, certify_moment,
    certify_shifted_even, emit_report, explicit_p_formulas, power_sums, report, AdversarialSpec,
    Defect, DrawKind,
};
use posroot::scalars::parse_rational;
use posroot::zeros::{
    bessel_zeros, bundled_riemann_zeros, lambda_bound, load_zero_table,
    partial_power_sum_with_tail, rho_bound, TailModel,
};
use posroot::{
    CertificateReport, CertifyConfig, FunctionKind, FunctionSpec, LambdaPolicy, Outcome, Params,
    QuadConfig, Rational, ReportFormat, RhoPolicy, Values,
};

/// Exit status for errors of any kind.
pub const EXIT_ERROR: i32 = 1;

/// Invalid command-line configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config_err(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

#[derive(Debug, Clone, Parser, Serialize)]
#[command(
    name = "posroot",
    version,
    about = "Bounded positivity certificates for zeros of entire functions"
)]
pub struct RunConfig {
    #[command(subcommand)]
    #[serde(flatten)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Run a bounded certificate and write a report.
    Certify(CertifyArgs),
    /// Even moments b_0, b_2, ... of the integral representation.
    Moments(MomentsArgs),
    /// Power sums p_1..p_N of the reduced zeros.
    Powersums(PowerSumsArgs),
    /// Grid check that the kernel phi(t, chi) is nonnegative.
    ScanPhi(ScanArgs),
    /// Zero tables, bounds and partial power sums.
    Zeros(ZerosArgs),
    /// Planted-defect experiments.
    Adversarial(AdversarialArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FunctionArgs {
    /// sinc, bessel, qbessel, ramanujan-aq, airy, bessel-k, riemann-xi, dirichlet-xi
    #[arg(long)]
    pub function: String,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Overrides t = pi^2 for sinc.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Fundamental discriminant D of the character kronecker(D).
    #[arg(long, allow_negative_numbers = true)]
    pub character: Option<i64>,
    /// exact, symbolic or float; default depends on the function.
    #[arg(long)]
    pub coeff_mode: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PrecisionArgs {
    /// Working precision in bits.
    #[arg(long, env = "POSROOT_PRECISION_BITS", default_value_t = 256)]
    pub precision: u32,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QuadArgs {
    /// Quadrature truncation point; chosen automatically if absent.
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long, default_value_t = 12)]
    pub quad_levels: u32,
    #[arg(long, default_value_t = 100_000)]
    pub series_max: usize,
}

impl QuadArgs {
    fn config(&self) -> QuadConfig {
        QuadConfig {
            t_max: self.t_max,
            levels: self.quad_levels,
            series_max: self.series_max,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Report path; stdout if absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    Json,
    Csv,
    Both,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Both => ReportFormat::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Moment,
    Derivative,
    ShiftedEven,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CertifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub function: FunctionArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Moment)]
    pub mode: ModeArg,
    /// Grid bound B: cells with j + k <= B.
    #[arg(long, default_value_t = 16, allow_negative_numbers = true)]
    pub grid: i64,
    #[command(flatten)]
    #[serde(flatten)]
    pub precision: PrecisionArgs,
    /// Cap for the automatic precision doubling.
    #[arg(long, default_value_t = 1024)]
    pub max_precision: u32,
    /// zero-table, power-sum, or a positive rational.
    #[arg(long)]
    pub lambda: Option<String>,
    /// zero-table, power-sum, or a positive rational.
    #[arg(long)]
    pub rho: Option<String>,
    /// Shift c for the shifted-even mode.
    #[arg(long, default_value = "1")]
    pub shift: String,
    /// Zero table file (one ordinate per line) for riemann-xi.
    #[arg(long)]
    pub zeros: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub hysteresis: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub quad: QuadArgs,
    #[arg(long, default_value_t = 10_000)]
    pub scan_points: usize,
    /// Copied into the report verbatim; omitted by default so reports are repeatable.
    #[arg(long)]
    pub timestamp: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MomentsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub function: FunctionArgs,
    /// Highest index n of b_(2n).
    #[arg(long, default_value_t = 8)]
    pub orders: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub precision: PrecisionArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub quad: QuadArgs,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PowerSumsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub function: FunctionArgs,
    /// Highest index N of p_N.
    #[arg(long, default_value_t = 8)]
    pub orders: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub precision: PrecisionArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub quad: QuadArgs,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScanArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub character: i64,
    #[arg(long, default_value_t = 6.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 10_000)]
    pub points: usize,
    #[arg(long, default_value_t = 128)]
    pub precision: u32,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ZerosArgs {
    /// riemann-xi or bessel.
    #[arg(long)]
    pub function: String,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    /// Zero table file for riemann-xi; the bundled table otherwise.
    #[arg(long)]
    pub zeros: Option<PathBuf>,
    /// Number of zeros to read or compute.
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    /// Orders n of sum z^(-2n).
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    pub power: Vec<u32>,
    #[arg(long, default_value_t = 128)]
    pub precision: u32,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DrawArg {
    NegativeReal,
    ConjugatePair,
    Control,
}

impl From<DrawArg> for DrawKind {
    fn from(d: DrawArg) -> Self {
        match d {
            DrawArg::NegativeReal => DrawKind::NegativeReal,
            DrawArg::ConjugatePair => DrawKind::ConjugatePair,
            DrawArg::Control => DrawKind::Control,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AdversarialArgs {
    /// Real defects (rationals <= 0); a single run instead of seeded draws.
    #[arg(long, allow_hyphen_values = true)]
    pub defect: Vec<String>,
    /// Conjugate pairs `re,im`; a single run instead of seeded draws.
    #[arg(long, allow_hyphen_values = true)]
    pub pair: Vec<String>,
    #[arg(long, value_enum, default_value_t = DrawArg::NegativeReal)]
    pub kind: DrawArg,
    #[arg(long, default_value_t = 100)]
    pub draws: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 16, allow_negative_numbers = true)]
    pub grid: i64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

/// Result of one [`run`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub files: Vec<PathBuf>,
    /// Text for stdout: the report when no output path is given, otherwise
    /// a summary line.
    pub stdout: String,
}

fn rational_arg(name: &str, v: &Option<String>) -> Result<Option<Rational>> {
    v.as_deref()
        .map(|s| {
            parse_rational(s)
                .map_err(|_| config_err(format!("--{name} expects a rational, got '{s}'")))
        })
        .transpose()
}

fn grid_bound(g: i64) -> Result<usize> {
    usize::try_from(g).map_err(|_| config_err(format!("grid bound must be nonnegative, got {g}")))
}

impl FunctionArgs {
    pub fn spec(&self) -> Result<FunctionSpec> {
        let kind: FunctionKind = self
            .function
            .parse()
            .map_err(|e: posroot::Error| config_err(e.to_string()))?;
        let character = self.character.map(kronecker_character).transpose()?;
        let params = Params {
            nu: rational_arg("nu", &self.nu)?,
            q: rational_arg("q", &self.q)?,
            a: rational_arg("a", &self.a)?,
            t: rational_arg("t", &self.t)?,
            character,
        };
        let mode = match &self.coeff_mode {
            Some(m) => m
                .parse()
                .map_err(|e: posroot::Error| config_err(e.to_string()))?,
            None => FunctionSpec::default_mode(kind, &params),
        };
        Ok(FunctionSpec::new(kind, params, mode)?)
    }
}

fn lambda_policy(arg: &Option<String>, kind: FunctionKind) -> Result<LambdaPolicy> {
    Ok(match arg.as_deref() {
        None => LambdaPolicy::default_for(kind),
        Some("zero-table") => LambdaPolicy::ZeroTable,
        Some("power-sum") => LambdaPolicy::PowerSumBound,
        Some(s) => LambdaPolicy::fixed(
            &parse_rational(s).map_err(|_| config_err(format!("bad --lambda '{s}'")))?,
        ),
    })
}

fn rho_policy(arg: &Option<String>, kind: FunctionKind) -> Result<RhoPolicy> {
    Ok(match arg.as_deref() {
        None => RhoPolicy::default_for(kind),
        Some("zero-table") => RhoPolicy::ZeroTable,
        Some("power-sum") => RhoPolicy::PowerSumBound,
        Some(s) => RhoPolicy::fixed(
            &parse_rational(s).map_err(|_| config_err(format!("bad --rho '{s}'")))?,
        ),
    })
}

/// Pretty JSON through `Value`, so keys are sorted.
fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(&serde_json::to_value(v).expect("serializable"))
        .expect("value");
    s.push('\n');
    s
}

fn write_or_print(text: String, path: &Option<PathBuf>, exit_code: i32) -> Result<RunOutcome> {
    match path {
        Some(p) => {
            std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
            Ok(RunOutcome {
                exit_code,
                files: vec![p.clone()],
                stdout: format!("wrote {}\n", p.display()),
            })
        }
        None => Ok(RunOutcome {
            exit_code,
            files: Vec::new(),
            stdout: text,
        }),
    }
}

fn emit(report: &CertificateReport, out: &OutputArgs) -> Result<RunOutcome> {
    let exit_code = report.verdict.exit_code();
    match &out.output {
        Some(p) => {
            let files = emit_report(report, out.format.into(), p)
                .with_context(|| format!("writing {}", p.display()))?;
            let names: Vec<String> = files.iter().map(|f| f.display().to_string()).collect();
            let stdout = format!("{}\nwrote {}\n", report.statement, names.join(", "));
            Ok(RunOutcome {
                exit_code,
                files,
                stdout,
            })
        }
        None => {
            let stdout = match out.format {
                FormatArg::Csv => report.to_csv(),
                FormatArg::Json => report.to_json(),
                FormatArg::Both => format!("{}{}", report.to_json(), report.to_csv()),
            };
            Ok(RunOutcome {
                exit_code,
                files: Vec::new(),
                stdout,
            })
        }
    }
}

/// Executes one command.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let echo = serde_json::to_value(config).expect("serializable");
    match &config.command {
        Command::Certify(a) => certify(a, echo),
        Command::Moments(a) => moments(a, echo),
        Command::Powersums(a) => powersums(a, echo),
        Command::ScanPhi(a) => scan_phi(a, echo),
        Command::Zeros(a) => zeros(a, echo),
        Command::Adversarial(a) => adversarial(a, echo),
    }
}

fn certify(a: &CertifyArgs, echo: Value) -> Result<RunOutcome> {
    let grid = grid_bound(a.grid)?;
    let spec = a.function.spec()?;
    let prec = a.precision.precision;
    if prec < 64 {
        return Err(config_err(format!(
            "precision must be at least 64 bits, got {prec}"
        )));
    }
    let zeros = a
        .zeros
        .as_deref()
        .map(|p| load_zero_table(p, Some(1000), prec))
        .transpose()?;
    let cfg = CertifyConfig {
        grid_bound: grid,
        precision: prec,
        max_precision: a.max_precision.max(prec),
        hysteresis: a.hysteresis,
        quad: a.quad.config(),
        zeros,
        scan: ScanConfig {
            points: a.scan_points,
            ..ScanConfig::default()
        },
        timestamp: a.timestamp.clone(),
        echo: echo.clone(),
    };
    let result = match a.mode {
        ModeArg::Moment => certify_moment(&spec, &cfg, &lambda_policy(&a.lambda, spec.kind)?),
        ModeArg::Derivative => certify_derivative(&spec, &cfg, &rho_policy(&a.rho, spec.kind)?),
        ModeArg::ShiftedEven => {
            let c = parse_rational(&a.shift)
                .map_err(|_| config_err(format!("bad --shift '{}'", a.shift)))?;
            let policy = rho_policy(
                &a.rho.clone().or_else(|| Some("power-sum".into())),
                spec.kind,
            )?;
            certify_shifted_even(&spec, &c, &cfg, &policy)
        }
    };
    match result {
        Ok(report) => emit(&report, &a.output),
        Err(e) => {
            // the error is recorded in the report file as well as returned
            if let Some(p) = &a.output.output {
                let body = json!({"schema": report::SCHEMA_VERSION, "function": spec.id(), "error": e.to_string(), "config": echo});
                std::fs::write(p, to_json(&body))
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            Err(e.into())
        }
    }
}

fn moments(a: &MomentsArgs, echo: Value) -> Result<RunOutcome> {
    let spec = a.function.spec()?;
    if !spec.kind.is_moment_kind() {
        return Err(config_err(format!(
            "{} has no moment representation",
            spec.kind
        )));
    }
    let prec = a.precision.precision;
    let c = spec.coefficients(a.orders, prec, &a.quad.config())?;
    let m = c.moments.as_ref().expect("moment kind");
    let rows: Vec<Value> = m
        .moments
        .iter()
        .zip(&m.errors)
        .enumerate()
        .map(|(n, (b, e))| json!({"order": 2 * n, "value": b.to_decimal(report::REPORT_DIGITS), "error_estimate": e.to_decimal(3)}))
        .collect();
    let e = match &c.values {
        Values::Float(v) => v
            .iter()
            .map(|x| x.to_decimal(report::REPORT_DIGITS))
            .collect::<Vec<_>>(),
        _ => unreachable!("moment kinds are float"),
    };
    let body = json!({
        "schema": report::SCHEMA_VERSION,
        "function": spec.id(),
        "precision_bits": prec,
        "moments": rows,
        "elementary": e,
        "quadrature": m.meta,
        "notes": c.notes,
        "config": echo,
    });
    write_or_print(to_json(&body), &a.output, 0)
}

fn powersums(a: &PowerSumsArgs, echo: Value) -> Result<RunOutcome> {
    let spec = a.function.spec()?;
    if a.orders == 0 {
        return Err(config_err("orders must be at least 1"));
    }
    let prec = a.precision.precision;
    let cfg = CertifyConfig {
        precision: prec,
        quad: a.quad.config(),
        echo: echo.clone(),
        ..CertifyConfig::default()
    };
    let data = power_sums(&spec, a.orders, prec, &cfg)?;
    let p: Vec<String> = data
        .p
        .clone()
        .into_scalars()
        .iter()
        .map(report::render)
        .collect();
    let mut body = json!({
        "schema": report::SCHEMA_VERSION,
        "function": spec.id(),
        "coefficient_mode": spec.mode,
        "precision_bits": prec,
        "power_sums": p,
        "metadata": data.metadata,
        "config": echo,
    });
    if let Some(v) = explicit_check(&spec, a.orders, prec, &cfg)? {
        body["explicit_formulas"] = v;
    }
    write_or_print(to_json(&body), &a.output, 0)
}

/// For moment kinds, `p_1..p_4` from the hard-coded formulas in `b`.
fn explicit_check(
    spec: &FunctionSpec,
    orders: usize,
    prec: u32,
    cfg: &CertifyConfig,
) -> Result<Option<Value>> {
    if !spec.kind.is_moment_kind() {
        return Ok(None);
    }
    let k = orders.min(4);
    let c = spec.coefficients(k, prec, &cfg.quad)?;
    let b = &c.moments.as_ref().expect("moment kind").moments;
    let p = explicit_p_formulas(b, k)?;
    Ok(Some(json!(p
        .values()
        .iter()
        .map(|x| x.to_decimal(report::REPORT_DIGITS))
        .collect::<Vec<_>>())))
}

fn scan_phi(a: &ScanArgs, echo: Value) -> Result<RunOutcome> {
    if a.points < 2 || a.t_max.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(config_err("scan needs at least 2 points and t_max > 0"));
    }
    let chi = kronecker_character(a.character)?;
    let r = phi_nonneg_scan(
        &chi,
        &ScanConfig {
            t_max: a.t_max,
            points: a.points,
            precision: a.precision,
        },
    )?;
    let code = if r.pass {
        Outcome::Pass.exit_code()
    } else {
        Outcome::Fail.exit_code()
    };
    let body = json!({"schema": report::SCHEMA_VERSION, "scan": r, "config": echo});
    write_or_print(to_json(&body), &a.output, code)
}

fn zeros(a: &ZerosArgs, echo: Value) -> Result<RunOutcome> {
    let kind: FunctionKind = a
        .function
        .parse()
        .map_err(|e: posroot::Error| config_err(e.to_string()))?;
    let (table, model) = match kind {
        FunctionKind::RiemannXi => {
            let t = match &a.zeros {
                Some(p) => load_zero_table(Path::new(p), Some(a.count), a.precision)?,
                None => bundled_riemann_zeros(Some(a.count), a.precision)?,
            };
            (t, TailModel::Riemann)
        }
        FunctionKind::Bessel => {
            let nu =
                rational_arg("nu", &a.nu)?.ok_or_else(|| config_err("bessel zeros need --nu"))?;
            (bessel_zeros(&nu, a.count, a.precision)?, TailModel::Bessel)
        }
        other => return Err(config_err(format!("no zero table for {other}"))),
    };
    let mut sums = Vec::new();
    for &n in &a.power {
        let (value, tail) = partial_power_sum_with_tail(&table, n, model)?;
        sums.push(json!({"n": n, "value": value.to_decimal(report::REPORT_DIGITS), "tail_estimate": tail.to_decimal(3)}));
    }
    let body = json!({
        "schema": report::SCHEMA_VERSION,
        "function": table.function,
        "source": table.source,
        "count": table.len(),
        "ordinates": table.ordinates.iter().map(|z| z.to_decimal(report::REPORT_DIGITS)).collect::<Vec<_>>(),
        "lambda_bound": lambda_bound(&table).to_decimal(report::REPORT_DIGITS),
        "rho_bound": rho_bound(&table).to_decimal(report::REPORT_DIGITS),
        "power_sums": sums,
        "tail_model": model,
        "config": echo,
    });
    write_or_print(to_json(&body), &a.output, 0)
}

fn parse_pair(s: &str) -> Result<Defect> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| config_err(format!("--pair expects 're,im', got '{s}'")))?;
    let re = parse_rational(re.trim()).map_err(|_| config_err(format!("bad real part '{re}'")))?;
    let im =
        parse_rational(im.trim()).map_err(|_| config_err(format!("bad imaginary part '{im}'")))?;
    Ok(Defect::ConjugatePair {
        re,
        im: im.abs_ref().into(),
        multiplicity: 1,
    })
}

fn adversarial(a: &AdversarialArgs, echo: Value) -> Result<RunOutcome> {
    let grid = grid_bound(a.grid)?;
    let cfg = CertifyConfig {
        grid_bound: grid,
        echo: echo.clone(),
        ..CertifyConfig::default()
    };
    if !a.defect.is_empty() || !a.pair.is_empty() {
        let mut defects = Vec::new();
        for d in &a.defect {
            let value = parse_rational(d).map_err(|_| config_err(format!("bad --defect '{d}'")))?;
            defects.push(Defect::Real {
                value,
                multiplicity: 1,
            });
        }
        for p in &a.pair {
            defects.push(parse_pair(p)?);
        }
        let spec = AdversarialSpec::new(defects).map_err(|e| config_err(e.to_string()))?;
        let (report, _) = adversarial_run(&spec, &cfg)?;
        return emit(&report, &a.output);
    }
    let stats = adversarial_statistics(a.kind.into(), a.seed, a.draws, &cfg)?;
    let body = json!({"schema": report::SCHEMA_VERSION, "statistics": stats, "config": echo});
    write_or_print(to_json(&body), &a.output.output, 0)
}
