//! End-to-end certification: catalog coefficients, power sums, moment or
//! derivative tables, and a [`CertificateReport`].

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{
    airy_coeffs_symbolic, airy_generators, phi_nonneg_scan, CoefficientMode, Coefficients,
    FunctionKind, FunctionSpec, QuadConfig, ScanConfig,
};
use crate::error::{Error, Result};
use crate::hausdorff::{derivative_form_table, difference_table, moment_criterion, MomentVector};
use crate::scalars::{
    factorial, format_rational, BigFloat, Domain, Field, Rational, RationalFunction, Scalar,
    Signed, TolerancePolicy, Values,
};
use crate::series::{
    even_sqrt_reduce, power_sums_from_log_derivative, taylor_shift, TruncatedSeries,
};
use crate::symfun::{power_sums_from_elementary, ElementarySequence, PowerSumSequence};
use crate::zeros::{bessel_zeros, bundled_riemann_zeros, lambda_bound, rho_bound, ZeroTable};

pub mod adversarial;
pub mod explicit;
pub mod report;

pub use adversarial::{
    adversarial_run, adversarial_statistics, draw_spec, AdversarialSpec, AdversarialStats, Defect,
    DrawKind,
};
pub use explicit::{explicit_p_formulas, p_from_b_closed_form, p_from_b_recurrence};
pub use report::{
    emit_report, BoundValue, CellRecord, CellRef, CertMode, CertificateReport, FunctionInfo,
    Outcome, ReportFormat,
};

/// How `lambda >= sup |lambda_n|` is chosen for the moment form.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaPolicy {
    Fixed(String),
    /// `(1 + 2^-10)/z_1^2` from a zero table.
    ZeroTable,
    /// `p_K^(1/K) (1 + 2^-10)` for the largest even available `K`.
    PowerSumBound,
}

impl LambdaPolicy {
    pub fn fixed(q: &Rational) -> Self {
        LambdaPolicy::Fixed(format_rational(q))
    }

    pub fn default_for(kind: FunctionKind) -> Self {
        match kind {
            FunctionKind::Sinc => LambdaPolicy::Fixed("1".into()),
            FunctionKind::Bessel | FunctionKind::RiemannXi => LambdaPolicy::ZeroTable,
            _ => LambdaPolicy::PowerSumBound,
        }
    }
}

/// How `0 < rho <= inf z_k` is chosen for the derivative form.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoPolicy {
    Fixed(String),
    /// `z_1^2 (1 - 2^-10)` from a zero table.
    ZeroTable,
    /// `(1 - 2^-10)/p_K^(1/K)`.
    PowerSumBound,
}

impl RhoPolicy {
    pub fn fixed(q: &Rational) -> Self {
        RhoPolicy::Fixed(format_rational(q))
    }

    pub fn default_for(kind: FunctionKind) -> Self {
        match kind {
            FunctionKind::Bessel | FunctionKind::RiemannXi => RhoPolicy::ZeroTable,
            _ => RhoPolicy::PowerSumBound,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CertifyConfig {
    pub grid_bound: usize,
    pub precision: u32,
    /// Cap for the automatic precision doubling on INDETERMINATE.
    pub max_precision: u32,
    pub hysteresis: f64,
    pub quad: QuadConfig,
    /// Replaces the bundled Riemann zero table.
    pub zeros: Option<ZeroTable>,
    pub scan: ScanConfig,
    pub timestamp: Option<String>,
    /// Echo of the caller's configuration, copied into every report.
    pub echo: Value,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            grid_bound: 16,
            precision: 256,
            max_precision: 1024,
            hysteresis: 1.0,
            quad: QuadConfig::default(),
            zeros: None,
            scan: ScanConfig::default(),
            timestamp: None,
            echo: Value::Null,
        }
    }
}

impl CertifyConfig {
    pub fn with_grid(mut self, b: usize) -> Self {
        self.grid_bound = b;
        self
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision = bits;
        self
    }

    fn policy(&self) -> TolerancePolicy {
        TolerancePolicy {
            hysteresis: self.hysteresis,
            ..Default::default()
        }
    }
}

/// `lambda` or `rho` as a float, with the exact rational actually used by
/// exact runs.
#[derive(Debug, Clone)]
pub struct Bound {
    pub float: BigFloat,
    pub exact: Rational,
    pub provenance: String,
}

impl Bound {
    fn from_float(x: BigFloat, provenance: String) -> Result<Self> {
        let exact = x.to_rational().ok_or(Error::NonFinite)?;
        Ok(Bound {
            float: x,
            exact,
            provenance,
        })
    }

    fn from_rational(q: Rational, prec: u32, provenance: String) -> Self {
        Bound {
            float: BigFloat::from_rational(&q, prec),
            exact: q,
            provenance,
        }
    }

    fn to_value(&self, exact_run: bool) -> BoundValue {
        BoundValue {
            value: self.float.to_decimal(report::REPORT_DIGITS),
            exact: exact_run.then(|| format_rational(&self.exact)),
            provenance: self.provenance.clone(),
        }
    }
}

/// Power sums `p_1..p_n` of a catalog entry, with run metadata.
#[derive(Debug, Clone)]
pub struct PowerSumData {
    pub p: Values,
    pub e: Values,
    pub metadata: BTreeMap<String, Value>,
}

fn float_values(v: &Values, prec: u32) -> Result<Vec<BigFloat>> {
    v.clone()
        .into_scalars()
        .iter()
        .map(|s| s.to_bigfloat(prec))
        .collect()
}

fn coefficients_metadata(
    spec: &FunctionSpec,
    c: &Coefficients,
    cfg: &CertifyConfig,
    md: &mut BTreeMap<String, Value>,
) -> Result<()> {
    for (k, v) in &c.notes {
        md.insert(k.clone(), json!(v));
    }
    if let Some(m) = &c.moments {
        md.insert(
            "quadrature".into(),
            serde_json::to_value(&m.meta).expect("serializable"),
        );
        md.insert(
            "moments".into(),
            json!(m
                .moments
                .iter()
                .map(|b| b.to_decimal(report::REPORT_DIGITS))
                .collect::<Vec<_>>()),
        );
        md.insert(
            "moment_errors".into(),
            json!(m.errors.iter().map(|e| e.to_decimal(3)).collect::<Vec<_>>()),
        );
    }
    if spec.kind == FunctionKind::DirichletXi {
        let chi = spec.params.character.as_ref().expect("validated");
        let scan = phi_nonneg_scan(chi, &cfg.scan)?;
        md.insert(
            "phi_scan".into(),
            serde_json::to_value(&scan).expect("serializable"),
        );
    }
    Ok(())
}

/// Coefficients `e_0..e_n` and power sums `p_1..p_n` for `spec`.
pub fn power_sums(
    spec: &FunctionSpec,
    n: usize,
    prec: u32,
    cfg: &CertifyConfig,
) -> Result<PowerSumData> {
    let c = spec.coefficients(n, prec, &cfg.quad)?;
    let mut md = BTreeMap::new();
    coefficients_metadata(spec, &c, cfg, &mut md)?;
    let p = if let Some(sym) = &c.symbolic {
        let e = ElementarySequence::new(sym.clone())?;
        let ps = power_sums_from_elementary(&e, n)?;
        let shown: Vec<String> = ps
            .values()
            .iter()
            .take(3)
            .map(RationalFunction::to_canonical_string)
            .collect();
        md.insert("symbolic_power_sums".into(), json!(shown));
        let point: BTreeMap<String, String> = c
            .point
            .iter()
            .map(|(k, v)| (k.clone(), report::render(v)))
            .collect();
        md.insert("symbol_binding".into(), json!(point));
        let evaluated: Vec<Scalar> = ps
            .values()
            .iter()
            .map(|f| f.eval(&c.point))
            .collect::<Result<_>>()?;
        Values::from_scalars(&evaluated)?
    } else {
        match &c.values {
            Values::Rational(e) => Values::Rational(
                power_sums_from_elementary(&ElementarySequence::new(e.clone())?, n)?.into_values(),
            ),
            Values::Float(e) => Values::Float(
                power_sums_from_elementary(&ElementarySequence::new(e.clone())?, n)?.into_values(),
            ),
            other => {
                return Err(Error::DomainMismatch(format!(
                    "unexpected coefficient domain {:?}",
                    domain_of(other)
                )))
            }
        }
    };
    if spec.kind == FunctionKind::AiryProduct {
        md.insert(
            "rationality_residual".into(),
            json!(airy_rationality_residual(&p, n.min(12), prec)?),
        );
    }
    Ok(PowerSumData {
        p,
        e: c.values,
        metadata: md,
    })
}

/// Largest relative difference between the float power sums and the
/// symbolic ones in `Q(U, V)` evaluated at `U = e_1`, `V = e_2`.
fn airy_rationality_residual(p: &Values, n: usize, prec: u32) -> Result<String> {
    let sym = power_sums_from_elementary(&airy_coeffs_symbolic(n)?, n)?;
    let (u, v) = airy_generators(prec);
    let pf = float_values(p, prec)?;
    let mut worst = BigFloat::zero(prec);
    for (s, x) in sym.values().iter().zip(&pf) {
        let point: Vec<BigFloat> = s
            .vars()
            .iter()
            .map(|name| if name == "U" { u.clone() } else { v.clone() })
            .collect();
        let val = s.eval_with(&point, &u)?;
        let rel = val.sub(x).div(x).ok_or(Error::DivisionByZero)?.abs();
        worst = worst.max(&rel);
    }
    Ok(worst.to_decimal(3))
}

fn domain_of(v: &Values) -> Domain {
    match v {
        Values::Rational(_) => Domain::Rational,
        Values::RationalFunction(_) => Domain::RationalFunction,
        Values::Float(_) => Domain::Float,
        Values::Complex(_) => Domain::Complex,
    }
}

/// The zero table used for bounds, if the kind has one.
fn zero_table(spec: &FunctionSpec, cfg: &CertifyConfig, prec: u32) -> Result<Option<ZeroTable>> {
    Ok(match spec.kind {
        FunctionKind::RiemannXi => Some(match &cfg.zeros {
            Some(t) => t.clone(),
            None => bundled_riemann_zeros(Some(16), prec)?,
        }),
        FunctionKind::Bessel => Some(bessel_zeros(
            spec.params.nu.as_ref().expect("validated"),
            1,
            prec,
        )?),
        _ => None,
    })
}

/// `p_K^(1/K)` for the largest even `K <= len`.
fn power_sum_root(p: &Values, prec: u32) -> Result<(BigFloat, usize)> {
    let pf = float_values(p, prec)?;
    let k = pf.len() - pf.len() % 2;
    if k == 0 {
        return Err(Error::InsufficientCoefficients {
            needed: 2,
            available: pf.len(),
        });
    }
    let pk = &pf[k - 1];
    if !pk.is_positive() {
        return Err(Error::LambdaUnavailable(format!("p_{k} is not positive")));
    }
    let root = pk.powf(&BigFloat::from_rational(
        &Rational::from((1, k as i64)),
        prec,
    ));
    Ok((root, k))
}

fn safety(plus: bool) -> Rational {
    let eps = Rational::from((1, 1024));
    if plus {
        Rational::from(1) + eps
    } else {
        Rational::from(1) - eps
    }
}

pub fn resolve_lambda(
    spec: &FunctionSpec,
    policy: &LambdaPolicy,
    p: &Values,
    cfg: &CertifyConfig,
    prec: u32,
) -> Result<Bound> {
    match policy {
        LambdaPolicy::Fixed(s) => {
            let q = crate::scalars::parse_rational(s)?;
            if q <= 0 {
                return Err(Error::NonPositiveLambda);
            }
            Ok(Bound::from_rational(q, prec, "fixed".into()))
        }
        LambdaPolicy::ZeroTable => {
            let t = zero_table(spec, cfg, prec)?.ok_or_else(|| {
                Error::LambdaUnavailable(format!("no zero table for {}", spec.kind))
            })?;
            let z = t.first().to_decimal(20);
            Bound::from_float(
                lambda_bound(&t),
                format!("zero_table: (1 + 2^-10)/z_1^2 with z_1 = {z}"),
            )
        }
        LambdaPolicy::PowerSumBound => {
            let (root, k) =
                power_sum_root(p, prec).map_err(|e| Error::LambdaUnavailable(e.to_string()))?;
            Bound::from_float(
                root.mul_rational(&safety(true)),
                format!("power_sum_bound: p_{k}^(1/{k}) (1 + 2^-10)"),
            )
        }
    }
}

pub fn resolve_rho(
    spec: &FunctionSpec,
    policy: &RhoPolicy,
    p: &Values,
    cfg: &CertifyConfig,
    prec: u32,
) -> Result<Bound> {
    match policy {
        RhoPolicy::Fixed(s) => {
            let q = crate::scalars::parse_rational(s)?;
            if q <= 0 {
                return Err(Error::NonPositiveRho);
            }
            Ok(Bound::from_rational(q, prec, "fixed".into()))
        }
        RhoPolicy::ZeroTable => {
            let t = zero_table(spec, cfg, prec)?
                .ok_or_else(|| Error::RhoUnavailable(format!("no zero table for {}", spec.kind)))?;
            let z = t.first().to_decimal(20);
            Bound::from_float(
                rho_bound(&t),
                format!("zero_table: z_1^2 (1 - 2^-10) with z_1 = {z}"),
            )
        }
        RhoPolicy::PowerSumBound => {
            let (root, k) =
                power_sum_root(p, prec).map_err(|e| Error::RhoUnavailable(e.to_string()))?;
            let rho = root
                .inv()
                .ok_or(Error::DivisionByZero)?
                .mul_rational(&safety(false));
            Bound::from_float(rho, format!("power_sum_bound: (1 - 2^-10)/p_{k}^(1/{k})"))
        }
    }
}

fn function_info(spec: &FunctionSpec) -> FunctionInfo {
    FunctionInfo {
        id: spec.id(),
        kind: serde_json::to_value(spec.kind)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default(),
        coefficient_mode: serde_json::to_value(spec.mode)
            .ok()
            .and_then(|v| v.as_str().map(String::from)),
        params: spec.params.to_map(),
    }
}

/// A decided triangular table in scalar form.
struct Grid {
    cells: Vec<Vec<Scalar>>,
    judged: Vec<Vec<Scalar>>,
    verdicts: Vec<Vec<crate::scalars::SignVerdict>>,
    outcome: Outcome,
}

fn to_scalars<T: Field>(rows: &[Vec<T>]) -> Vec<Vec<Scalar>> {
    rows.iter()
        .map(|r| r.iter().map(Field::to_scalar).collect())
        .collect()
}

fn moment_grid<T: Signed>(
    p: Vec<T>,
    lambda: T,
    bound: usize,
    policy: &TolerancePolicy,
) -> Result<Grid> {
    let ps = PowerSumSequence::new(p);
    let table = moment_criterion(&ps, &lambda, bound, 0, policy)?;
    let cells = to_scalars(&table.cells);
    Ok(Grid {
        judged: cells.clone(),
        cells,
        outcome: table.outcome().into(),
        verdicts: table.verdicts,
    })
}

/// Moment-form grid for power sums `p_1..p_(B+1)` in any ordered domain.
fn moment_grid_values(
    p: &Values,
    lambda: &Bound,
    bound: usize,
    prec: u32,
    policy: &TolerancePolicy,
) -> Result<(Grid, Domain, Option<u32>)> {
    match p {
        Values::Rational(v) => Ok((
            moment_grid(v[..bound + 1].to_vec(), lambda.exact.clone(), bound, policy)?,
            Domain::Rational,
            None,
        )),
        Values::Float(v) => {
            let bits = v[0].prec();
            Ok((
                moment_grid(
                    v[..bound + 1].to_vec(),
                    lambda.float.with_prec(prec.max(bits)),
                    bound,
                    policy,
                )?,
                Domain::Float,
                Some(bits),
            ))
        }
        other => Err(Error::Unordered(format!("{} power sums", domain_of(other)))),
    }
}

struct RunParts {
    grid: Grid,
    domain: Domain,
    precision: Option<u32>,
    lambda: Option<BoundValue>,
    rho: Option<BoundValue>,
    metadata: BTreeMap<String, Value>,
}

fn assemble(
    info: FunctionInfo,
    mode: CertMode,
    parts: RunParts,
    cfg: &CertifyConfig,
) -> CertificateReport {
    let (cells, failures, min_margin) =
        report::records(&parts.grid.cells, &parts.grid.verdicts, &parts.grid.judged);
    CertificateReport {
        schema: report::SCHEMA_VERSION,
        function: info,
        mode,
        lambda: parts.lambda,
        rho: parts.rho,
        grid_bound: cfg.grid_bound,
        precision_bits: parts.precision,
        domain: parts.domain,
        statement: report::statement(parts.grid.outcome, cfg.grid_bound, failures.len()),
        verdict: parts.grid.outcome,
        cells,
        failures,
        min_margin,
        metadata: parts.metadata,
        timestamp: cfg.timestamp.clone(),
        config: cfg.echo.clone(),
    }
}

/// Runs `f` at the configured precision and once more at double precision
/// if the first outcome is INDETERMINATE (float runs only).
fn with_doubling(
    cfg: &CertifyConfig,
    f: impl Fn(u32) -> Result<CertificateReport>,
) -> Result<CertificateReport> {
    let first = f(cfg.precision)?;
    let doubled = cfg.precision.saturating_mul(2);
    if first.verdict == Outcome::Indeterminate
        && first.precision_bits.is_some()
        && doubled <= cfg.max_precision
    {
        let mut second = f(doubled)?;
        second
            .metadata
            .insert("precision_doubled_from".into(), json!(cfg.precision));
        return Ok(second);
    }
    Ok(first)
}

/// Moment-form certification on `j + k <= B`.
pub fn certify_moment(
    spec: &FunctionSpec,
    cfg: &CertifyConfig,
    policy: &LambdaPolicy,
) -> Result<CertificateReport> {
    with_doubling(cfg, |prec| certify_moment_at(spec, cfg, policy, prec))
}

fn certify_moment_at(
    spec: &FunctionSpec,
    cfg: &CertifyConfig,
    policy: &LambdaPolicy,
    prec: u32,
) -> Result<CertificateReport> {
    let b = cfg.grid_bound;
    let data = power_sums(spec, b + 1, prec, cfg)?;
    let lambda = resolve_lambda(spec, policy, &data.p, cfg, prec)?;
    let (grid, domain, precision) = moment_grid_values(&data.p, &lambda, b, prec, &cfg.policy())?;
    let exact = domain == Domain::Rational;
    let mut metadata = data.metadata;
    metadata.insert(
        "lambda_policy".into(),
        serde_json::to_value(policy).expect("serializable"),
    );
    let parts = RunParts {
        grid,
        domain,
        precision,
        lambda: Some(lambda.to_value(exact)),
        rho: None,
        metadata,
    };
    Ok(assemble(function_info(spec), CertMode::Moment, parts, cfg))
}

/// Moment-form certification of explicit power sums `p_1..p_(B+1)`.
pub fn certify_power_sums(
    info: FunctionInfo,
    p: &Values,
    lambda: &Rational,
    cfg: &CertifyConfig,
) -> Result<CertificateReport> {
    let bound = Bound::from_rational(lambda.clone(), cfg.precision, "fixed".into());
    let (grid, domain, precision) =
        moment_grid_values(p, &bound, cfg.grid_bound, cfg.precision, &cfg.policy())?;
    let exact = domain == Domain::Rational;
    let parts = RunParts {
        grid,
        domain,
        precision,
        lambda: Some(bound.to_value(exact)),
        rho: None,
        metadata: BTreeMap::new(),
    };
    Ok(assemble(info, CertMode::Moment, parts, cfg))
}

/// `f(z) = sum (-1)^k e_k z^k`.
fn series_from_elementary<T: Field>(e: &[T]) -> Result<TruncatedSeries<T>> {
    let c = e
        .iter()
        .enumerate()
        .map(|(k, x)| if k % 2 == 1 { x.neg() } else { x.clone() })
        .collect();
    TruncatedSeries::new(c)
}

/// Derivative-form grid plus the route-equality check against
/// `-rho (j+k)! (-Delta)^j (rho^k p_(k+1))`.
fn derivative_grid<T: Signed>(
    f: &TruncatedSeries<T>,
    rho: &T,
    bound: usize,
    policy: &TolerancePolicy,
) -> Result<(Grid, Value)> {
    let table = derivative_form_table(f, rho, bound, true, policy)?;
    let p = power_sums_from_log_derivative(f, bound + 1)?;
    let mut scaled = Vec::with_capacity(bound + 1);
    let mut rk = rho.one_like();
    for pk in p.values().iter().take(bound + 1) {
        scaled.push(pk.mul(&rk));
        rk = rk.mul(rho);
    }
    let diffs = difference_table(&MomentVector::new(scaled, "rho^k p_(k+1)"), bound)?;
    let exact = f.coeffs()[0].domain().is_exact();
    let scale = table
        .cells
        .iter()
        .flatten()
        .map(|x| x.to_f64().abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let bits = f.coeffs()[0].precision_bits().unwrap_or(0);
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for (j, row) in table.cells.iter().enumerate() {
        for (k, d) in row.iter().enumerate() {
            let m = diffs.cells[j][k]
                .mul(rho)
                .mul_rational(&Rational::from(factorial((j + k) as u32)))
                .neg();
            let diff = d.sub(&m);
            let ok = if exact {
                diff.is_zero()
            } else {
                let rel = diff.to_f64().abs() / scale;
                worst = worst.max(rel);
                rel <= 2f64.powf(-(bits as f64) / 2.0)
            };
            if !ok {
                return Err(Error::CrossCheckFailed { j, k });
            }
            checked += 1;
        }
    }
    let route = json!({
        "cells_checked": checked,
        "exact": exact,
        "max_relative_deviation": if exact { "0".to_string() } else { format!("{worst:.3e}") },
    });
    let cells = to_scalars(&table.cells);
    let judged = table
        .cells
        .iter()
        .map(|r| r.iter().map(|x| x.neg().to_scalar()).collect())
        .collect();
    Ok((
        Grid {
            cells,
            judged,
            outcome: table.outcome().into(),
            verdicts: table.verdicts,
        },
        route,
    ))
}

fn derivative_grid_values(
    e: &Values,
    rho: &Bound,
    bound: usize,
    prec: u32,
    policy: &TolerancePolicy,
) -> Result<(Grid, Value, Domain, Option<u32>)> {
    match e {
        Values::Rational(v) => {
            let f = series_from_elementary(&v[..bound + 2])?;
            let (g, r) = derivative_grid(&f, &rho.exact, bound, policy)?;
            Ok((g, r, Domain::Rational, None))
        }
        Values::Float(v) => {
            let bits = v[0].prec();
            let f = series_from_elementary(&v[..bound + 2])?;
            let (g, r) = derivative_grid(&f, &rho.float.with_prec(prec.max(bits)), bound, policy)?;
            Ok((g, r, Domain::Float, Some(bits)))
        }
        other => Err(Error::Unordered(format!(
            "{} coefficients",
            domain_of(other)
        ))),
    }
}

/// Derivative-form certification on `j + k <= B`, cross-checked cell by cell
/// against the moment route.
pub fn certify_derivative(
    spec: &FunctionSpec,
    cfg: &CertifyConfig,
    policy: &RhoPolicy,
) -> Result<CertificateReport> {
    with_doubling(cfg, |prec| certify_derivative_at(spec, cfg, policy, prec))
}

fn certify_derivative_at(
    spec: &FunctionSpec,
    cfg: &CertifyConfig,
    policy: &RhoPolicy,
    prec: u32,
) -> Result<CertificateReport> {
    let b = cfg.grid_bound;
    let data = power_sums(spec, b + 1, prec, cfg)?;
    let rho = resolve_rho(spec, policy, &data.p, cfg, prec)?;
    let (grid, route, domain, precision) =
        derivative_grid_values(&data.e, &rho, b, prec, &cfg.policy())?;
    let mut metadata = data.metadata;
    metadata.insert("route_check".into(), route);
    metadata.insert(
        "rho_policy".into(),
        serde_json::to_value(policy).expect("serializable"),
    );
    metadata.insert("chain_rule".into(), json!(true));
    let exact = domain == Domain::Rational;
    let parts = RunParts {
        grid,
        domain,
        precision,
        lambda: None,
        rho: Some(rho.to_value(exact)),
        metadata,
    };
    Ok(assemble(
        function_info(spec),
        CertMode::Derivative,
        parts,
        cfg,
    ))
}

/// Derivative-form certification of an explicit normalized series.
pub fn certify_series(
    info: FunctionInfo,
    f: &TruncatedSeries<Rational>,
    rho: &Rational,
    cfg: &CertifyConfig,
) -> Result<CertificateReport> {
    let (grid, route) = derivative_grid(f, rho, cfg.grid_bound, &cfg.policy())?;
    let bound = Bound::from_rational(rho.clone(), cfg.precision, "fixed".into());
    let mut metadata = BTreeMap::new();
    metadata.insert("route_check".into(), route);
    let parts = RunParts {
        grid,
        domain: Domain::Rational,
        precision: None,
        lambda: None,
        rho: Some(bound.to_value(true)),
        metadata,
    };
    Ok(assemble(info, CertMode::Derivative, parts, cfg))
}

/// Extra even orders of `G` kept so the shifted coefficients are accurate.
const SHIFT_EXTRA_TERMS: usize = 60;

/// Normalized `f(z) = (G(sqrt z - ic) + G(sqrt z + ic))/(2 G(ic))` for the
/// even function `G(x) = sum (-1)^n e_n x^(2n)`, to order `order`.
pub fn shifted_even_series(
    e: &[BigFloat],
    c: &Rational,
    order: usize,
    prec: u32,
) -> Result<(TruncatedSeries<BigFloat>, BigFloat)> {
    use crate::scalars::ComplexFloat;
    let wp = prec + 64;
    let mut g = Vec::with_capacity(2 * e.len());
    for (n, x) in e.iter().enumerate() {
        let v = x.with_prec(wp);
        g.push(ComplexFloat::from_real(if n % 2 == 1 {
            v.neg()
        } else {
            v
        }));
        g.push(ComplexFloat::zero(wp));
    }
    g.pop();
    let g = TruncatedSeries::polynomial(g)?;
    let ic = ComplexFloat::new(BigFloat::zero(wp), BigFloat::from_rational(c, wp));
    let minus = taylor_shift(&g, &ic.neg());
    let plus = taylor_shift(&g, &ic);
    let keep = 2 * order + 2;
    let h: Vec<ComplexFloat> = minus
        .coeffs()
        .iter()
        .zip(plus.coeffs())
        .take(keep)
        .map(|(a, b)| a.add(b))
        .collect();
    let scale = h.iter().map(|z| z.abs().to_f64()).fold(0.0, f64::max);
    let residue = h.iter().map(|z| z.im.abs().to_f64()).fold(0.0, f64::max);
    let tol = scale * 2f64.powf(-(prec as f64) / 2.0);
    if residue > tol {
        return Err(Error::NotEvenAfterShift(format!(
            "imaginary residue {residue:.3e}"
        )));
    }
    let real: Vec<BigFloat> = h.iter().map(|z| z.re.clone()).collect();
    if real[0].is_negligible(&BigFloat::from_f64(scale, wp)) {
        return Err(Error::ShiftedNormalizationZero);
    }
    let hs = TruncatedSeries::new(real)?;
    let f = even_sqrt_reduce(&hs, true).map_err(|e| match e {
        Error::NotEven { index } => Error::NotEvenAfterShift(format!("odd coefficient {index}")),
        other => other,
    })?;
    let coeffs: Vec<BigFloat> = f
        .coeffs()
        .iter()
        .take(order + 1)
        .map(|x| x.with_prec(prec))
        .collect();
    Ok((
        TruncatedSeries::new(coeffs)?,
        BigFloat::from_f64(residue, 64),
    ))
}

/// Derivative-form certification of the shifted even combination of `G`.
pub fn certify_shifted_even(
    spec: &FunctionSpec,
    c: &Rational,
    cfg: &CertifyConfig,
    policy: &RhoPolicy,
) -> Result<CertificateReport> {
    with_doubling(cfg, |prec| {
        certify_shifted_even_at(spec, c, cfg, policy, prec)
    })
}

fn certify_shifted_even_at(
    spec: &FunctionSpec,
    c: &Rational,
    cfg: &CertifyConfig,
    policy: &RhoPolicy,
    prec: u32,
) -> Result<CertificateReport> {
    let b = cfg.grid_bound;
    let float_spec = if spec.mode == CoefficientMode::Float {
        spec.clone()
    } else {
        spec.clone().with_mode(CoefficientMode::Float)?
    };
    let n = b + 2 + SHIFT_EXTRA_TERMS;
    let coeffs = float_spec.coefficients(n, prec + 64, &cfg.quad)?;
    let mut metadata = BTreeMap::new();
    coefficients_metadata(&float_spec, &coeffs, cfg, &mut metadata)?;
    let e = float_values(&coeffs.values, prec + 64)?;
    let (f, residue) = shifted_even_series(&e, c, b + 2, prec)?;
    let p = power_sums_from_log_derivative(&f, b + 1)?;
    let pv = Values::Float(p.into_values());
    let rho = match policy {
        RhoPolicy::ZeroTable => {
            return Err(Error::RhoUnavailable(
                "no zero table for a shifted function".into(),
            ))
        }
        other => resolve_rho(&float_spec, other, &pv, cfg, prec)?,
    };
    let ev: Vec<BigFloat> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, x)| if k % 2 == 1 { x.neg() } else { x.clone() })
        .collect();
    let (grid, route, domain, precision) =
        derivative_grid_values(&Values::Float(ev), &rho, b, prec, &cfg.policy())?;
    metadata.insert("route_check".into(), route);
    metadata.insert("shift".into(), json!(format_rational(c)));
    metadata.insert("imaginary_residue".into(), json!(residue.to_decimal(3)));
    metadata.insert("shift_extra_terms".into(), json!(SHIFT_EXTRA_TERMS));
    metadata.insert(
        "rho_policy".into(),
        serde_json::to_value(policy).expect("serializable"),
    );
    metadata.insert(
        "reduced_coefficients".into(),
        json!(f
            .coeffs()
            .iter()
            .map(|x| x.to_decimal(report::REPORT_DIGITS))
            .collect::<Vec<_>>()),
    );
    let mut info = function_info(&float_spec);
    info.id = format!("{}:shifted[c={}]", info.id, format_rational(c));
    let parts = RunParts {
        grid,
        domain,
        precision,
        lambda: None,
        rho: Some(rho.to_value(false)),
        metadata,
    };
    Ok(assemble(info, CertMode::ShiftedEven, parts, cfg))
}

#[cfg(test)]
mod tests;
