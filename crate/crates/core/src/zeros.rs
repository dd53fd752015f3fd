//! Zero tables: ingestion of Riemann zero ordinates, Bessel zeros by Newton
//! iteration, and partial power sums with heuristic tail estimates.

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::riemann::riemann_xi_value;
use crate::catalog::QuadConfig;
use crate::error::{Error, Result};
use crate::scalars::{BigFloat, Field, Rational, Signed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ZeroSource {
    File,
    Computed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    /// Strictly increasing positive ordinates.
    pub ordinates: Vec<BigFloat>,
    pub source: ZeroSource,
    pub function: String,
}

impl ZeroTable {
    pub fn new(ordinates: Vec<BigFloat>, source: ZeroSource, function: &str) -> Result<Self> {
        if ordinates.is_empty() {
            return Err(Error::ParseError("empty zero table".into()));
        }
        for (i, z) in ordinates.iter().enumerate() {
            if !z.is_positive() {
                return Err(Error::ParseError(format!(
                    "ordinate {} is not positive",
                    i + 1
                )));
            }
            if i > 0 && !z.greater_than(&ordinates[i - 1]) {
                return Err(Error::NotMonotone { line: i + 1 });
            }
        }
        Ok(ZeroTable {
            ordinates,
            source,
            function: function.to_string(),
        })
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn first(&self) -> &BigFloat {
        &self.ordinates[0]
    }

    pub fn truncated(&self, limit: usize) -> ZeroTable {
        let mut t = self.clone();
        t.ordinates.truncate(limit.max(1));
        t
    }
}

/// Parses one decimal ordinate per line; blank lines and `#` comments are
/// skipped. `NotMonotone` reports the 1-based line number.
pub fn parse_zero_table(
    text: &str,
    limit: Option<usize>,
    prec: u32,
    function: &str,
) -> Result<ZeroTable> {
    let mut out: Vec<BigFloat> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if limit.is_some_and(|l| out.len() >= l) {
            break;
        }
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let z = BigFloat::parse_decimal(line, prec)
            .map_err(|_| Error::ParseError(format!("line {}: '{line}'", i + 1)))?;
        if !z.is_positive() {
            return Err(Error::ParseError(format!(
                "line {}: ordinate must be positive",
                i + 1
            )));
        }
        if let Some(prev) = out.last() {
            if !z.greater_than(prev) {
                return Err(Error::NotMonotone { line: i + 1 });
            }
        }
        out.push(z);
    }
    ZeroTable::new(out, ZeroSource::File, function)
}

pub fn load_zero_table(path: &Path, limit: Option<usize>, prec: u32) -> Result<ZeroTable> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
    parse_zero_table(&text, limit, prec, "riemann_xi")
}

/// The ordinates bundled with the crate (first 1200 Riemann zeros).
pub fn bundled_riemann_zeros(limit: Option<usize>, prec: u32) -> Result<ZeroTable> {
    parse_zero_table(
        include_str!("../../../data/riemann_zeros.txt"),
        limit,
        prec,
        "riemann_xi",
    )
}

/// `S(x) = sum_n (-1)^n (x^2/4)^n/(n! (nu+1)_n) = Gamma(nu+1) (2/x)^nu J_nu(x)`
/// and `S'(x)`.
fn bessel_series(x: &BigFloat, nu: &BigFloat) -> (BigFloat, BigFloat) {
    let wp = x.prec();
    let w = x.mul(x).mul_2exp(-2).neg();
    let two_over_x = BigFloat::from_i64(2, wp).div(x).expect("x > 0");
    let mut term = BigFloat::from_i64(1, wp);
    let mut s = term.clone();
    let mut ds = BigFloat::zero(wp);
    let mut n = 0i64;
    let xf = x.to_f64();
    loop {
        n += 1;
        let d = nu
            .add(&BigFloat::from_i64(n, wp))
            .mul(&BigFloat::from_i64(n, wp));
        term = term.mul(&w).div(&d).expect("nu > -1");
        s = s.add(&term);
        ds = ds.add(&term.mul(&BigFloat::from_i64(n, wp)));
        if (n as f64) > xf && term.abs_le_pow2(-(wp as f64)) {
            break;
        }
    }
    (s, ds.mul(&two_over_x))
}

/// Working precision for evaluating the series at `x`: the terms grow to
/// about `e^x` before cancelling.
fn series_precision(x: f64, prec: u32) -> u32 {
    prec + (x * std::f64::consts::LOG2_E).ceil() as u32 + 32
}

/// The first `count` positive zeros of `J_nu`, by Newton iteration from the
/// McMahon guess, each confirmed by a sign change.
pub fn bessel_zeros(nu: &Rational, count: usize, prec: u32) -> Result<ZeroTable> {
    if *nu <= -1 {
        return Err(Error::ParameterOutOfRange("nu must exceed -1".into()));
    }
    let nuf = nu.to_f64();
    let zeros: Vec<BigFloat> = (1..=count)
        .into_par_iter()
        .map(|k| bessel_zero(nu, nuf, k, prec))
        .collect::<Result<_>>()?;
    let table = ZeroTable::new(
        zeros,
        ZeroSource::Computed,
        &format!("bessel[nu={}]", crate::scalars::format_rational(nu)),
    )?;
    for w in table.ordinates.windows(2) {
        let gap = w[1].sub(&w[0]).to_f64();
        if !(2.0..5.0).contains(&gap) {
            return Err(Error::NoConvergence(format!(
                "zero spacing {gap} out of range"
            )));
        }
    }
    Ok(table)
}

fn bessel_zero(nu: &Rational, nuf: f64, k: usize, prec: u32) -> Result<BigFloat> {
    let beta = (k as f64 + nuf / 2.0 - 0.25) * std::f64::consts::PI;
    let mu = 4.0 * nuf * nuf;
    let guess = beta - (mu - 1.0) / (8.0 * beta);
    let wp = series_precision(guess + 4.0, prec);
    let nub = BigFloat::from_rational(nu, wp);
    let mut x = BigFloat::from_f64(guess.max(0.5), wp);
    let mut converged = false;
    for _ in 0..200 {
        let (s, ds) = bessel_series(&x, &nub);
        let step = s
            .div(&ds)
            .ok_or_else(|| Error::NoConvergence(format!("flat derivative near zero {k}")))?;
        x = x.sub(&step);
        if step.abs_le_pow2(x.abs().to_f64().log2() - prec as f64 - 8.0) {
            converged = true;
            break;
        }
    }
    if !converged || (x.to_f64() - guess).abs() > 1.5 {
        return Err(Error::NoConvergence(format!(
            "Bessel zero {k} for nu = {nuf}"
        )));
    }
    let h = x.mul_2exp(-(prec as i32) / 3);
    let (lo, _) = bessel_series(&x.sub(&h), &nub);
    let (hi, _) = bessel_series(&x.add(&h), &nub);
    if lo.is_positive() == hi.is_positive() {
        return Err(Error::NoConvergence(format!(
            "no sign change at Bessel zero {k}"
        )));
    }
    Ok(x.with_prec(prec))
}

/// Density model for zeros beyond the end of a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailModel {
    /// Ordinates with density `log(g/2 pi)/(2 pi)`.
    Riemann,
    /// Ordinates spaced by `pi`.
    Bessel,
    None,
}

/// `sum_k z_k^(-2n)` over the table plus a tail estimate from `model`.
///
/// Returns `(partial + tail, |tail|)`; the second value is an estimate, not a
/// rigorous bound.
pub fn partial_power_sum_with_tail(
    table: &ZeroTable,
    n: u32,
    model: TailModel,
) -> Result<(BigFloat, BigFloat)> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("n must be at least 1".into()));
    }
    let prec = table.first().prec();
    let partial = table
        .ordinates
        .iter()
        .rev()
        .fold(BigFloat::zero(prec), |acc, z| {
            acc.add(&z.powi(-2 * n as i32))
        });
    let last = table.ordinates.last().expect("nonempty");
    let m = BigFloat::from_i64(2 * n as i64 - 1, prec);
    let pi = BigFloat::pi(prec);
    let tail = match model {
        TailModel::None => BigFloat::zero(prec),
        TailModel::Riemann => {
            // int_T^inf g^(-2n) log(g/2 pi)/(2 pi) dg
            let t = last;
            let log = t.div(&pi.mul_rational(&2.into())).expect("pi").ln();
            let inner = log.add(&m.inv().expect("m > 0"));
            t.powi(1 - 2 * n as i32)
                .mul(&inner)
                .div(&m.mul(&pi).mul_rational(&2.into()))
                .expect("nonzero")
        }
        TailModel::Bessel => {
            // zeros at last + j pi, summed as an integral from last + pi/2
            let start = last.add(&pi.mul_2exp(-1));
            start
                .powi(1 - 2 * n as i32)
                .div(&m.mul(&pi))
                .expect("nonzero")
        }
    };
    Ok((partial.add(&tail), tail.abs()))
}

/// `lambda = (1 + 2^-10)/min z^2`, bounding `sup 1/z_k^2` from above.
pub fn lambda_bound(table: &ZeroTable) -> BigFloat {
    let z = table.first();
    let safety = Rational::from(1) + Rational::from((1, 1024));
    z.mul(z).inv().expect("positive").mul_rational(&safety)
}

/// `rho = min z^2 (1 - 2^-10)`, below every root `z_k^2` of the reduction.
pub fn rho_bound(table: &ZeroTable) -> BigFloat {
    let z = table.first();
    let safety = Rational::from(1) - Rational::from((1, 1024));
    z.mul(z).mul_rational(&safety)
}

/// `Xi` changes sign on `[z - h, z + h]`.
pub fn xi_sign_change(z: &BigFloat, h: f64, prec: u32) -> Result<bool> {
    let config = QuadConfig::default();
    let hb = BigFloat::from_f64(h, prec);
    let lo = riemann_xi_value(&z.sub(&hb), prec, &config)?;
    let hi = riemann_xi_value(&z.add(&hb), prec, &config)?;
    Ok(lo.is_positive() != hi.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn parse_and_validate() {
        let t = parse_zero_table(
            "# header\n14.134725141\n21.022039638\n\n25.010857580\n",
            None,
            64,
            "x",
        )
        .unwrap();
        assert_eq!(t.len(), 3);
        assert!((t.first().to_f64() - 14.134725141).abs() < 1e-12);
        assert!(matches!(
            parse_zero_table("", None, 64, "x"),
            Err(Error::ParseError(_))
        ));
        assert!(matches!(
            parse_zero_table("2\n1\n", None, 64, "x"),
            Err(Error::NotMonotone { line: 2 })
        ));
        assert!(matches!(
            parse_zero_table("1\nabc\n", None, 64, "x"),
            Err(Error::ParseError(_))
        ));
        assert_eq!(
            parse_zero_table("1\n2\n3\n", Some(2), 64, "x")
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn bundled_table() {
        let t = bundled_riemann_zeros(None, 128).unwrap();
        assert_eq!(t.len(), 1200);
        assert!((t.first().to_f64() - 14.134725141734694).abs() < 1e-13);
    }

    #[test]
    fn first_bessel_zeros() {
        let t = bessel_zeros(&rat(0, 1), 3, 128).unwrap();
        assert!((t.first().to_f64() - 2.404825557695773).abs() < 1e-14);
        let half = bessel_zeros(&rat(1, 2), 4, 128).unwrap();
        let pi = BigFloat::pi(128);
        for (k, z) in half.ordinates.iter().enumerate() {
            assert!(z
                .sub(&pi.mul_rational(&rat(k as i64 + 1, 1)))
                .abs_le_pow2(-110.0));
        }
    }

    #[test]
    fn interlacing() {
        let a = bessel_zeros(&rat(0, 1), 12, 96).unwrap();
        let b = bessel_zeros(&rat(1, 1), 12, 96).unwrap();
        for k in 0..11 {
            assert!(b.ordinates[k].greater_than(&a.ordinates[k]));
            assert!(a.ordinates[k + 1].greater_than(&b.ordinates[k]));
        }
    }

    #[test]
    fn rayleigh_sum_with_tail() {
        let t = bessel_zeros(&rat(0, 1), 50, 96).unwrap();
        let (v, err) = partial_power_sum_with_tail(&t, 1, TailModel::Bessel).unwrap();
        assert!((v.to_f64() - 0.25).abs() <= err.to_f64());
    }

    #[test]
    fn riemann_sums() {
        let t = bundled_riemann_zeros(None, 128).unwrap();
        let (v, err) = partial_power_sum_with_tail(&t, 1, TailModel::Riemann).unwrap();
        assert!((v.to_f64() - 0.023104993).abs() < 1e-5, "{}", v.to_f64());
        assert!(err.to_f64() < 1e-3);
        let (v10, err10) = partial_power_sum_with_tail(&t, 10, TailModel::Riemann).unwrap();
        let first = t.first().powi(-20);
        assert!(v10.sub(&first).div(&first).unwrap().to_f64() < 1e-2);
        assert!(err10.to_f64() < 1e-40);
        let mut last = f64::INFINITY;
        for n in 1..6 {
            let (x, _) = partial_power_sum_with_tail(&t, n, TailModel::Riemann).unwrap();
            assert!(x.to_f64() < last);
            last = x.to_f64();
        }
    }

    #[test]
    fn bounds_bracket_first_zero() {
        let t = bundled_riemann_zeros(Some(5), 128).unwrap();
        let z2 = t.first().mul(t.first());
        assert!(lambda_bound(&t).mul(&z2).greater_than(&z2.one_like()));
        assert!(z2.greater_than(&rho_bound(&t)));
    }

    #[test]
    fn xi_changes_sign_at_first_zeros() {
        let t = bundled_riemann_zeros(Some(3), 128).unwrap();
        for z in &t.ordinates {
            assert!(xi_sign_change(z, 1e-6, 128).unwrap());
        }
        let mid = BigFloat::from_f64(17.5, 128);
        assert!(!xi_sign_change(&mid, 1.0, 128).unwrap());
    }
}
