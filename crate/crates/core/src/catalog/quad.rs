//! Tanh-sinh quadrature of even moments `int_0^T t^(2n) g(t) dt`.
//!
//! All requested moments share one set of nodes. Nodes are evaluated in
//! parallel; the sums are accumulated sequentially in node order so results
//! do not depend on scheduling.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{BigFloat, Field, Signed};

/// User-facing knobs; `None` fields are chosen automatically.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadConfig {
    /// Truncation point `T` of `[0, infinity)`.
    pub t_max: Option<f64>,
    /// Maximum number of step halvings.
    pub levels: u32,
    /// Cap on the number of series terms per integrand evaluation.
    pub series_max: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            t_max: None,
            levels: 12,
            series_max: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadMeta {
    pub truncation: f64,
    pub nodes: usize,
    pub levels_used: u32,
    pub step: f64,
    /// Largest number of series terms any node needed.
    pub series_cutoff: usize,
    pub working_precision: u32,
}

/// Even moments `2 int_0^T t^(2n) g(t) dt` of an even integrand, or one-sided
/// moments for one-sided integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentResult {
    pub label: String,
    /// `moments[n]` is the moment of order `2n`.
    pub moments: Vec<BigFloat>,
    /// Difference between the last two quadrature levels.
    pub errors: Vec<BigFloat>,
    pub meta: QuadMeta,
}

impl MomentResult {
    pub fn precision(&self) -> u32 {
        self.moments.first().map_or(0, BigFloat::prec)
    }

    /// Every moment strictly positive.
    pub fn all_positive(&self) -> bool {
        self.moments.iter().all(Signed::is_positive)
    }

    pub(crate) fn scaled(mut self, factor: i64) -> Self {
        for m in self.moments.iter_mut().chain(self.errors.iter_mut()) {
            *m = m.mul_rational(&factor.into());
        }
        self
    }
}

/// Abscissa and weight of the tanh-sinh map onto `[0, t]` at parameter `s`.
fn node(s: &BigFloat, t: &BigFloat, half_pi: &BigFloat) -> (BigFloat, BigFloat) {
    let u = half_pi.mul(&BigFloat::from_float(s.inner().clone().sinh()));
    let eu = u.exp();
    let emu = eu.inv().expect("exp is nonzero");
    let one = t.one_like();
    // t / (1 + e^(-2u)) stays accurate near both endpoints
    let x = t.div(&one.add(&emu.mul(&emu))).expect("positive");
    let sech = BigFloat::from_i64(2, t.prec())
        .div(&eu.add(&emu))
        .expect("positive");
    let cosh_s = BigFloat::from_float(s.inner().clone().cosh());
    let w = t
        .mul(&sech)
        .mul(&sech)
        .mul(&half_pi.mul(&cosh_s))
        .mul_2exp(-1);
    (x, w)
}

/// Half-width in `s` beyond which weights fall below `2^-bits`.
fn s_limit(bits: u32) -> f64 {
    (2.0 * bits as f64 * std::f64::consts::LN_2 / std::f64::consts::PI).ln() + 0.5
}

/// Computes `int_0^T t^(2n) g(t) dt` for `n = 0..=k_max`.
///
/// `g` returns the integrand value and the number of series terms it used.
pub fn even_moments<G>(
    g: G,
    t_max: f64,
    k_max: usize,
    prec: u32,
    config: &QuadConfig,
    label: &str,
) -> Result<MomentResult>
where
    G: Fn(&BigFloat) -> Result<(BigFloat, usize)> + Sync,
{
    let wp = prec + 32;
    let t = BigFloat::from_f64(t_max, wp);
    let half_pi = BigFloat::pi(wp).mul_2exp(-1);
    let s_max = s_limit(wp);

    let eval = |k: i64, level: u32| -> Result<(Vec<BigFloat>, usize)> {
        let s = BigFloat::from_i64(k, wp).mul_2exp(-(level as i32));
        let (x, w) = node(&s, &t, &half_pi);
        if x.is_zero() || w.is_zero() {
            return Ok((vec![BigFloat::zero(wp); k_max + 1], 0));
        }
        let (gx, terms) = g(&x)?;
        let x2 = x.mul(&x);
        let mut acc = w.mul(&gx);
        let mut out = Vec::with_capacity(k_max + 1);
        for _ in 0..=k_max {
            out.push(acc.clone());
            acc = acc.mul(&x2);
        }
        Ok((out, terms))
    };

    let mut totals = vec![BigFloat::zero(wp); k_max + 1];
    let mut previous: Option<Vec<BigFloat>> = None;
    let mut nodes = 0usize;
    let mut series_cutoff = 0usize;
    let mut errors = vec![BigFloat::zero(wp); k_max + 1];
    let mut levels_used = 0;

    for level in 0..=config.levels {
        let n = (s_max * f64::from(1u32 << level)).ceil() as i64;
        let ks: Vec<i64> = if level == 0 {
            (-n..=n).collect()
        } else {
            (-n..=n).filter(|k| k % 2 != 0).collect()
        };
        let values: Vec<(Vec<BigFloat>, usize)> = ks
            .par_iter()
            .map(|&k| eval(k, level))
            .collect::<Result<_>>()?;
        nodes += values.len();
        for (v, terms) in &values {
            series_cutoff = series_cutoff.max(*terms);
            for (tot, x) in totals.iter_mut().zip(v) {
                *tot = tot.add(x);
            }
        }
        let h = BigFloat::from_i64(1, wp).mul_2exp(-(level as i32));
        let current: Vec<BigFloat> = totals.iter().map(|x| x.mul(&h)).collect();
        levels_used = level;
        if let Some(prev) = &previous {
            errors = current
                .iter()
                .zip(prev)
                .map(|(a, b)| a.sub(b).abs())
                .collect();
            let done = current.iter().zip(&errors).all(|(v, e)| {
                e.is_zero() || e.abs_le_pow2(v.abs().to_f64().log2() - prec as f64 + 4.0)
            });
            if done && level >= 3 {
                previous = Some(current);
                break;
            }
        }
        previous = Some(current);
    }

    let moments = previous.expect("at least one level");
    let loose = moments.iter().zip(&errors).position(|(v, e)| {
        !e.is_zero() && !e.abs_le_pow2(v.abs().to_f64().log2() - prec as f64 / 2.0)
    });
    if let Some(n) = loose {
        return Err(Error::QuadratureNotConverged(format!(
            "{label}: moment {} error {} after {} levels",
            2 * n,
            errors[n].to_decimal(6),
            levels_used
        )));
    }
    Ok(MomentResult {
        label: label.to_string(),
        moments: moments.iter().map(|m| m.with_prec(prec)).collect(),
        errors: errors.iter().map(|e| e.with_prec(64)).collect(),
        meta: QuadMeta {
            truncation: t_max,
            nodes,
            levels_used,
            step: 2f64.powi(-(levels_used as i32)),
            series_cutoff,
            working_precision: wp,
        },
    })
}

/// Smallest `T` (on a 1/64 grid) with `log_g(t) + 2K log t` below
/// `-(bits) ln 2` for all `t >= T`, assuming `log_g` eventually decreases
/// faster than any power.
pub fn truncation_point(log_g: impl Fn(f64) -> f64, k_max: usize, bits: u32) -> f64 {
    let target = -(bits as f64 + 16.0) * std::f64::consts::LN_2;
    let f = |t: f64| log_g(t) + 2.0 * k_max as f64 * t.max(1e-300).ln();
    let mut t = 0.5;
    while f(t) > target || f(t + 0.5) > target {
        t += 0.5;
        if t > 1e4 {
            break;
        }
    }
    (t * 64.0).ceil() / 64.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_moments() {
        // int_0^inf t^(2n) e^(-t^2) dt = Gamma(n + 1/2) / 2
        let prec = 200;
        let g = |x: &BigFloat| Ok((x.mul(x).neg().exp(), 1));
        let t = truncation_point(|t| -t * t, 4, prec);
        let r = even_moments(g, t, 4, prec, &QuadConfig::default(), "gauss").unwrap();
        for (n, m) in r.moments.iter().enumerate() {
            let half = BigFloat::from_f64(n as f64 + 0.5, prec);
            let expected = half.gamma().mul_2exp(-1);
            let diff = m.sub(&expected).abs();
            assert!(
                diff.abs_le_pow2(-180.0),
                "moment {n}: {}",
                diff.to_decimal(5)
            );
        }
        assert!(r.all_positive());
        assert!(r.meta.nodes > 0);
    }
}
