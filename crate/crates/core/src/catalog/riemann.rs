//! The kernel `phi(t)` of the Riemann Xi function and its even moments
//! `b_(2n) = int t^(2n) phi(t) dt`.

use crate::error::Result;
use crate::scalars::{BigFloat, Field, Signed};

use super::quad::{even_moments, truncation_point, MomentResult, QuadConfig};

/// `phi(t)` summed as written,
/// `2 pi sum_n (2 pi n^4 e^(-9t/2) - 3 n^2 e^(-5t/2)) exp(-n^2 pi e^(-2t))`.
///
/// Converges quickly for `t <= 0` and slowly for large positive `t`.
/// Returns the value and the number of terms used.
pub fn riemann_phi_direct(t: &BigFloat, prec: u32, series_max: usize) -> (BigFloat, usize) {
    let wp = prec + 16;
    let t = t.with_prec(wp);
    let pi = BigFloat::pi(wp);
    let e9 = t.mul_rational(&(-9, 2).into()).exp();
    let e5 = t.mul_rational(&(-5, 2).into()).exp();
    let x = pi.mul(&t.mul_rational(&(-2).into()).exp());
    let two_pi = pi.mul_rational(&2.into());
    let mut sum = BigFloat::zero(wp);
    let mut n = 0usize;
    while n < series_max {
        n += 1;
        let nf = BigFloat::from_i64(n as i64, wp);
        let n2 = nf.mul(&nf);
        let inner = two_pi
            .mul(&n2)
            .mul(&n2)
            .mul(&e9)
            .sub(&n2.mul(&e5).mul_rational(&3.into()));
        let term = inner.mul(&n2.mul(&x).neg().exp());
        sum = sum.add(&term);
        // past the peak of n^4 exp(-n^2 x) and below the working precision
        let past_peak = n2.mul(&x).to_f64() > 2.0;
        if past_peak && term_negligible(&term, &sum, wp) {
            break;
        }
    }
    (two_pi.mul(&sum).with_prec(prec), n)
}

/// `|term| <= 2^-(wp + 8) |sum|`.
pub(crate) fn term_negligible(term: &BigFloat, sum: &BigFloat, wp: u32) -> bool {
    term.is_zero()
        || (!sum.is_zero() && term.abs_le_pow2(sum.abs().to_f64().log2() - wp as f64 - 8.0))
}

/// `phi(t)`, evaluated through the fast orientation `phi(t) = phi(-|t|)`.
pub fn riemann_phi(t: &BigFloat, prec: u32, series_max: usize) -> (BigFloat, usize) {
    let neg = if t.to_f64() > 0.0 { t.neg() } else { t.clone() };
    riemann_phi_direct(&neg, prec, series_max)
}

/// `log phi(t)` for `t >= 0`, up to a bounded additive error.
fn log_phi_estimate(t: f64) -> f64 {
    let pi = std::f64::consts::PI;
    (4.0 * pi * pi).ln() + 4.5 * t - pi * (2.0 * t).exp()
}

/// `b_0, b_2, ..., b_(2K)` as `2 int_0^T t^(2n) phi(t) dt`.
pub fn riemann_moments(k_max: usize, prec: u32, config: &QuadConfig) -> Result<MomentResult> {
    let t_max = config
        .t_max
        .unwrap_or_else(|| truncation_point(log_phi_estimate, k_max, prec + 32));
    let wp = prec + 32;
    let g = |x: &BigFloat| Ok(riemann_phi(x, wp, config.series_max));
    Ok(even_moments(g, t_max, k_max, prec, config, "riemann_xi")?.scaled(2))
}

/// `Xi(z) = 2 int_0^T cos(z t) phi(t) dt` for real `z`.
pub fn riemann_xi_value(z: &BigFloat, prec: u32, config: &QuadConfig) -> Result<BigFloat> {
    let t_max = config
        .t_max
        .unwrap_or_else(|| truncation_point(log_phi_estimate, 0, prec + 32));
    let wp = prec + 32;
    let z = z.with_prec(wp);
    let g = |x: &BigFloat| {
        let (phi, n) = riemann_phi(x, wp, config.series_max);
        Ok((phi.mul(&z.mul(x).cos()), n))
    };
    let r = even_moments(g, t_max, 0, prec, config, "riemann_xi_value")?;
    Ok(r.moments[0].mul_rational(&2.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_is_positive_even_and_decays() {
        let p = 128;
        let f = |x: f64| BigFloat::from_f64(x, p);
        assert!(riemann_phi(&f(0.1), p, 10_000).0.is_positive());
        for t in [0.3, 0.7, 1.2] {
            let (a, _) = riemann_phi_direct(&f(t), p, 100_000);
            let (b, _) = riemann_phi_direct(&f(-t), p, 100_000);
            assert!(a.sub(&b).is_negligible(&b), "t = {t}");
        }
        let ratio = riemann_phi(&f(3.0), p, 10_000)
            .0
            .div(&riemann_phi(&f(0.0), p, 10_000).0)
            .unwrap();
        assert!(ratio.to_f64() < 1e-10);
    }
}
