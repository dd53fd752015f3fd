//! Even moments of `K_iz(a) = int_0^inf e^(-a cosh u) cos(zu) du`.

use crate::error::{Error, Result};
use crate::scalars::{BigFloat, Field, Rational};

use super::quad::{even_moments, truncation_point, MomentResult, QuadConfig};

/// `c_(2n) = int_0^inf u^(2n) e^(-a cosh u) du` for `n = 0..=K`, so that
/// `K_iz(a) = sum_n (-1)^n c_(2n) z^(2n)/(2n)!`.
pub fn besselk_moments(
    a: &Rational,
    k_max: usize,
    prec: u32,
    config: &QuadConfig,
) -> Result<MomentResult> {
    if *a <= 0 {
        return Err(Error::ParameterOutOfRange(format!(
            "a = {a} must be positive"
        )));
    }
    let af = a.to_f64();
    let t_max = config
        .t_max
        .unwrap_or_else(|| truncation_point(|u| -af * u.exp() / 2.0, k_max, prec + 32));
    let wp = prec + 32;
    let ab = BigFloat::from_rational(a, wp);
    let g = |u: &BigFloat| {
        let cosh = BigFloat::from_float(u.inner().clone().cosh());
        Ok((ab.mul(&cosh).neg().exp(), 1))
    };
    even_moments(g, t_max, k_max, prec, config, &format!("bessel_k[a={a}]"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Signed};

    // K_0(1), and int_0^inf u^2 e^(-cosh u) du from an independent adaptive quadrature
    const C0: &str = "0.4210244382407083333356273792126090361362";
    const C2: &str = "0.3078110430921126863274835203607079600846";

    #[test]
    fn matches_k0_and_second_moment() {
        let prec = 128;
        let r = besselk_moments(&rat(1, 1), 2, prec, &QuadConfig::default()).unwrap();
        for (m, s) in r.moments.iter().zip([C0, C2]) {
            let want = BigFloat::parse_decimal(s, prec).unwrap();
            assert!(m.sub(&want).abs_le_pow2(-120.0), "{}", m.to_decimal(40));
        }
    }

    #[test]
    fn positive_and_monotone_in_a() {
        let prec = 96;
        let one = besselk_moments(&rat(1, 1), 6, prec, &QuadConfig::default()).unwrap();
        let two = besselk_moments(&rat(2, 1), 6, prec, &QuadConfig::default()).unwrap();
        assert!(one.all_positive() && two.all_positive());
        for (x, y) in two.moments.iter().zip(&one.moments) {
            assert!(y.greater_than(x));
        }
    }

    #[test]
    fn rejects_nonpositive_a() {
        assert!(besselk_moments(&rat(0, 1), 2, 64, &QuadConfig::default()).is_err());
    }
}
