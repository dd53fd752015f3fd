//! Coefficients of the genus-0 product over the squared Airy zeros,
//! `a_n = C 16^(n/3) Gamma(n/3 + 1/6) Gamma(n/3 + 1/2)/(2n)!` with
//! `C = sqrt(3) Gamma(2/3)^2/(4^(1/3) pi)`.
//!
//! `a_0` is `2 pi`, not 1, so coefficients are returned normalized by `a_0`.

use crate::error::Result;
use crate::scalars::{factorial, BigFloat, Field, Rational, RationalFunction};
use crate::symfun::ElementarySequence;

fn third(n: usize, offset: (i64, i64), prec: u32) -> BigFloat {
    BigFloat::from_rational(
        &(Rational::from((n as i64, 3)) + Rational::from(offset)),
        prec,
    )
}

/// The unnormalized `a_n`.
pub fn airy_a(n: usize, prec: u32) -> BigFloat {
    let wp = prec + 16;
    let two_thirds = BigFloat::from_rational(&Rational::from((2, 3)), wp);
    let c = BigFloat::from_i64(3, wp)
        .sqrt()
        .mul(&two_thirds.gamma().pow_u(2))
        .div(
            &BigFloat::from_i64(4, wp)
                .powf(&BigFloat::from_rational(&Rational::from((1, 3)), wp))
                .mul(&BigFloat::pi(wp)),
        )
        .expect("nonzero");
    let sixteen = BigFloat::from_i64(16, wp).powf(&third(n, (0, 1), wp));
    let g = third(n, (1, 6), wp)
        .gamma()
        .mul(&third(n, (1, 2), wp).gamma());
    let fact = BigFloat::from_integer(&factorial(2 * n as u32), wp);
    c.mul(&sixteen)
        .mul(&g)
        .div(&fact)
        .expect("nonzero")
        .with_prec(prec)
}

/// Normalized `e_k = a_k/a_0` for `k = 0..=K`, computed directly from the
/// Gamma-function formula.
pub fn airy_coeffs(k_max: usize, prec: u32) -> Result<ElementarySequence<BigFloat>> {
    let wp = prec + 16;
    let a0 = airy_a(0, wp);
    let mut e: Vec<BigFloat> = (0..=k_max)
        .map(|n| airy_a(n, wp).div(&a0).expect("a_0 = 2 pi").with_prec(prec))
        .collect();
    e[0] = BigFloat::from_i64(1, prec);
    ElementarySequence::new(e)
}

/// `e_(n+3)/e_n = 16 (n/3 + 1/6)(n/3 + 1/2)/((2n+6)(2n+5)...(2n+1))`.
pub fn airy_ratio(n: usize) -> Rational {
    let n = n as i64;
    let num = Rational::from(16) * Rational::from((2 * n + 1, 6)) * Rational::from((2 * n + 3, 6));
    let den: i64 = (1..=6).map(|i| 2 * n + i).product();
    num / Rational::from(den)
}

/// `e_k` over `Q(U, V)` with `U = e_1` and `V = e_2`: each `e_k` is a rational
/// multiple of `1`, `U` or `V` according to `k mod 3`.
pub fn airy_coeffs_symbolic(k_max: usize) -> Result<ElementarySequence<RationalFunction>> {
    let one = RationalFunction::constant(
        RationalFunction::symbol("U").vars().clone(),
        Rational::from(1),
    );
    let base = [
        one,
        RationalFunction::symbol("U"),
        RationalFunction::symbol("V"),
    ];
    let mut coeff = vec![Rational::from(1), Rational::from(1), Rational::from(1)];
    for n in 3..=k_max {
        let c = coeff[n - 3].clone() * airy_ratio(n - 3);
        coeff.push(c);
    }
    let e = (0..=k_max)
        .map(|n| base[n % 3].mul_rational(&coeff[n]))
        .collect();
    ElementarySequence::new(e)
}

/// Numerical values of the generators `(U, V) = (e_1, e_2)`.
pub fn airy_generators(prec: u32) -> (BigFloat, BigFloat) {
    let e = airy_coeffs(2, prec).expect("normalized");
    (e.values()[1].clone(), e.values()[2].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use crate::symfun::power_sums_from_elementary;

    const E1: &str = "0.2554979881441720418727042455639997616621";
    const E2: &str = "0.02808156045311607100178159696686635575544";

    #[test]
    fn a0_is_two_pi() {
        let a0 = airy_a(0, 128);
        let two_pi = BigFloat::pi(128).mul_rational(&rat(2, 1));
        assert!(a0.sub(&two_pi).abs_le_pow2(-120.0));
    }

    #[test]
    fn normalized_coefficients() {
        let prec = 128;
        let e = airy_coeffs(3, prec).unwrap();
        assert!(e.values()[0].is_one());
        for (x, s) in e.values()[1..3].iter().zip([E1, E2]) {
            assert!(x
                .sub(&BigFloat::parse_decimal(s, prec).unwrap())
                .abs_le_pow2(-120.0));
        }
        let third = BigFloat::from_rational(&rat(1, 540), prec);
        assert!(e.values()[3].sub(&third).abs_le_pow2(-125.0));
    }

    #[test]
    fn closed_form_a1_differs_from_series() {
        // pi^2/Gamma(1/3)^4 is not a_1/a_0
        let prec = 128;
        let g = BigFloat::from_rational(&rat(1, 3), prec).gamma();
        let pi = BigFloat::pi(prec);
        let closed = pi.mul(&pi).div(&g.pow_u(4)).unwrap();
        let e1 = airy_coeffs(1, prec).unwrap().values()[1].clone();
        assert!((closed.to_f64() - 0.19162349110812903).abs() < 1e-15);
        assert!((e1.to_f64() - closed.to_f64()).abs() > 0.05);
    }

    #[test]
    fn symbolic_agrees_with_float() {
        let prec = 160;
        let (u, v) = airy_generators(prec);
        let sym = airy_coeffs_symbolic(9).unwrap();
        let num = airy_coeffs(9, prec).unwrap();
        let ps = power_sums_from_elementary(&sym, 9).unwrap();
        let pn = power_sums_from_elementary(&num, 9).unwrap();
        for (s, n) in ps.values().iter().zip(pn.values()) {
            let point: Vec<BigFloat> = s
                .vars()
                .iter()
                .map(|x| if x == "U" { u.clone() } else { v.clone() })
                .collect();
            let val = s.eval_with(&point, &u).unwrap();
            assert!(
                val.close_to(n),
                "{} vs {}",
                val.to_decimal(20),
                n.to_decimal(20)
            );
        }
    }
}
