//! Power sums written directly in the even moments `b_0, b_2, b_4, ...`.
//!
//! Slices hold `b[i] = b_(2i)`. The generic route goes through
//! `e_i = b_(2i)/((2i)! b_0)` and Newton's identities; the formulas here are
//! written out in `b` so the two can be compared.

use crate::error::{Error, Result};
use crate::scalars::{factorial, Field, Rational};
use crate::symfun::{enumerate_partitions, PowerSumSequence};

fn check(b: &[impl Field], k: usize) -> Result<()> {
    if b.len() < k + 1 {
        return Err(Error::InsufficientCoefficients {
            needed: k + 1,
            available: b.len(),
        });
    }
    if b[0].is_zero() {
        return Err(Error::ZeroB0);
    }
    Ok(())
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

/// `p_1..p_k` for `k <= 4` from the hard-coded polynomials in `b`.
pub fn explicit_p_formulas<T: Field>(b: &[T], k: usize) -> Result<PowerSumSequence<T>> {
    if k > 4 {
        return Err(Error::Unsupported(format!(
            "explicit formulas stop at p_4, asked for p_{k}"
        )));
    }
    check(b, k)?;
    let b0 = &b[0];
    let den = |n: u32, c: i64| b0.pow_u(n).mul_rational(&Rational::from(c));
    let mut out = Vec::with_capacity(k);
    if k >= 1 {
        out.push(b[1].div(&den(1, 2)).ok_or(Error::ZeroB0)?);
    }
    if k >= 2 {
        let num = b[1].pow_u(2).mul_rational(&q(3, 1)).sub(&b0.mul(&b[2]));
        out.push(num.div(&den(2, 12)).ok_or(Error::ZeroB0)?);
    }
    if k >= 3 {
        let num = b[1]
            .pow_u(3)
            .mul_rational(&q(30, 1))
            .sub(&b0.mul(&b[1]).mul(&b[2]).mul_rational(&q(15, 1)))
            .add(&b0.pow_u(2).mul(&b[3]));
        out.push(num.div(&den(3, 240)).ok_or(Error::ZeroB0)?);
    }
    if k >= 4 {
        let num = b[1]
            .pow_u(4)
            .mul_rational(&q(630, 1))
            .sub(&b0.mul(&b[1].pow_u(2)).mul(&b[2]).mul_rational(&q(420, 1)))
            .add(&b0.pow_u(2).mul(&b[2].pow_u(2)).mul_rational(&q(35, 1)))
            .add(&b0.pow_u(2).mul(&b[1]).mul(&b[3]).mul_rational(&q(28, 1)))
            .sub(&b0.pow_u(3).mul(&b[4]));
        out.push(num.div(&den(4, 10080)).ok_or(Error::ZeroB0)?);
    }
    Ok(PowerSumSequence::new(out))
}

/// `b_(2i)/((2i)! b_0)` with sign `(-1)^s`.
fn scaled_b<T: Field>(b: &[T], i: usize, negate: bool) -> Result<T> {
    let f = Rational::from(factorial(2 * i as u32));
    let x = b[i].div(&b[0].mul_rational(&f)).ok_or(Error::ZeroB0)?;
    Ok(if negate { x.neg() } else { x })
}

/// `p_k = (-1)^(k-1) k b_(2k)/((2k)! b_0) + sum_(i<k) (-1)^(k-1+i) b_(2k-2i) p_i/((2k-2i)! b_0)`.
pub fn p_from_b_recurrence<T: Field>(b: &[T], k_max: usize) -> Result<PowerSumSequence<T>> {
    check(b, k_max)?;
    let mut p: Vec<T> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut acc = scaled_b(b, k, (k - 1) % 2 == 1)?.mul_rational(&Rational::from(k as i64));
        for (i, pi) in p.iter().enumerate().map(|(i, x)| (i + 1, x)) {
            acc = acc.add(&scaled_b(b, k - i, (k - 1 + i) % 2 == 1)?.mul(pi));
        }
        p.push(acc);
    }
    Ok(PowerSumSequence::new(p))
}

/// Sum over partitions `r_1 + 2 r_2 + ... = k` of
/// `(-1)^k k (r_1 + ... + r_j - 1)!/(r_1! ... r_j!) prod (-b_(2i)/((2i)! b_0))^(r_i)`.
pub fn p_from_b_closed_form<T: Field>(b: &[T], k_max: usize) -> Result<PowerSumSequence<T>> {
    check(b, k_max)?;
    let x: Vec<T> = (1..=k_max)
        .map(|i| scaled_b(b, i, true))
        .collect::<Result<_>>()?;
    let mut p = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut acc = b[0].zero_like();
        for part in enumerate_partitions(k as u32) {
            let mut coef = Rational::from(factorial(part.length() - 1)) * Rational::from(k as i64);
            let mut term = b[0].one_like();
            for (i, &r) in part.multiplicities.iter().enumerate() {
                coef /= Rational::from(factorial(r));
                term = term.mul(&x[i].pow_u(r));
            }
            if k % 2 == 1 {
                coef = -coef;
            }
            acc = acc.add(&term.mul_rational(&coef));
        }
        p.push(acc);
    }
    Ok(PowerSumSequence::new(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, RationalFunction};
    use crate::symfun::{power_sums_from_elementary, ElementarySequence};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn worked_example() {
        let b = ints(&[1, 2, 4, 8, 16]);
        let want = vec![rat(1, 1), rat(2, 3), rat(8, 15), rat(136, 315)];
        assert_eq!(explicit_p_formulas(&b, 4).unwrap().into_values(), want);
        assert_eq!(p_from_b_recurrence(&b, 4).unwrap().into_values(), want);
        assert_eq!(p_from_b_closed_form(&b, 4).unwrap().into_values(), want);
    }

    #[test]
    fn zero_b2_gives_zero_p1() {
        let b = ints(&[3, 0, 5]);
        assert_eq!(explicit_p_formulas(&b, 1).unwrap().values()[0], rat(0, 1));
    }

    #[test]
    fn zero_b0_rejected() {
        let b = ints(&[0, 1, 2, 3, 4]);
        assert_eq!(explicit_p_formulas(&b, 4).unwrap_err(), Error::ZeroB0);
        assert_eq!(p_from_b_recurrence(&b, 4).unwrap_err(), Error::ZeroB0);
    }

    #[test]
    fn matches_newton_pipeline_symbolically() {
        // b_0 = 1 and b_(2i) = x_i keeps everything in Q(x_1..x_4)
        let mut b = vec![RationalFunction::constant(
            RationalFunction::symbol("x1").vars().clone(),
            rat(1, 1),
        )];
        for i in 1..=4 {
            b.push(RationalFunction::symbol(&format!("x{i}")));
        }
        let e: Vec<RationalFunction> = (0..=4).map(|i| scaled_b(&b, i, false).unwrap()).collect();
        let generic = power_sums_from_elementary(&ElementarySequence::new(e).unwrap(), 4).unwrap();
        let explicit = explicit_p_formulas(&b, 4).unwrap();
        for (x, y) in explicit.values().iter().zip(generic.values()) {
            assert!(
                x.sub(y).is_zero(),
                "{} vs {}",
                x.to_canonical_string(),
                y.to_canonical_string()
            );
        }
    }
}
