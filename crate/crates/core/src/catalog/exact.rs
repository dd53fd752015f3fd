//! Closed-form Taylor coefficients `e_k` for the functions whose coefficients
//! are rational in their parameters.
//!
//! Each constructor is generic over the coefficient field, so the same
//! recurrence yields symbolic (`RationalFunction`), exact (`Rational`) and
//! float values.

use crate::error::{Error, Result};
use crate::scalars::{format_rational, Field, Rational, RationalFunction};
use crate::symfun::ElementarySequence;

fn checked_div<T: Field>(x: &T, d: &T, name: &str) -> Result<T> {
    x.div(d).ok_or_else(|| Error::PoleAtParameter {
        name: name.into(),
        value: format!("{d:?}"),
    })
}

/// `sin(sqrt(t z))/sqrt(t z)`: `e_k = t^k/(2k+1)!`.
pub fn sinc_coeffs_in<T: Field>(t: &T, k_max: usize) -> Result<ElementarySequence<T>> {
    let mut e = vec![t.one_like()];
    for k in 1..=k_max {
        let prev = e[k - 1].mul(t);
        e.push(prev.mul_rational(&Rational::from((1, (2 * k * (2 * k + 1)) as i64))));
    }
    ElementarySequence::new(e)
}

/// Bessel `J_nu`: `e_k = 1/(k! 4^k (nu+1)_k)`.
pub fn bessel_coeffs_in<T: Field>(nu: &T, k_max: usize) -> Result<ElementarySequence<T>> {
    let mut e = vec![nu.one_like()];
    for k in 1..=k_max {
        let d = nu
            .add(&nu.from_i64_like(k as i64))
            .mul_rational(&Rational::from(4 * k as i64));
        let next = checked_div(&e[k - 1], &d, "nu")?;
        e.push(next);
    }
    ElementarySequence::new(e)
}

/// q-Bessel: `e_k = q^(k^2) t^k/((q;q)_k (q t;q)_k 4^k)` with `t = q^nu`.
pub fn qbessel_coeffs_in<T: Field>(q: &T, t_nu: &T, k_max: usize) -> Result<ElementarySequence<T>> {
    let one = q.one_like();
    let mut e = vec![one.clone()];
    let mut qk = one.clone();
    for k in 1..=k_max {
        // q^(2k-1) = q^(k^2 - (k-1)^2)
        let step = qk.mul(&qk).mul(q);
        qk = qk.mul(q);
        let d = one
            .sub(&qk)
            .mul(&one.sub(&qk.mul(t_nu)))
            .mul_rational(&Rational::from(4));
        e.push(checked_div(&e[k - 1].mul(&step).mul(t_nu), &d, "q")?);
    }
    ElementarySequence::new(e)
}

/// Ramanujan's `A_q`: `e_k = q^(k^2)/(q;q)_k`.
pub fn ramanujan_aq_coeffs_in<T: Field>(q: &T, k_max: usize) -> Result<ElementarySequence<T>> {
    let one = q.one_like();
    let mut e = vec![one.clone()];
    let mut qk = one.clone();
    for k in 1..=k_max {
        let step = qk.mul(&qk).mul(q);
        qk = qk.mul(q);
        e.push(checked_div(&e[k - 1].mul(&step), &one.sub(&qk), "q")?);
    }
    ElementarySequence::new(e)
}

/// `e_k` over `Q(t)` where `t` stands for `pi^2`.
pub fn sinc_coeffs(k_max: usize) -> Result<ElementarySequence<RationalFunction>> {
    sinc_coeffs_in(&RationalFunction::symbol("t"), k_max)
}

/// `e_k` over `Q(nu)`.
pub fn bessel_coeffs(k_max: usize) -> Result<ElementarySequence<RationalFunction>> {
    bessel_coeffs_in(&RationalFunction::symbol("nu"), k_max)
}

/// `e_k` over `Q(q, t_nu)`.
pub fn qbessel_coeffs(k_max: usize) -> Result<ElementarySequence<RationalFunction>> {
    qbessel_coeffs_in(
        &RationalFunction::symbol("q"),
        &RationalFunction::symbol("t_nu"),
        k_max,
    )
}

/// `e_k` over `Q(q)`.
pub fn ramanujan_aq_coeffs(k_max: usize) -> Result<ElementarySequence<RationalFunction>> {
    ramanujan_aq_coeffs_in(&RationalFunction::symbol("q"), k_max)
}

pub fn check_nu(nu: &Rational) -> Result<()> {
    if *nu <= -1 {
        if nu.denom() == &1 {
            return Err(Error::PoleAtParameter {
                name: "nu".into(),
                value: format_rational(nu),
            });
        }
        return Err(Error::ParameterOutOfRange(format!(
            "nu = {} must exceed -1",
            format_rational(nu)
        )));
    }
    Ok(())
}

pub fn check_q(q: &Rational) -> Result<()> {
    if *q <= 0 || *q >= 1 {
        return Err(Error::ParameterOutOfRange(format!(
            "q = {} must lie in (0, 1)",
            format_rational(q)
        )));
    }
    Ok(())
}

/// Rational `e_k` for rational `nu > -1`.
pub fn bessel_coeffs_rational(nu: &Rational, k_max: usize) -> Result<ElementarySequence<Rational>> {
    check_nu(nu)?;
    bessel_coeffs_in(nu, k_max)
}

/// Rational `e_k` for rational `q` in `(0, 1)` and integer `nu`, so that
/// `q^nu` is rational.
pub fn qbessel_coeffs_rational(
    q: &Rational,
    nu: i32,
    k_max: usize,
) -> Result<ElementarySequence<Rational>> {
    check_q(q)?;
    if nu <= -1 {
        return Err(Error::ParameterOutOfRange(format!(
            "nu = {nu} must exceed -1"
        )));
    }
    let t = q.pow_u(nu as u32);
    qbessel_coeffs_in(q, &t, k_max)
}

pub fn ramanujan_aq_coeffs_rational(
    q: &Rational,
    k_max: usize,
) -> Result<ElementarySequence<Rational>> {
    check_q(q)?;
    ramanujan_aq_coeffs_in(q, k_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use crate::symfun::power_sums_from_elementary;

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::symbol(s)
    }

    #[test]
    fn sinc_examples() {
        let e = sinc_coeffs(3).unwrap();
        let t = rf("t");
        assert_eq!(e.values()[0], t.one_like());
        assert_eq!(e.values()[1], t.mul_rational(&rat(1, 6)));
        assert_eq!(e.values()[3], t.pow_u(3).mul_rational(&rat(1, 5040)));
    }

    #[test]
    fn bessel_rayleigh_sums() {
        let e = bessel_coeffs(3).unwrap();
        let nu = rf("nu");
        let one = nu.one_like();
        let nu1 = nu.add(&one);
        let nu2 = nu.add(&one.from_i64_like(2));
        assert_eq!(e.values()[1], nu1.mul_rational(&rat(4, 1)).inv().unwrap());
        let p = power_sums_from_elementary(&e, 2).unwrap();
        assert_eq!(p.values()[0], e.values()[1]);
        let want = nu1
            .mul(&nu1)
            .mul(&nu2)
            .mul_rational(&rat(16, 1))
            .inv()
            .unwrap();
        assert_eq!(p.values()[1], want);
        assert_eq!(p.values()[1].to_string(), "(1/16)/((nu + 1)^2*(nu + 2))");
    }

    #[test]
    fn bessel_poles_and_range() {
        assert!(matches!(
            bessel_coeffs_rational(&rat(-1, 1), 3),
            Err(Error::PoleAtParameter { .. })
        ));
        assert!(matches!(
            bessel_coeffs_rational(&rat(-3, 2), 3),
            Err(Error::ParameterOutOfRange(_))
        ));
        let e = bessel_coeffs_rational(&rat(0, 1), 2).unwrap();
        assert_eq!(e.values()[2], rat(1, 64));
    }

    #[test]
    fn qbessel_examples() {
        let e = qbessel_coeffs(1).unwrap();
        let (q, t) = (rf("q"), rf("t_nu"));
        let one = q.one_like();
        let want = q
            .mul(&t)
            .div(
                &one.sub(&q)
                    .mul(&one.sub(&q.mul(&t)))
                    .mul_rational(&rat(4, 1)),
            )
            .unwrap();
        assert_eq!(e.values()[1], want);
        let e = qbessel_coeffs_rational(&rat(1, 2), 0, 2).unwrap();
        assert_eq!(e.values()[1], rat(1, 2));
        assert_eq!(e.values()[0], rat(1, 1));
    }

    #[test]
    fn ramanujan_examples() {
        let e = ramanujan_aq_coeffs(2).unwrap();
        let q = rf("q");
        let one = q.one_like();
        let p = power_sums_from_elementary(&e, 2).unwrap();
        assert_eq!(p.values()[0], q.div(&one.sub(&q)).unwrap());
        let e2 = q
            .pow_u(4)
            .div(&one.sub(&q).mul(&one.sub(&q.pow_u(2))))
            .unwrap();
        let want = q
            .pow_u(2)
            .div(&one.sub(&q).pow_u(2))
            .unwrap()
            .sub(&e2.mul_rational(&rat(2, 1)));
        assert_eq!(p.values()[1], want);
        let pr =
            power_sums_from_elementary(&ramanujan_aq_coeffs_rational(&rat(1, 2), 1).unwrap(), 1)
                .unwrap();
        assert_eq!(pr.values()[0], rat(1, 1));
    }

    #[test]
    fn symbolic_matches_rational_evaluation() {
        let sym = qbessel_coeffs(5).unwrap();
        let num = qbessel_coeffs_rational(&rat(1, 3), 2, 5).unwrap();
        for (s, n) in sym.values().iter().zip(num.values()) {
            let vars: Vec<Rational> = s
                .vars()
                .iter()
                .map(|v| if v == "q" { rat(1, 3) } else { rat(1, 9) })
                .collect();
            assert_eq!(&s.eval_with(&vars, &rat(1, 1)).unwrap(), n);
        }
    }
}
