//! Exact rationals backed by GMP.
//!
//! `rug::Rational` keeps numerator and denominator coprime with a positive
//! denominator, which is exactly the invariant we need.

use rug::Integer;

use super::field::{Domain, Field, Signed};
use super::sign::{SignVerdict, TolerancePolicy, Verdict};
use super::Scalar;
use crate::error::{Error, Result};

pub use rug::Rational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::from((n, d))
}

/// Serialized form: always `p/q`, even for integers.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q`, an integer, or a finite decimal (`0.25`, `-1.5e-3`) exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::ParseError(format!("not a rational: `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: Integer = p.trim().parse().map_err(|_| bad())?;
        let q: Integer = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::from((p, q)));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: Integer = format!("0{int_part}{frac_part}")
        .parse()
        .map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let mut value = Rational::from(all);
    let power = Integer::from(Integer::u_pow_u(10, scale.unsigned_abs()));
    if scale >= 0 {
        value *= power;
    } else {
        value /= power;
    }
    if negative {
        value = -value;
    }
    Ok(value)
}

/// n! as an exact integer.
pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: u32, k: u32) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n, k))
}

impl Field for Rational {
    fn domain(&self) -> Domain {
        Domain::Rational
    }
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
    fn inv(&self) -> Option<Self> {
        if self.cmp0().is_eq() {
            None
        } else {
            Some(self.clone().recip())
        }
    }
    fn is_zero(&self) -> bool {
        self.cmp0().is_eq()
    }
    fn is_negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }
    fn close_to(&self, other: &Self) -> bool {
        self == other
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Rational(self.clone())
    }
}

impl Signed for Rational {
    fn sign_decide(&self, _policy: &TolerancePolicy) -> Result<SignVerdict> {
        let verdict = if self.cmp0().is_lt() {
            Verdict::Negative
        } else {
            Verdict::Nonnegative
        };
        Ok(SignVerdict {
            verdict,
            margin: Scalar::Rational(Rational::from(self.abs_ref())),
        })
    }
    fn abs(&self) -> Self {
        Rational::from(self.abs_ref())
    }
    fn is_positive(&self) -> bool {
        self.cmp0().is_gt()
    }
    fn greater_than(&self, other: &Self) -> bool {
        self > other
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
    fn precision_bits(&self) -> Option<u32> {
        None
    }
}
