//! Arbitrary-precision reals (MPFR) and complex numbers built on them.

use std::cmp::Ordering;
use std::fmt;

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::{Float, Integer};

use super::field::{Domain, Field, Signed};
use super::rational::Rational;
use super::sign::{SignVerdict, TolerancePolicy, Verdict};
use super::Scalar;
use crate::error::{Error, Result};

pub const MIN_PRECISION: u32 = 64;

/// An MPFR float. Binary operations run at the larger of the two precisions.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigFloat(Float);

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat(Float::new(prec.max(MIN_PRECISION)))
    }

    pub fn from_float(x: Float) -> Self {
        if x.prec() < MIN_PRECISION {
            let p = MIN_PRECISION;
            return BigFloat(Float::with_val(p, x));
        }
        BigFloat(x)
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        BigFloat(Float::with_val(prec.max(MIN_PRECISION), x))
    }

    pub fn from_i64(x: i64, prec: u32) -> Self {
        BigFloat(Float::with_val(prec.max(MIN_PRECISION), x))
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        BigFloat(Float::with_val(prec.max(MIN_PRECISION), q))
    }

    pub fn from_integer(n: &Integer, prec: u32) -> Self {
        BigFloat(Float::with_val(prec.max(MIN_PRECISION), n))
    }

    pub fn pi(prec: u32) -> Self {
        BigFloat(Float::with_val(prec.max(MIN_PRECISION), Constant::Pi))
    }

    /// Parses a decimal literal at the given precision.
    pub fn parse_decimal(s: &str, prec: u32) -> Result<Self> {
        let parsed =
            Float::parse(s.trim()).map_err(|e| Error::ParseError(format!("`{s}`: {e}")))?;
        Ok(BigFloat(Float::with_val(prec.max(MIN_PRECISION), parsed)))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn inner(&self) -> &Float {
        &self.0
    }

    pub fn into_inner(self) -> Float {
        self.0
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        BigFloat(Float::with_val(prec.max(MIN_PRECISION), &self.0))
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Exact rational value of a finite float.
    pub fn to_rational(&self) -> Option<Rational> {
        self.0.to_rational()
    }

    pub fn sqrt(&self) -> Self {
        BigFloat(self.0.clone().sqrt())
    }
    pub fn exp(&self) -> Self {
        BigFloat(self.0.clone().exp())
    }
    pub fn ln(&self) -> Self {
        BigFloat(self.0.clone().ln())
    }
    pub fn cos(&self) -> Self {
        BigFloat(self.0.clone().cos())
    }
    pub fn sin(&self) -> Self {
        BigFloat(self.0.clone().sin())
    }
    pub fn gamma(&self) -> Self {
        BigFloat(self.0.clone().gamma())
    }
    pub fn powf(&self, e: &BigFloat) -> Self {
        let p = self.prec().max(e.prec());
        BigFloat(Float::with_val(p, (&self.0).pow(&e.0)))
    }
    pub fn powi(&self, e: i32) -> Self {
        BigFloat(Float::with_val(self.prec(), (&self.0).pow(e)))
    }
    pub fn mul_2exp(&self, e: i32) -> Self {
        BigFloat(Float::with_val(self.prec(), &self.0 << e))
    }
    pub fn max(&self, other: &Self) -> Self {
        if self.0 >= other.0 {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Exact serialization `0x<hex mantissa>p<binary exponent>@<precision>`.
    pub fn encode_hex(&self) -> String {
        match self.0.to_integer_exp() {
            Some((m, e)) => {
                let sign = if m.cmp0() == Ordering::Less { "-" } else { "" };
                format!("{sign}0x{:x}p{e}@{}", m.abs(), self.prec())
            }
            None if self.0.is_nan() => format!("nan@{}", self.prec()),
            None if self.0.is_sign_negative() => format!("-inf@{}", self.prec()),
            None => format!("inf@{}", self.prec()),
        }
    }

    pub fn decode_hex(s: &str) -> Result<Self> {
        let bad = || Error::ParseError(format!("bad float encoding `{s}`"));
        let (body, prec) = s.rsplit_once('@').ok_or_else(bad)?;
        let prec: u32 = prec.parse().map_err(|_| bad())?;
        let (neg, body) = match body.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, body),
        };
        let body = body.strip_prefix("0x").ok_or_else(bad)?;
        let (mant, exp) = body.split_once('p').ok_or_else(bad)?;
        let mant = Integer::from_str_radix(mant, 16).map_err(|_| bad())?;
        let exp: i32 = exp.parse().map_err(|_| bad())?;
        let mut x = Float::with_val(prec.max(MIN_PRECISION), mant);
        x <<= exp;
        if neg {
            x = -x;
        }
        Ok(BigFloat(x))
    }

    /// Decimal approximation with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".into();
        }
        let raw = self
            .0
            .to_string_radix_round(10, Some(digits.max(1)), Round::Nearest);
        tidy_decimal(&raw)
    }

    /// True when `|self| <= 2^log2_bound`.
    pub fn abs_le_pow2(&self, log2_bound: f64) -> bool {
        if self.0.is_zero() {
            return true;
        }
        let a = Float::with_val(self.prec(), self.0.abs_ref());
        let lg = Float::with_val(64, a.log2_ref()).to_f64();
        lg <= log2_bound
    }
}

/// Rewrites MPFR output such as `5.0000e-1` as `0.5`, switching to
/// scientific notation outside `1e-6 ..= 1e21`.
fn tidy_decimal(raw: &str) -> String {
    let (sign, body) = match raw.strip_prefix('-') {
        Some(b) => ("-", b),
        None => ("", raw),
    };
    let (mant, exp) = match body.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    if !mant.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        return raw.to_string();
    }
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let all: String = format!("{int_part}{frac_part}");
    let lead = all.len() - all.trim_start_matches('0').len();
    let digits = all.trim_start_matches('0').trim_end_matches('0');
    if digits.is_empty() {
        return "0".into();
    }
    // value = 0.digits * 10^point
    let point = int_part.len() as i64 - lead as i64 + exp;
    let sci = point - 1;
    if (-6..21).contains(&sci) {
        if point <= 0 {
            format!("{sign}0.{}{digits}", "0".repeat((-point) as usize))
        } else if point as usize >= digits.len() {
            format!(
                "{sign}{digits}{}",
                "0".repeat(point as usize - digits.len())
            )
        } else {
            let (a, b) = digits.split_at(point as usize);
            format!("{sign}{a}.{b}")
        }
    } else if digits.len() == 1 {
        format!("{sign}{digits}e{sci}")
    } else {
        format!("{sign}{}.{}e{sci}", &digits[..1], &digits[1..])
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.to_decimal(20), self.prec())
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(20))
    }
}

fn joint(a: &BigFloat, b: &BigFloat) -> u32 {
    a.prec().max(b.prec())
}

impl Field for BigFloat {
    fn domain(&self) -> Domain {
        Domain::Float
    }
    fn zero_like(&self) -> Self {
        BigFloat::zero(self.prec())
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        BigFloat::from_rational(q, self.prec())
    }
    fn add(&self, rhs: &Self) -> Self {
        BigFloat(Float::with_val(joint(self, rhs), &self.0 + &rhs.0))
    }
    fn sub(&self, rhs: &Self) -> Self {
        BigFloat(Float::with_val(joint(self, rhs), &self.0 - &rhs.0))
    }
    fn mul(&self, rhs: &Self) -> Self {
        BigFloat(Float::with_val(joint(self, rhs), &self.0 * &rhs.0))
    }
    fn neg(&self) -> Self {
        BigFloat(Float::with_val(self.prec(), -&self.0))
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(BigFloat(Float::with_val(self.prec(), self.0.recip_ref())))
        }
    }
    // correctly rounded, so x/x is exactly one
    fn div(&self, rhs: &Self) -> Option<Self> {
        if rhs.0.is_zero() {
            None
        } else {
            Some(BigFloat(Float::with_val(
                joint(self, rhs),
                &self.0 / &rhs.0,
            )))
        }
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_negligible(&self, scale: &Self) -> bool {
        if self.0.is_zero() {
            return true;
        }
        if scale.0.is_zero() {
            return false;
        }
        let lg_scale = Float::with_val(
            64,
            Float::with_val(scale.prec(), scale.0.abs_ref()).log2_ref(),
        )
        .to_f64();
        self.abs_le_pow2(lg_scale - self.prec() as f64 / 2.0)
    }
    fn close_to(&self, other: &Self) -> bool {
        let d = self.sub(other);
        let big = self.abs().max(&other.abs());
        d.is_zero() || d.is_negligible(&big)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Float(self.clone())
    }
    fn with_extra_precision(&self, bits: u32) -> Self {
        self.with_prec(self.prec() + bits)
    }
}

impl Signed for BigFloat {
    fn sign_decide(&self, policy: &TolerancePolicy) -> Result<SignVerdict> {
        if !self.0.is_finite() {
            return Err(Error::NonFinite);
        }
        let margin = Scalar::Float(self.abs());
        let verdict = if self.0.cmp0() != Some(Ordering::Less) {
            Verdict::Nonnegative
        } else if self.abs_le_pow2(policy.threshold_log2(self.prec())) {
            Verdict::Indeterminate
        } else {
            Verdict::Negative
        };
        Ok(SignVerdict { verdict, margin })
    }
    fn abs(&self) -> Self {
        BigFloat(Float::with_val(self.prec(), self.0.abs_ref()))
    }
    fn is_positive(&self) -> bool {
        self.0.cmp0() == Some(Ordering::Greater)
    }
    fn greater_than(&self, other: &Self) -> bool {
        self.0 > other.0
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn precision_bits(&self) -> Option<u32> {
        Some(self.prec())
    }
}

/// A complex number as a pair of [`BigFloat`]s.
#[derive(Clone, PartialEq)]
pub struct ComplexFloat {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl ComplexFloat {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        let p = joint(&re, &im);
        ComplexFloat {
            re: re.with_prec(p),
            im: im.with_prec(p),
        }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexFloat {
            re: BigFloat::zero(prec),
            im: BigFloat::zero(prec),
        }
    }

    pub fn from_real(re: BigFloat) -> Self {
        let im = re.zero_like();
        ComplexFloat { re, im }
    }

    pub fn i(prec: u32) -> Self {
        ComplexFloat {
            re: BigFloat::zero(prec),
            im: BigFloat::from_i64(1, prec),
        }
    }

    pub fn prec(&self) -> u32 {
        joint(&self.re, &self.im)
    }

    pub fn conj(&self) -> Self {
        ComplexFloat {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, x: &BigFloat) -> Self {
        ComplexFloat {
            re: self.re.mul(x),
            im: self.im.mul(x),
        }
    }

    pub fn encode(&self) -> String {
        format!("({},{})", self.re.encode_hex(), self.im.encode_hex())
    }
}

impl fmt::Debug for ComplexFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl Field for ComplexFloat {
    fn domain(&self) -> Domain {
        Domain::Complex
    }
    fn zero_like(&self) -> Self {
        ComplexFloat::zero(self.prec())
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        ComplexFloat::from_real(BigFloat::from_rational(q, self.prec()))
    }
    fn add(&self, rhs: &Self) -> Self {
        ComplexFloat {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        ComplexFloat {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        ComplexFloat {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }
    fn neg(&self) -> Self {
        ComplexFloat {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr().inv()?;
        Some(self.conj().scale(&n))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_negligible(&self, scale: &Self) -> bool {
        let s = scale.abs();
        self.re.is_negligible(&s) && self.im.is_negligible(&s)
    }
    fn close_to(&self, other: &Self) -> bool {
        let d = self.sub(other);
        let big = self.abs().max(&other.abs());
        d.is_zero() || d.abs().is_negligible(&big)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Complex(self.clone())
    }
    fn with_extra_precision(&self, bits: u32) -> Self {
        ComplexFloat {
            re: self.re.with_extra_precision(bits),
            im: self.im.with_extra_precision(bits),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn hex_round_trip_is_exact() {
        for x in [0.0, 1.0, -2.5, 1e-300, 0.1] {
            let a = BigFloat::from_f64(x, 256)
                .div(&BigFloat::from_i64(3, 256))
                .unwrap();
            let b = BigFloat::decode_hex(&a.encode_hex()).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.prec(), b.prec());
        }
    }

    #[test]
    fn self_quotient_is_one() {
        for d in ["0.3371", "2.82541995429991653849246877471", "7e-40"] {
            let x = BigFloat::parse_decimal(d, 256)
                .unwrap()
                .mul(&BigFloat::pi(256));
            assert!(x.div(&x).unwrap().is_one(), "{d}");
        }
    }

    #[test]
    fn sign_rule_at_256_bits() {
        let p = TolerancePolicy::default();
        let tiny_neg = BigFloat::parse_decimal("-1e-200", 256).unwrap();
        assert_eq!(
            tiny_neg.sign_decide(&p).unwrap().verdict,
            Verdict::Indeterminate
        );
        let neg = BigFloat::parse_decimal("-1e-20", 256).unwrap();
        assert_eq!(neg.sign_decide(&p).unwrap().verdict, Verdict::Negative);
        let zero = BigFloat::zero(256);
        assert_eq!(zero.sign_decide(&p).unwrap().verdict, Verdict::Nonnegative);
        let pos = BigFloat::parse_decimal("1e-300", 256).unwrap();
        assert_eq!(pos.sign_decide(&p).unwrap().verdict, Verdict::Nonnegative);
        let nan = BigFloat::from_f64(f64::NAN, 256);
        assert_eq!(nan.sign_decide(&p), Err(Error::NonFinite));
    }

    #[test]
    fn precision_override_widens_band() {
        let x = BigFloat::parse_decimal("-1e-30", 256).unwrap();
        let p = TolerancePolicy::default().with_precision(128);
        assert_eq!(x.sign_decide(&p).unwrap().verdict, Verdict::Indeterminate);
    }

    #[test]
    fn mixed_precision_uses_max() {
        let a = BigFloat::from_i64(1, 64);
        let b = BigFloat::from_i64(3, 300);
        assert_eq!(a.add(&b).prec(), 300);
        let third = a.with_prec(300).div(&b).unwrap();
        assert!(third.close_to(&BigFloat::from_rational(&rat(1, 3), 300)));
    }

    #[test]
    fn complex_inverse() {
        let z = ComplexFloat::new(BigFloat::from_i64(3, 128), BigFloat::from_i64(4, 128));
        let w = z.mul(&z.inv().unwrap());
        assert!(w.close_to(&z.one_like()));
    }

    #[test]
    fn decimal_text() {
        let d = |x: f64| BigFloat::from_f64(x, 128).to_decimal(17);
        assert_eq!(d(0.5), "0.5");
        assert_eq!(d(123.25), "123.25");
        assert_eq!(d(3.0), "3");
        assert_eq!(d(1e20), "100000000000000000000");
        assert_eq!(d(-1e-30), "-1.0000000000000001e-30");
        assert_eq!(d(0.0), "0");
        assert_eq!(d(1e-3), "0.001");
    }
}
