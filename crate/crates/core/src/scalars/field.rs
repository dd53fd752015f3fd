use std::fmt;

use serde::{Deserialize, Serialize};

use super::sign::{SignVerdict, TolerancePolicy};
use super::{Rational, Scalar};
use crate::error::Result;

/// Which coefficient domain a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Rational,
    RationalFunction,
    Float,
    Complex,
}

impl Domain {
    pub fn is_exact(self) -> bool {
        matches!(self, Domain::Rational | Domain::RationalFunction)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Domain::Rational => "rational",
            Domain::RationalFunction => "rational_function",
            Domain::Float => "float",
            Domain::Complex => "complex",
        };
        f.write_str(s)
    }
}

/// Field operations shared by every coefficient domain.
///
/// Constants are produced "like" an existing value so that context carried by
/// the value (precision, symbol list) propagates without a separate context
/// object.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    fn domain(&self) -> Domain;
    fn zero_like(&self) -> Self;
    fn from_rational_like(&self, q: &Rational) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` at zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;

    /// Exact domains: `self == 0`. Float domains: `|self| <= 2^(-prec/2) * |scale|`.
    fn is_negligible(&self, scale: &Self) -> bool;
    /// Exact domains: equality. Float domains: relative agreement to half the precision.
    fn close_to(&self, other: &Self) -> bool;

    fn to_scalar(&self) -> Scalar;

    /// Raise working precision (no-op for exact domains).
    fn with_extra_precision(&self, _bits: u32) -> Self {
        self.clone()
    }

    fn one_like(&self) -> Self {
        self.from_rational_like(&Rational::from(1))
    }

    fn from_i64_like(&self, n: i64) -> Self {
        self.from_rational_like(&Rational::from(n))
    }

    fn mul_rational(&self, q: &Rational) -> Self {
        self.mul(&self.from_rational_like(q))
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }

    fn pow_u(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Totally ordered domains where a sign can be decided.
pub trait Signed: Field {
    fn sign_decide(&self, policy: &TolerancePolicy) -> Result<SignVerdict>;
    fn abs(&self) -> Self;
    /// Strictly greater than zero (exact comparison of the stored value).
    fn is_positive(&self) -> bool;
    fn greater_than(&self, other: &Self) -> bool;
    fn to_f64(&self) -> f64;
    /// Working precision for float domains, `None` for exact ones.
    fn precision_bits(&self) -> Option<u32>;
}
