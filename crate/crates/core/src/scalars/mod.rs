//! Coefficient domains: exact rationals, multivariate rational functions,
//! MPFR floats and complex floats, plus the dynamically typed [`Scalar`].

mod field;
mod float;
mod poly;
mod ratfunc;
mod rational;
mod sign;

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

pub use field::{Domain, Field, Signed};
pub use float::{BigFloat, ComplexFloat, MIN_PRECISION};
pub use poly::{Exponents, Polynomial, Vars};
pub use ratfunc::RationalFunction;
pub use rational::{binomial, factorial, format_rational, parse_rational, rat, Rational};
pub use sign::{SignVerdict, TolerancePolicy, Verdict};

use crate::error::{Error, Result};

/// A value in one of the supported domains.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    RationalFunction(RationalFunction),
    Float(BigFloat),
    Complex(ComplexFloat),
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rational(_) => Domain::Rational,
            Scalar::RationalFunction(_) => Domain::RationalFunction,
            Scalar::Float(_) => Domain::Float,
            Scalar::Complex(_) => Domain::Complex,
        }
    }

    /// Lossless text form: `p/q`, canonical rational-function text, or the
    /// hex float encoding.
    pub fn encode(&self) -> String {
        match self {
            Scalar::Rational(q) => format_rational(q),
            Scalar::RationalFunction(f) => f.to_canonical_string(),
            Scalar::Float(x) => x.encode_hex(),
            Scalar::Complex(z) => z.encode(),
        }
    }

    /// Short decimal approximation for numeric domains.
    pub fn decimal(&self, digits: usize) -> Option<String> {
        match self {
            Scalar::Rational(q) => {
                Some(BigFloat::from_rational(q, 128.max(digits as u32 * 4)).to_decimal(digits))
            }
            Scalar::Float(x) => Some(x.to_decimal(digits)),
            Scalar::Complex(z) => Some(format!(
                "{}+{}i",
                z.re.to_decimal(digits),
                z.im.to_decimal(digits)
            )),
            Scalar::RationalFunction(_) => None,
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        match self {
            Scalar::Rational(q) => Some(q.to_f64()),
            Scalar::Float(x) => Some(x.to_f64()),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_float(&self) -> Option<&BigFloat> {
        match self {
            Scalar::Float(x) => Some(x),
            _ => None,
        }
    }

    pub fn to_bigfloat(&self, prec: u32) -> Result<BigFloat> {
        match self {
            Scalar::Rational(q) => Ok(BigFloat::from_rational(q, prec)),
            Scalar::Float(x) => Ok(x.with_prec(prec.max(x.prec()))),
            other => Err(Error::DomainMismatch(format!(
                "cannot convert {} to float",
                other.domain()
            ))),
        }
    }

    pub fn to_complex(&self, prec: u32) -> Result<ComplexFloat> {
        match self {
            Scalar::Complex(z) => Ok(z.with_extra_precision(prec.saturating_sub(z.prec()))),
            other => Ok(ComplexFloat::from_real(other.to_bigfloat(prec)?)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::RationalFunction(f) => f.is_zero(),
            Scalar::Float(x) => x.is_zero(),
            Scalar::Complex(z) => z.is_zero(),
        }
    }

    /// Sign decision. Only ordered domains qualify.
    pub fn sign_decide(&self, policy: &TolerancePolicy) -> Result<SignVerdict> {
        match self {
            Scalar::Rational(q) => q.sign_decide(policy),
            Scalar::Float(x) => x.sign_decide(policy),
            Scalar::RationalFunction(f) => match f.numerator().constant_value() {
                Some(c) if f.is_polynomial() => c.sign_decide(policy),
                _ => Err(Error::Unordered(format!("rational function {f}"))),
            },
            Scalar::Complex(z) => Err(Error::Unordered(format!("complex {z:?}"))),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Rational(q)
    }
}

impl From<BigFloat> for Scalar {
    fn from(x: BigFloat) -> Self {
        Scalar::Float(x)
    }
}

impl From<RationalFunction> for Scalar {
    fn from(f: RationalFunction) -> Self {
        Scalar::RationalFunction(f)
    }
}

impl From<ComplexFloat> for Scalar {
    fn from(z: ComplexFloat) -> Self {
        Scalar::Complex(z)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let decimal = self.decimal(20);
        let mut m = s.serialize_map(Some(if decimal.is_some() { 3 } else { 2 }))?;
        if let Some(d) = decimal {
            m.serialize_entry("approx", &d)?;
        }
        m.serialize_entry("domain", &self.domain())?;
        m.serialize_entry("value", &self.encode())?;
        m.end()
    }
}

/// Evaluates a rational function at named bindings.
pub fn eval_rational_function(
    f: &RationalFunction,
    point: &BTreeMap<String, Scalar>,
) -> Result<Scalar> {
    f.eval(point)
}

/// A homogeneous list of values in one domain.
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    Rational(Vec<Rational>),
    RationalFunction(Vec<RationalFunction>),
    Float(Vec<BigFloat>),
    Complex(Vec<ComplexFloat>),
}

impl Values {
    /// Requires every element to share one domain.
    pub fn from_scalars(xs: &[Scalar]) -> Result<Values> {
        let Some(first) = xs.first() else {
            return Ok(Values::Rational(Vec::new()));
        };
        let domain = first.domain();
        if let Some(bad) = xs.iter().find(|x| x.domain() != domain) {
            return Err(Error::DomainMismatch(format!(
                "{domain} mixed with {}",
                bad.domain()
            )));
        }
        Ok(match domain {
            Domain::Rational => {
                Values::Rational(xs.iter().filter_map(|x| x.as_rational().cloned()).collect())
            }
            Domain::Float => {
                Values::Float(xs.iter().filter_map(|x| x.as_float().cloned()).collect())
            }
            Domain::RationalFunction => Values::RationalFunction(
                xs.iter()
                    .filter_map(|x| match x {
                        Scalar::RationalFunction(f) => Some(f.clone()),
                        _ => None,
                    })
                    .collect(),
            ),
            Domain::Complex => Values::Complex(
                xs.iter()
                    .filter_map(|x| match x {
                        Scalar::Complex(z) => Some(z.clone()),
                        _ => None,
                    })
                    .collect(),
            ),
        })
    }

    pub fn into_scalars(self) -> Vec<Scalar> {
        match self {
            Values::Rational(v) => v.into_iter().map(Scalar::from).collect(),
            Values::RationalFunction(v) => v.into_iter().map(Scalar::from).collect(),
            Values::Float(v) => v.into_iter().map(Scalar::from).collect(),
            Values::Complex(v) => v.into_iter().map(Scalar::from).collect(),
        }
    }
}

/// Runs a generic computation on a [`Values`], returning scalars.
#[macro_export]
macro_rules! with_values {
    ($values:expr, |$v:ident| $body:expr) => {
        match $values {
            $crate::scalars::Values::Rational($v) => $body.map(|r| {
                r.into_iter()
                    .map($crate::scalars::Scalar::from)
                    .collect::<Vec<_>>()
            }),
            $crate::scalars::Values::RationalFunction($v) => $body.map(|r| {
                r.into_iter()
                    .map($crate::scalars::Scalar::from)
                    .collect::<Vec<_>>()
            }),
            $crate::scalars::Values::Float($v) => $body.map(|r| {
                r.into_iter()
                    .map($crate::scalars::Scalar::from)
                    .collect::<Vec<_>>()
            }),
            $crate::scalars::Values::Complex($v) => $body.map(|r| {
                r.into_iter()
                    .map($crate::scalars::Scalar::from)
                    .collect::<Vec<_>>()
            }),
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_domains_rejected() {
        let xs = vec![
            Scalar::Rational(rat(1, 2)),
            Scalar::Float(BigFloat::from_f64(0.5, 128)),
        ];
        assert!(matches!(
            Values::from_scalars(&xs),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn complex_has_no_sign() {
        let z = Scalar::Complex(ComplexFloat::i(128));
        assert!(matches!(
            z.sign_decide(&TolerancePolicy::default()),
            Err(Error::Unordered(_))
        ));
    }

    #[test]
    fn serializes_with_domain_tag() {
        let s = serde_json::to_value(Scalar::Rational(rat(-13, 36))).unwrap();
        assert_eq!(s["value"], "-13/36");
        assert_eq!(s["domain"], "rational");
    }
}
