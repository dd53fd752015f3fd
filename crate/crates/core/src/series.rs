//! Truncated Taylor series at the origin and the maps from coefficients to
//! elementary values and power sums.

use crate::error::{Error, Result};
use crate::scalars::{binomial, Field, Rational, Scalar, Values};
use crate::symfun::{ElementarySequence, PowerSumSequence};

/// Coefficients `a_0..a_N` of a series at 0.
///
/// A *polynomial* series is exact: every coefficient past `a_N` is zero.
/// Otherwise the series is a truncation and only the stored prefix is known.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
    polynomial: bool,
}

impl<T: Field> TruncatedSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InsufficientCoefficients {
                needed: 1,
                available: 0,
            });
        }
        Ok(TruncatedSeries {
            coeffs,
            polynomial: false,
        })
    }

    pub fn polynomial(coeffs: Vec<T>) -> Result<Self> {
        let mut s = Self::new(coeffs)?;
        s.polynomial = true;
        Ok(s)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_polynomial(&self) -> bool {
        self.polynomial
    }

    /// Highest stored index `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn coeff(&self, n: usize) -> Result<T> {
        match self.coeffs.get(n) {
            Some(c) => Ok(c.clone()),
            None if self.polynomial => Ok(self.coeffs[0].zero_like()),
            None => Err(Error::InsufficientCoefficients {
                needed: n + 1,
                available: self.coeffs.len(),
            }),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.coeffs[0].is_one()
    }

    /// Divides through by `a_0`.
    pub fn normalized(&self) -> Result<Self> {
        let inv = self.coeffs[0].inv().ok_or(Error::NotNormalized)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.mul(&inv)).collect(),
            polynomial: self.polynomial,
        })
    }

    /// `f * g` to the shorter truncation order (or exactly, for two polynomials).
    pub fn mul(&self, other: &Self) -> Self {
        let n = if self.polynomial && other.polynomial {
            self.coeffs.len() + other.coeffs.len() - 1
        } else {
            match (self.polynomial, other.polynomial) {
                (true, false) => other.coeffs.len(),
                (false, true) => self.coeffs.len(),
                _ => self.coeffs.len().min(other.coeffs.len()),
            }
        };
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TruncatedSeries {
            coeffs: out,
            polynomial: self.polynomial && other.polynomial,
        }
    }

    /// `f'`, one order shorter for truncations.
    pub fn derivative(&self) -> Self {
        let mut coeffs: Vec<T> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c.mul_rational(&Rational::from(n as i64)))
            .collect();
        if coeffs.is_empty() {
            coeffs.push(self.coeffs[0].zero_like());
        }
        TruncatedSeries {
            coeffs,
            polynomial: self.polynomial,
        }
    }

    /// Horner evaluation of the stored coefficients.
    pub fn eval(&self, z: &T) -> T {
        let mut acc = self.coeffs[0].zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        acc
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> TruncatedSeries<U> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
            polynomial: self.polynomial,
        }
    }
}

/// `e_k = (-1)^k a_k` for a normalized series.
pub fn elementary_from_series<T: Field>(f: &TruncatedSeries<T>) -> Result<ElementarySequence<T>> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let values = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, a)| if k % 2 == 1 { a.neg() } else { a.clone() })
        .collect();
    if f.polynomial {
        ElementarySequence::finite(values)
    } else {
        ElementarySequence::new(values)
    }
}

/// Coefficients `g_0..g_(N-1)` of `f'/f`, so that `g_k = -p_(k+1)`.
pub fn log_derivative_series<T: Field>(
    f: &TruncatedSeries<T>,
    n: usize,
) -> Result<TruncatedSeries<T>> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if !f.polynomial && n > f.order() {
        return Err(Error::InsufficientCoefficients {
            needed: n + 1,
            available: f.coeffs.len(),
        });
    }
    let mut g: Vec<T> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = f.coeff(k + 1)?.mul_rational(&Rational::from(k as i64 + 1));
        for i in 1..=k.min(f.coeffs.len() - 1) {
            acc = acc.sub(&f.coeffs[i].mul(&g[k - i]));
        }
        g.push(acc);
    }
    if g.is_empty() {
        g.push(f.coeffs[0].zero_like());
    }
    Ok(TruncatedSeries {
        coeffs: g,
        polynomial: false,
    })
}

/// `p_1..p_K` read off `-f'/f`.
pub fn power_sums_from_log_derivative<T: Field>(
    f: &TruncatedSeries<T>,
    k_max: usize,
) -> Result<PowerSumSequence<T>> {
    let g = log_derivative_series(f, k_max)?;
    Ok(PowerSumSequence::new(
        g.coeffs.iter().take(k_max).map(Field::neg).collect(),
    ))
}

/// Coefficients of `f(w + c)`, treating the stored coefficients as a polynomial.
pub fn taylor_shift<T: Field>(f: &TruncatedSeries<T>, c: &T) -> TruncatedSeries<T> {
    let n = f.coeffs.len();
    let mut cpow = vec![c.one_like()];
    for i in 1..n {
        cpow.push(cpow[i - 1].mul(c));
    }
    let coeffs = (0..n)
        .map(|m| {
            let mut acc = c.zero_like();
            for (k, a) in f.coeffs.iter().enumerate().skip(m) {
                let b = Rational::from(binomial(k as u32, m as u32));
                acc = acc.add(&a.mul(&cpow[k - m]).mul_rational(&b));
            }
            acc
        })
        .collect();
    TruncatedSeries {
        coeffs,
        polynomial: f.polynomial,
    }
}

/// Maps an even series `sum c_(2n) z^(2n)` to `sum c_(2n) z^n`.
///
/// Odd coefficients must vanish exactly in exact domains; in float domains
/// each must be negligible against the largest coefficient.
pub fn even_sqrt_reduce<T: Field>(
    g: &TruncatedSeries<T>,
    normalize: bool,
) -> Result<TruncatedSeries<T>> {
    for (index, c) in g.coeffs.iter().enumerate().skip(1).step_by(2) {
        let small =
            c.is_zero() || (!c.domain().is_exact() && g.coeffs.iter().any(|s| c.is_negligible(s)));
        if !small {
            return Err(Error::NotEven { index });
        }
    }
    let coeffs: Vec<T> = g.coeffs.iter().step_by(2).cloned().collect();
    let out = TruncatedSeries {
        coeffs,
        polynomial: g.polynomial,
    };
    if normalize {
        out.normalized()
    } else {
        Ok(out)
    }
}

/// [`power_sums_from_log_derivative`] on dynamically typed coefficients.
pub fn power_sums_from_log_derivative_scalars(
    a: &[Scalar],
    k_max: usize,
    polynomial: bool,
) -> Result<Vec<Scalar>> {
    let values = Values::from_scalars(a)?;
    crate::with_values!(values, |v| {
        let f = if polynomial {
            TruncatedSeries::polynomial(v)
        } else {
            TruncatedSeries::new(v)
        };
        f.and_then(|f| power_sums_from_log_derivative(&f, k_max))
            .map(PowerSumSequence::into_values)
    })
}
