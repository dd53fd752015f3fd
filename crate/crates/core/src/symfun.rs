//! Newton identities between elementary symmetric values `e_k` and power
//! sums `p_k` of an absolutely summable sequence.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{factorial, Domain, Field, Rational, Scalar, Values};

/// `e_0 = 1, e_1, ..., e_K`.
///
/// A *truncated* sequence knows only its stored prefix; a *finite* one (the
/// zeros of a polynomial) has `e_k = 0` beyond its length.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementarySequence<T> {
    values: Vec<T>,
    finite: bool,
}

impl<T: Field> ElementarySequence<T> {
    /// `values[0]` must be one.
    pub fn new(values: Vec<T>) -> Result<Self> {
        match values.first() {
            Some(e0) if e0.is_one() => Ok(ElementarySequence {
                values,
                finite: false,
            }),
            Some(_) => Err(Error::NotNormalized),
            None => Err(Error::InsufficientCoefficients {
                needed: 1,
                available: 0,
            }),
        }
    }

    /// Elementary values of a finite sequence: entries past the end are zero.
    pub fn finite(values: Vec<T>) -> Result<Self> {
        let mut s = Self::new(values)?;
        s.finite = true;
        Ok(s)
    }

    /// Builds `1, e_1, ..., e_K` from the tail `e_1..e_K`.
    pub fn from_tail(like: &T, tail: Vec<T>) -> Self {
        let mut values = Vec::with_capacity(tail.len() + 1);
        values.push(like.one_like());
        values.extend(tail);
        ElementarySequence {
            values,
            finite: false,
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    /// Largest index available without extrapolation.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn domain(&self) -> Domain {
        self.values[0].domain()
    }

    /// `e_k`, zero beyond the end of a finite sequence.
    pub fn get(&self, k: usize) -> Result<T> {
        match self.values.get(k) {
            Some(v) => Ok(v.clone()),
            None if self.finite => Ok(self.values[0].zero_like()),
            None => Err(Error::InsufficientCoefficients {
                needed: k + 1,
                available: self.values.len(),
            }),
        }
    }

    fn prefix(&self, k: usize) -> Result<Vec<T>> {
        (0..=k).map(|i| self.get(i)).collect()
    }
}

/// `p_1, ..., p_K`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSumSequence<T> {
    values: Vec<T>,
}

impl<T: Field> PowerSumSequence<T> {
    pub fn new(values: Vec<T>) -> Self {
        PowerSumSequence { values }
    }

    /// `values()[k - 1] == p_k`.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `p_k` for `k >= 1`.
    pub fn get(&self, k: usize) -> Option<&T> {
        k.checked_sub(1).and_then(|i| self.values.get(i))
    }
}

/// A partition of `k` as multiplicities: `r[i-1]` parts equal to `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    pub multiplicities: Vec<u32>,
}

impl Partition {
    pub fn weight(&self) -> u32 {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(i, r)| (i as u32 + 1) * r)
            .sum()
    }

    pub fn length(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    /// Parts in nonincreasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &r) in self.multiplicities.iter().enumerate().rev() {
            out.extend(std::iter::repeat(i as u32 + 1).take(r as usize));
        }
        out
    }

    fn from_parts(parts: &[u32]) -> Self {
        let largest = parts.first().copied().unwrap_or(0) as usize;
        let mut multiplicities = vec![0; largest];
        for &p in parts {
            multiplicities[p as usize - 1] += 1;
        }
        Partition { multiplicities }
    }
}

/// All partitions of `k`, largest part decreasing, then lexicographically
/// decreasing in the remaining parts.
pub fn enumerate_partitions(k: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_parts(current));
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(k, k, &mut Vec::new(), &mut out);
    }
    out
}

/// `p_1..p_K` by the Newton recurrence
/// `p_k = (-1)^(k-1) k e_k + sum_{i<k} (-1)^(k-1+i) e_(k-i) p_i`.
pub fn power_sums_from_elementary<T: Field>(
    e: &ElementarySequence<T>,
    k_max: usize,
) -> Result<PowerSumSequence<T>> {
    if k_max == 0 {
        return Ok(PowerSumSequence::new(Vec::new()));
    }
    let e = e.prefix(k_max)?;
    let mut p: Vec<T> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut acc = e[k].mul_rational(&Rational::from(k as i64));
        if k % 2 == 0 {
            acc = acc.neg();
        }
        for i in 1..k {
            let term = e[k - i].mul(&p[i - 1]);
            acc = if (k - 1 + i) % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        p.push(acc);
    }
    Ok(PowerSumSequence::new(p))
}

/// Integer weight `(-1)^k k (|r| - 1)! / prod r_i!` times `(-1)^|r|` from
/// the `(-e_i)^(r_i)` factors.
fn partition_weight(k: u32, part: &Partition) -> Rational {
    let len = part.length();
    let mut w = Rational::from(factorial(len - 1) * k);
    for &r in &part.multiplicities {
        w /= Rational::from(factorial(r));
    }
    if (k + len) % 2 == 1 {
        w = -w;
    }
    w
}

/// `p_k` as a sum over partitions of `k`.
pub fn power_sums_closed_form<T: Field>(e: &ElementarySequence<T>, k: usize) -> Result<T> {
    if k == 0 {
        return Err(Error::Unsupported("power sums start at k = 1".into()));
    }
    let e = e.prefix(k)?;
    let mut acc = e[0].zero_like();
    for part in enumerate_partitions(k as u32) {
        let mut term = e[0].from_rational_like(&partition_weight(k as u32, &part));
        for (i, &r) in part.multiplicities.iter().enumerate() {
            if r > 0 {
                term = term.mul(&e[i + 1].pow_u(r));
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Closed form for every `k = 1..=k_max`, evaluated in parallel.
pub fn power_sums_closed_form_all<T: Field>(
    e: &ElementarySequence<T>,
    k_max: usize,
) -> Result<PowerSumSequence<T>> {
    let values = (1..=k_max)
        .into_par_iter()
        .map(|k| power_sums_closed_form(e, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(PowerSumSequence::new(values))
}

/// `e_0..e_K` from `p_1..p_K` via `k e_k = sum_{i=1..k} (-1)^(i-1) e_(k-i) p_i`.
pub fn elementary_from_power_sums<T: Field>(
    p: &PowerSumSequence<T>,
    k_max: usize,
) -> Result<ElementarySequence<T>> {
    if p.len() < k_max {
        return Err(Error::InsufficientCoefficients {
            needed: k_max,
            available: p.len(),
        });
    }
    let Some(first) = p.values.first() else {
        return Err(Error::InsufficientCoefficients {
            needed: 1,
            available: 0,
        });
    };
    let mut e = vec![first.one_like()];
    for k in 1..=k_max {
        let mut acc = first.zero_like();
        for i in 1..=k {
            let term = e[k - i].mul(&p.values[i - 1]);
            acc = if i % 2 == 1 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        e.push(acc.mul_rational(&Rational::from((1, k as i64))));
    }
    Ok(ElementarySequence {
        values: e,
        finite: false,
    })
}

/// [`power_sums_from_elementary`] on dynamically typed values.
pub fn power_sums_from_elementary_scalars(
    e: &[Scalar],
    k_max: usize,
    finite: bool,
) -> Result<Vec<Scalar>> {
    let values = Values::from_scalars(e)?;
    crate::with_values!(values, |v| {
        let seq = if finite {
            ElementarySequence::finite(v)
        } else {
            ElementarySequence::new(v)
        };
        seq.and_then(|s| power_sums_from_elementary(&s, k_max))
            .map(PowerSumSequence::into_values)
    })
}

/// [`power_sums_closed_form`] on dynamically typed values.
pub fn power_sums_closed_form_scalars(e: &[Scalar], k: usize) -> Result<Scalar> {
    let values = Values::from_scalars(e)?;
    let out = crate::with_values!(values, |v| {
        ElementarySequence::new(v)
            .and_then(|s| power_sums_closed_form(&s, k))
            .map(|x| vec![x])
    })?;
    Ok(out.into_iter().next().expect("one value"))
}

/// [`elementary_from_power_sums`] on dynamically typed values.
pub fn elementary_from_power_sums_scalars(p: &[Scalar], k_max: usize) -> Result<Vec<Scalar>> {
    let values = Values::from_scalars(p)?;
    crate::with_values!(values, |v| {
        elementary_from_power_sums(&PowerSumSequence::new(v), k_max).map(|s| s.values)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, RationalFunction};

    fn seq(v: &[(i64, i64)]) -> ElementarySequence<Rational> {
        ElementarySequence::new(v.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn two_root_sequence() {
        let e = seq(&[(1, 1), (5, 6), (1, 6)]);
        let p = power_sums_from_elementary(&e, 2).unwrap();
        assert_eq!(p.values(), &[rat(5, 6), rat(13, 36)]);
        let e = ElementarySequence::finite(e.values().to_vec()).unwrap();
        let p = power_sums_from_elementary(&e, 3).unwrap();
        assert_eq!(p.values(), &[rat(5, 6), rat(13, 36), rat(35, 216)]);
        assert_eq!(power_sums_closed_form(&e, 2).unwrap(), rat(13, 36));
    }

    #[test]
    fn truncated_sequence_reports_shortfall() {
        let e = seq(&[(1, 1), (5, 6), (1, 6)]);
        assert_eq!(
            power_sums_from_elementary(&e, 3),
            Err(Error::InsufficientCoefficients {
                needed: 4,
                available: 3
            })
        );
    }

    #[test]
    fn single_root() {
        let e = ElementarySequence::finite(vec![rat(1, 1), rat(1, 1)]).unwrap();
        let p = power_sums_from_elementary(&e, 6).unwrap();
        assert!(p.values().iter().all(|x| *x == rat(1, 1)));
        assert_eq!(power_sums_closed_form(&e, 3).unwrap(), rat(1, 1));
    }

    #[test]
    fn first_power_sum_is_e1() {
        let e = seq(&[(1, 1), (7, 11), (3, 5)]);
        assert_eq!(power_sums_closed_form(&e, 1).unwrap(), rat(7, 11));
    }

    #[test]
    fn partition_counts_and_order() {
        assert_eq!(
            enumerate_partitions(1),
            vec![Partition {
                multiplicities: vec![1]
            }]
        );
        let p4: Vec<Vec<u32>> = enumerate_partitions(4)
            .iter()
            .map(Partition::parts)
            .collect();
        assert_eq!(
            p4,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
        assert_eq!(enumerate_partitions(10).len(), 42);
        assert!(enumerate_partitions(10).iter().all(|p| p.weight() == 10));
    }

    #[test]
    fn sinc_sums_in_t() {
        // e_k = t^k/(2k+1)!
        let t = RationalFunction::symbol("t");
        let e = ElementarySequence::from_tail(
            &t,
            (1..=3u32)
                .map(|k| {
                    t.pow_u(k)
                        .mul_rational(&Rational::from((1, factorial(2 * k + 1))))
                })
                .collect(),
        );
        let p = power_sums_from_elementary(&e, 3).unwrap();
        assert_eq!(p.values()[0], t.mul_rational(&rat(1, 6)));
        assert_eq!(p.values()[1], t.pow_u(2).mul_rational(&rat(1, 90)));
        assert_eq!(p.values()[2], t.pow_u(3).mul_rational(&rat(1, 945)));

        let back = elementary_from_power_sums(&PowerSumSequence::new(p.values()[..2].to_vec()), 2)
            .unwrap();
        assert_eq!(back.values()[2], t.pow_u(2).mul_rational(&rat(1, 120)));
    }

    #[test]
    fn inverse_round_trip() {
        let p = PowerSumSequence::new(vec![rat(5, 6), rat(13, 36), rat(35, 216)]);
        let e = elementary_from_power_sums(&p, 3).unwrap();
        assert_eq!(e.values(), &[rat(1, 1), rat(5, 6), rat(1, 6), rat(0, 1)]);
        let ones = PowerSumSequence::new(vec![rat(1, 1); 5]);
        let e = elementary_from_power_sums(&ones, 5).unwrap();
        assert_eq!(e.values()[1], rat(1, 1));
        assert!(e.values()[2..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn dynamic_versions_check_domains() {
        use crate::scalars::BigFloat;
        let mixed = vec![
            Scalar::Rational(rat(1, 1)),
            Scalar::Float(BigFloat::from_f64(0.5, 128)),
        ];
        assert!(matches!(
            power_sums_from_elementary_scalars(&mixed, 1, false),
            Err(Error::DomainMismatch(_))
        ));
        let ok = vec![
            Scalar::Rational(rat(1, 1)),
            Scalar::Rational(rat(5, 6)),
            Scalar::Rational(rat(1, 6)),
        ];
        assert_eq!(
            power_sums_closed_form_scalars(&ok, 2).unwrap(),
            Scalar::Rational(rat(13, 36))
        );
        let p = power_sums_from_elementary_scalars(&ok, 2, false).unwrap();
        let e = elementary_from_power_sums_scalars(&p, 2).unwrap();
        assert_eq!(e, ok);
    }
}
