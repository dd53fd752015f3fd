//! Sparse multivariate polynomials with rational coefficients.
//!
//! Variables are kept as a sorted, deduplicated list of names; a monomial is
//! the exponent vector aligned with that list. Terms live in a `BTreeMap`, so
//! iteration order is lexicographic with the first variable most significant
//! and the leading term (lex order) is the last entry.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rug::Integer;

use super::field::Field;
use super::rational::Rational;

pub type Vars = Arc<[String]>;
pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Exponents, Rational>,
}

fn empty_vars() -> Vars {
    Arc::from(Vec::<String>::new())
}

impl Polynomial {
    pub fn zero(vars: Vars) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if c.cmp0().is_ne() {
            terms.insert(vec![0; vars.len()], c);
        }
        Polynomial { vars, terms }
    }

    pub fn rational(c: Rational) -> Self {
        Self::constant(empty_vars(), c)
    }

    /// The polynomial consisting of a single variable.
    pub fn var(name: &str) -> Self {
        let vars: Vars = Arc::from(vec![name.to_string()]);
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rational::from(1));
        Polynomial { vars, terms }
    }

    /// Builds from explicit `(exponents, coefficient)` pairs over `vars`,
    /// which must be sorted and unique.
    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
        let mut p = Polynomial::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len());
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_default())
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree of each term, maximum over terms; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True when every term has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.cmp0().is_eq() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().cmp0().is_eq() {
                    o.remove();
                }
            }
        }
    }

    /// Re-expresses over `target`, which must contain every variable of `self`.
    pub fn with_vars(&self, target: &Vars) -> Polynomial {
        if Arc::ptr_eq(&self.vars, target) || self.vars[..] == target[..] {
            return Polynomial {
                vars: target.clone(),
                terms: self.terms.clone(),
            };
        }
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .iter()
                    .position(|t| t == v)
                    .expect("target vars must be a superset")
            })
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; target.len()];
                for (i, &p) in positions.iter().enumerate() {
                    ne[p] = e[i];
                }
                (ne, c.clone())
            })
            .collect();
        Polynomial {
            vars: target.clone(),
            terms,
        }
    }

    /// Sorted union of two variable lists.
    pub fn union_vars(a: &Vars, b: &Vars) -> Vars {
        if Arc::ptr_eq(a, b) || a[..] == b[..] {
            return a.clone();
        }
        let mut all: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
        all.sort();
        all.dedup();
        Arc::from(all)
    }

    pub(crate) fn aligned(&self, other: &Polynomial) -> (Polynomial, Polynomial) {
        let u = Self::union_vars(&self.vars, &other.vars);
        (self.with_vars(&u), other.with_vars(&u))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (mut a, b) = self.aligned(other);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), Rational::from(-c)))
                .collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Polynomial {
        if q.cmp0().is_eq() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), Rational::from(c * q)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = self.aligned(other);
        let mut out = Polynomial::zero(a.vars.clone());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, Rational::from(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.vars.clone(), Rational::from(1));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by the monomial `c * x^shift`.
    fn mul_term(&self, shift: &[u32], c: &Rational) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| {
                    (
                        e.iter().zip(shift).map(|(a, b)| a + b).collect(),
                        Rational::from(x * c),
                    )
                })
                .collect(),
        }
    }

    /// Exact quotient `self / divisor` if the division leaves no remainder.
    ///
    /// Uses lex-order division: when `divisor | self`, the leading monomial of
    /// the remainder is always divisible by the divisor's leading monomial.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        let (mut rem, d) = self.aligned(divisor);
        let mut quotient = Polynomial::zero(rem.vars.clone());
        let (dlm, dlc) = {
            let (e, c) = d.leading_term().expect("nonzero divisor");
            (e.clone(), c.clone())
        };
        while let Some((rlm, rlc)) = rem.leading_term() {
            if rlm.iter().zip(&dlm).any(|(r, q)| r < q) {
                return None;
            }
            let shift: Exponents = rlm.iter().zip(&dlm).map(|(r, q)| r - q).collect();
            let c = Rational::from(rlc / &dlc);
            let step = d.mul_term(&shift, &c);
            quotient.add_term(shift, c);
            for (e, x) in step.terms {
                rem.add_term(e, -x);
            }
        }
        Some(quotient)
    }

    /// Per-variable minimum exponent across terms.
    pub fn monomial_content(&self) -> Exponents {
        let mut min: Option<Exponents> = None;
        for e in self.terms.keys() {
            min = Some(match min {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        min.unwrap_or_else(|| vec![0; self.vars.len()])
    }

    /// Splits `self = c * x^alpha * p` where `p` has integer coprime
    /// coefficients, no monomial content and a positive leading coefficient.
    pub fn decompose(&self) -> (Rational, Exponents, Polynomial) {
        assert!(!self.is_zero(), "cannot decompose zero");
        let alpha = self.monomial_content();
        let mut den_lcm = Integer::from(1);
        let mut num_gcd = Integer::new();
        for c in self.terms.values() {
            den_lcm.lcm_mut(c.denom());
            num_gcd.gcd_mut(c.numer());
        }
        let mut content = Rational::from((num_gcd, den_lcm));
        if self
            .leading_term()
            .map(|(_, c)| c.cmp0().is_lt())
            .unwrap_or(false)
        {
            content = -content;
        }
        let inv = content.clone().recip();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                (
                    e.iter().zip(&alpha).map(|(a, b)| a - b).collect(),
                    Rational::from(c * &inv),
                )
            })
            .collect();
        (
            content,
            alpha,
            Polynomial {
                vars: self.vars.clone(),
                terms,
            },
        )
    }

    /// Evaluates with values aligned to `self.vars()`.
    pub fn eval_with<T: Field>(&self, values: &[T], like: &T) -> T {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = like.zero_like();
        // cache powers per variable
        let mut powers: Vec<Vec<T>> = values.iter().map(|v| vec![v.one_like()]).collect();
        for (e, c) in &self.terms {
            let mut term = like.from_rational_like(c);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap().mul(&values[i]);
                    cache.push(next);
                }
                term = term.mul(&cache[k as usize]);
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            None => 0,
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.cmp0().is_lt();
            let mag = Rational::from(c.abs_ref());
            if n == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| {
                    if *k == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            let one = mag == 1;
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if one {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn q() -> Polynomial {
        Polynomial::var("q")
    }
    fn one() -> Polynomial {
        Polynomial::rational(rat(1, 1))
    }

    #[test]
    fn exact_division_and_failure() {
        // (q^3 - 1) / (q - 1) = q^2 + q + 1
        let num = q().pow(3).sub(&one());
        let den = q().sub(&one());
        let quo = num.div_exact(&den).unwrap();
        assert_eq!(quo, q().pow(2).add(&q()).add(&one()).with_vars(quo.vars()));
        assert!(q().pow(2).add(&one()).div_exact(&den).is_none());
    }

    #[test]
    fn multivariate_division() {
        let t = Polynomial::var("t");
        let a = one().sub(&q().mul(&t)); // 1 - q t
        let b = q().add(&t.pow(2));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b.with_vars(prod.vars()));
        assert_eq!(prod.div_exact(&b).unwrap(), a.with_vars(prod.vars()));
    }

    #[test]
    fn decompose_extracts_content_and_monomial() {
        // -(4/3) q^2 (q + 1/2) = -(4/3) q^3 - (2/3) q^2
        let p = q()
            .pow(3)
            .scale(&rat(-4, 3))
            .add(&q().pow(2).scale(&rat(-2, 3)));
        let (c, alpha, prim) = p.decompose();
        assert_eq!(c, rat(-2, 3));
        assert_eq!(alpha, vec![2]);
        assert_eq!(prim.to_string(), "2*q + 1");
    }

    #[test]
    fn display_is_canonical() {
        let t = Polynomial::var("t");
        let p = q().pow(2).mul(&t).scale(&rat(3, 4)).sub(&q()).add(&one());
        assert_eq!(p.to_string(), "3/4*q^2*t - q + 1");
    }

    #[test]
    fn evaluates_exactly() {
        let p = q().pow(2).scale(&rat(3, 1)).add(&one());
        let v = p.eval_with(&[rat(1, 2)], &rat(0, 1));
        assert_eq!(v, rat(7, 4));
    }
}
