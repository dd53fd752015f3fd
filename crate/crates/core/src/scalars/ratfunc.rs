//! Multivariate rational functions over the rationals.
//!
//! The denominator is stored as a product of primitive polynomial factors
//! with multiplicities; all rational content lives in the numerator. Sums use
//! the least common multiple of the factor lists, and after every operation
//! each factor is divided out of the numerator as often as it divides
//! exactly. With irreducible factors (as produced by the catalog
//! constructors: linear factors, cyclotomic polynomials, `1 - q^i t`) this
//! form is canonical. Equality is tested by cross-multiplication so that it
//! stays correct for user-supplied composite factors too.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{Domain, Field};
use super::poly::{Exponents, Polynomial, Vars};
use super::rational::Rational;
use super::{BigFloat, ComplexFloat, Scalar};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: BTreeMap<Polynomial, u32>,
}

impl RationalFunction {
    pub fn from_poly(num: Polynomial) -> Self {
        RationalFunction {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn symbol(name: &str) -> Self {
        Self::from_poly(Polynomial::var(name))
    }

    pub fn constant(vars: Vars, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(vars, c))
    }

    /// `num / den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        Self::from_factors(num, &[(den, 1)])
    }

    /// `num / prod(f_i^m_i)`.
    pub fn from_factors(num: Polynomial, factors: &[(Polynomial, u32)]) -> Result<Self> {
        let mut vars = num.vars().clone();
        for (f, _) in factors {
            if f.is_zero() {
                return Err(Error::DivisionByZero);
            }
            vars = Polynomial::union_vars(&vars, f.vars());
        }
        let mut out = RationalFunction {
            num: num.with_vars(&vars),
            den: BTreeMap::new(),
        };
        for (f, m) in factors {
            out.push_factor(&f.with_vars(&vars), *m);
        }
        out.reduce();
        Ok(out)
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Polynomial, u32)> {
        self.den.iter().map(|(f, m)| (f, *m))
    }

    pub fn denominator(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.vars().clone(), Rational::from(1));
        for (f, m) in &self.den {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// True when the value is a quotient of homogeneous polynomials of equal
    /// degree, i.e. a rational function of ratios of the variables.
    pub fn is_degree_zero_homogeneous(&self) -> bool {
        if self.num.is_zero() {
            return true;
        }
        if !self.num.is_homogeneous() || !self.den.keys().all(|f| f.is_homogeneous()) {
            return false;
        }
        let den_degree: u32 = self
            .den
            .iter()
            .map(|(f, m)| f.total_degree().unwrap_or(0) * m)
            .sum();
        self.num.total_degree() == Some(den_degree)
    }

    fn push_factor(&mut self, f: &Polynomial, mult: u32) {
        if mult == 0 {
            return;
        }
        let (c, alpha, prim) = f.decompose();
        let c_pow = Rational::from(rug::ops::Pow::pow(&c, mult));
        self.num = self.num.scale(&c_pow.recip());
        let vars = self.vars().clone();
        for (i, &a) in alpha.iter().enumerate() {
            if a > 0 {
                let v = Polynomial::var(&vars[i]).with_vars(&vars);
                *self.den.entry(v).or_insert(0) += a * mult;
            }
        }
        if !prim.is_constant() {
            let known: Vec<Polynomial> = self.den.keys().cloned().collect();
            for (piece, m) in split_factor(prim, &known) {
                *self.den.entry(piece).or_insert(0) += m * mult;
            }
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut remaining = BTreeMap::new();
        for (f, mut m) in std::mem::take(&mut self.den) {
            while m > 0 {
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        m -= 1;
                    }
                    None => break,
                }
            }
            if m > 0 {
                remaining.insert(f, m);
            }
        }
        self.den = remaining;
    }

    fn with_vars(&self, vars: &Vars) -> RationalFunction {
        if self.vars()[..] == vars[..] {
            return self.clone();
        }
        RationalFunction {
            num: self.num.with_vars(vars),
            den: self
                .den
                .iter()
                .map(|(f, m)| (f.with_vars(vars), *m))
                .collect(),
        }
    }

    fn aligned(&self, other: &RationalFunction) -> (RationalFunction, RationalFunction) {
        let u = Polynomial::union_vars(self.vars(), other.vars());
        (self.with_vars(&u), other.with_vars(&u))
    }

    fn product(vars: &Vars, factors: impl Iterator<Item = (Polynomial, u32)>) -> Polynomial {
        let mut acc = Polynomial::constant(vars.clone(), Rational::from(1));
        for (f, m) in factors {
            if m > 0 {
                acc = acc.mul(&f.pow(m));
            }
        }
        acc
    }

    /// Evaluates at a point with values aligned to `self.vars()`.
    pub fn eval_with<T: Field>(&self, values: &[T], like: &T) -> Result<T> {
        let n = self.num.eval_with(values, like);
        let mut d = like.one_like();
        for (f, m) in &self.den {
            d = d.mul(&f.eval_with(values, like).pow_u(*m));
        }
        n.div(&d).ok_or(Error::DenominatorVanishes)
    }

    /// Evaluates at named bindings. Exact when every binding is rational,
    /// otherwise in the float (or complex) domain at the largest binding
    /// precision.
    pub fn eval(&self, point: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        let mut bound = Vec::with_capacity(self.vars().len());
        for v in self.vars().iter() {
            bound.push(
                point
                    .get(v)
                    .ok_or_else(|| Error::UnboundSymbol(v.clone()))?,
            );
        }
        let mut prec = None::<u32>;
        let mut complex = false;
        for s in &bound {
            match s {
                Scalar::Rational(_) => {}
                Scalar::Float(x) => prec = Some(prec.unwrap_or(0).max(x.prec())),
                Scalar::Complex(z) => {
                    complex = true;
                    prec = Some(prec.unwrap_or(0).max(z.prec()));
                }
                Scalar::RationalFunction(_) => {
                    return Err(Error::DomainMismatch(
                        "cannot bind a symbol to a rational function".into(),
                    ))
                }
            }
        }
        match prec {
            None => {
                let vals: Vec<Rational> = bound
                    .iter()
                    .map(|s| match s {
                        Scalar::Rational(q) => q.clone(),
                        _ => unreachable!(),
                    })
                    .collect();
                self.eval_with(&vals, &Rational::new())
                    .map(Scalar::Rational)
            }
            Some(p) if complex => {
                let vals: Vec<ComplexFloat> = bound
                    .iter()
                    .map(|s| s.to_complex(p))
                    .collect::<Result<_>>()?;
                self.eval_with(&vals, &ComplexFloat::zero(p))
                    .map(Scalar::Complex)
            }
            Some(p) => {
                let vals: Vec<BigFloat> = bound
                    .iter()
                    .map(|s| s.to_bigfloat(p))
                    .collect::<Result<_>>()?;
                self.eval_with(&vals, &BigFloat::zero(p)).map(Scalar::Float)
            }
        }
    }

    /// Canonical sparse-term text, e.g. `(1)/((nu + 1)^2*(nu + 2))*1/16` is
    /// rendered as `1/16/((nu + 1)^2*(nu + 2))`.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

/// Splits a primitive polynomial into primitive pieces: first by factors
/// already in use, then (for univariate input) by rational roots and
/// cyclotomic polynomials. Whatever is left stays as one piece.
fn split_factor(p: Polynomial, known: &[Polynomial]) -> Vec<(Polynomial, u32)> {
    let mut rest = p;
    let mut out: BTreeMap<Polynomial, u32> = BTreeMap::new();
    let peel = |rest: &mut Polynomial, f: &Polynomial, out: &mut BTreeMap<Polynomial, u32>| {
        if f.is_constant() {
            return;
        }
        while rest.total_degree().unwrap_or(0) >= f.total_degree().unwrap_or(0) {
            match rest.div_exact(f) {
                Some(q) => {
                    *rest = q;
                    *out.entry(f.clone()).or_insert(0) += 1;
                }
                None => break,
            }
        }
    };
    for f in known {
        if f != &rest {
            peel(&mut rest, f, &mut out);
        }
    }
    if let Some(x) = sole_variable(&rest) {
        for f in rational_root_factors(&rest, x) {
            peel(&mut rest, &f, &mut out);
        }
        let name = rest.vars()[x].clone();
        let deg = rest.degree_in(&name);
        if deg >= 2 {
            // phi(d) <= deg forces d <= 2 deg^2
            let mut cyclo: Vec<Polynomial> = Vec::new();
            for d in 3..=(2 * deg * deg).min(240) {
                let phi = cyclotomic(d, rest.vars(), x, &cyclo);
                if phi.degree_in(&name) <= rest.degree_in(&name) {
                    peel(&mut rest, &phi, &mut out);
                }
                cyclo.push(phi);
            }
        }
    }
    if !rest.is_constant() {
        *out.entry(rest).or_insert(0) += 1;
    }
    out.into_iter()
        .map(|(f, m)| {
            let (_, _, prim) = f.decompose();
            (prim, m)
        })
        .collect()
}

fn sole_variable(p: &Polynomial) -> Option<usize> {
    let mut found = None;
    for (i, v) in p.vars().iter().enumerate() {
        if p.degree_in(v) > 0 {
            if found.is_some() {
                return None;
            }
            found = Some(i);
        }
    }
    found
}

fn monomial(vars: &Vars, x: usize, k: u32, c: Rational) -> (Exponents, Rational) {
    let mut e = vec![0; vars.len()];
    e[x] = k;
    (e, c)
}

/// Linear factors `b x - a` for every rational root `a/b` of `p`.
fn rational_root_factors(p: &Polynomial, x: usize) -> Vec<Polynomial> {
    const LIMIT: u64 = 1 << 40;
    let name = p.vars()[x].clone();
    let coeff = |k: u32| -> Rational {
        p.terms()
            .find(|(e, _)| e[x] == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    };
    let lead = coeff(p.degree_in(&name));
    let mut low = 0;
    while coeff(low).is_zero() {
        low += 1;
    }
    let (Some(a), Some(b)) = (coeff(low).numer().to_i64(), lead.numer().to_i64()) else {
        return Vec::new();
    };
    if a.unsigned_abs() > LIMIT || b.unsigned_abs() > LIMIT {
        return Vec::new();
    }
    let mut point = vec![Rational::new(); p.vars().len()];
    let mut found = Vec::new();
    for num in divisors(a.unsigned_abs()) {
        for den in divisors(b.unsigned_abs()) {
            for sign in [1i64, -1] {
                let r = Rational::from((sign * num as i64, den as i64));
                if r.denom() != &(den as i64) {
                    continue;
                }
                point[x] = r.clone();
                if p.eval_with(&point, &Rational::new()).is_zero() {
                    found.push(Polynomial::from_terms(
                        p.vars().clone(),
                        [
                            monomial(p.vars(), x, 1, Rational::from(r.denom().clone())),
                            monomial(p.vars(), x, 0, Rational::from(-r.numer().clone())),
                        ],
                    ));
                }
            }
        }
    }
    found
}

fn divisors(n: u64) -> Vec<u64> {
    let n = n.max(1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The `d`-th cyclotomic polynomial in variable `x`, given Φ_3..Φ_{d-1}.
fn cyclotomic(d: u32, vars: &Vars, x: usize, previous: &[Polynomial]) -> Polynomial {
    let one = Rational::from(1);
    let mut p = Polynomial::from_terms(
        vars.clone(),
        [
            monomial(vars, x, d, one.clone()),
            monomial(vars, x, 0, -one.clone()),
        ],
    );
    let phi1 = Polynomial::from_terms(
        vars.clone(),
        [
            monomial(vars, x, 1, one.clone()),
            monomial(vars, x, 0, -one.clone()),
        ],
    );
    let phi2 = Polynomial::from_terms(
        vars.clone(),
        [monomial(vars, x, 1, one.clone()), monomial(vars, x, 0, one)],
    );
    p = p.div_exact(&phi1).expect("x - 1 divides x^d - 1");
    if d % 2 == 0 {
        p = p
            .div_exact(&phi2)
            .expect("x + 1 divides x^d - 1 for even d");
    }
    for (i, phi) in previous.iter().enumerate() {
        let e = i as u32 + 3;
        if d % e == 0 {
            p = p.div_exact(phi).expect("cyclotomic divisor");
        }
    }
    p
}

impl Field for RationalFunction {
    fn domain(&self) -> Domain {
        Domain::RationalFunction
    }
    fn zero_like(&self) -> Self {
        RationalFunction::from_poly(Polynomial::zero(self.vars().clone()))
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        RationalFunction::constant(self.vars().clone(), q.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        let (a, b) = self.aligned(rhs);
        if a.den.is_empty() && b.den.is_empty() {
            return RationalFunction::from_poly(a.num.add(&b.num));
        }
        let mut lcm = a.den.clone();
        for (f, m) in &b.den {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        let vars = a.vars().clone();
        let fa = Self::product(
            &vars,
            lcm.iter()
                .map(|(f, m)| (f.clone(), m - a.den.get(f).copied().unwrap_or(0))),
        );
        let fb = Self::product(
            &vars,
            lcm.iter()
                .map(|(f, m)| (f.clone(), m - b.den.get(f).copied().unwrap_or(0))),
        );
        let mut out = RationalFunction {
            num: a.num.mul(&fa).add(&b.num.mul(&fb)),
            den: lcm,
        };
        out.reduce();
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = self.aligned(rhs);
        let mut den = a.den;
        for (f, m) in b.den {
            *den.entry(f).or_insert(0) += m;
        }
        let mut out = RationalFunction {
            num: a.num.mul(&b.num),
            den,
        };
        out.reduce();
        out
    }
    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let vars = self.vars().clone();
        let mut out = RationalFunction {
            num: Self::product(&vars, self.den.iter().map(|(f, m)| (f.clone(), *m))),
            den: BTreeMap::new(),
        };
        out.push_factor(&self.num, 1);
        out.reduce();
        Some(out)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }
    fn close_to(&self, other: &Self) -> bool {
        self == other
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::RationalFunction(self.clone())
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        if a.den == b.den {
            return a.num == b.num;
        }
        let vars = a.vars().clone();
        let da = Self::product(&vars, a.den.iter().map(|(f, m)| (f.clone(), *m)));
        let db = Self::product(&vars, b.den.iter().map(|(f, m)| (f.clone(), *m)));
        a.num.mul(&db) == b.num.mul(&da)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let factors: Vec<String> = self
            .den
            .iter()
            .map(|(p, m)| {
                let base = if p.num_terms() > 1 {
                    format!("({p})")
                } else {
                    p.to_string()
                };
                if *m == 1 {
                    base
                } else {
                    format!("{base}^{m}")
                }
            })
            .collect();
        write!(f, "({})/({})", self.num, factors.join("*"))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction[{}]({self})", self.vars().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, BigFloat};

    fn nu() -> RationalFunction {
        RationalFunction::symbol("nu")
    }
    fn c(q: Rational) -> RationalFunction {
        nu().from_rational_like(&q)
    }

    #[test]
    fn eval_direct_substitution() {
        // 1/(4(nu+1)) at nu = 0
        let f = c(rat(1, 4)).div(&nu().add(&c(rat(1, 1)))).unwrap();
        let mut point = BTreeMap::new();
        point.insert("nu".to_string(), Scalar::Rational(rat(0, 1)));
        assert_eq!(f.eval(&point).unwrap(), Scalar::Rational(rat(1, 4)));

        // q/(1-q) at q = 1/2
        let q = RationalFunction::symbol("q");
        let g = q.div(&q.one_like().sub(&q)).unwrap();
        let mut point = BTreeMap::new();
        point.insert("q".to_string(), Scalar::Rational(rat(1, 2)));
        assert_eq!(g.eval(&point).unwrap(), Scalar::Rational(rat(1, 1)));
    }

    #[test]
    fn eval_rayleigh_second_sum_at_one() {
        // 1/(16 (nu+1)^2 (nu+2)) at nu = 1 -> 1/(16*4*3) = 1/192
        let one = c(rat(1, 1));
        let d = c(rat(16, 1))
            .mul(&nu().add(&one).pow_u(2))
            .mul(&nu().add(&c(rat(2, 1))));
        let f = d.inv().unwrap();
        let mut point = BTreeMap::new();
        point.insert("nu".to_string(), Scalar::Rational(rat(1, 1)));
        assert_eq!(f.eval(&point).unwrap(), Scalar::Rational(rat(1, 192)));
    }

    #[test]
    fn eval_errors() {
        let f = nu().add(&c(rat(1, 1))).inv().unwrap();
        let mut point = BTreeMap::new();
        assert_eq!(f.eval(&point), Err(Error::UnboundSymbol("nu".into())));
        point.insert("nu".to_string(), Scalar::Rational(rat(-1, 1)));
        assert_eq!(f.eval(&point), Err(Error::DenominatorVanishes));
    }

    #[test]
    fn eval_float_binding() {
        let f = nu().mul(&nu());
        let mut point = BTreeMap::new();
        point.insert(
            "nu".to_string(),
            Scalar::Float(BigFloat::from_f64(1.5, 128)),
        );
        match f.eval(&point).unwrap() {
            Scalar::Float(x) => assert_eq!(x.to_f64(), 2.25),
            other => panic!("expected float, got {other:?}"),
        }
    }

    #[test]
    fn sums_cancel_common_factors() {
        // 1/(16(nu+1)^2) - 2/(32(nu+1)(nu+2)) = 1/(16(nu+1)^2(nu+2))
        let one = c(rat(1, 1));
        let a = c(rat(16, 1)).mul(&nu().add(&one).pow_u(2)).inv().unwrap();
        let b = c(rat(16, 1))
            .mul(&nu().add(&one))
            .mul(&nu().add(&c(rat(2, 1))))
            .inv()
            .unwrap();
        let diff = a.sub(&b);
        let expected = c(rat(16, 1))
            .mul(&nu().add(&one).pow_u(2))
            .mul(&nu().add(&c(rat(2, 1))))
            .inv()
            .unwrap();
        assert_eq!(diff, expected);
        assert_eq!(diff.to_string(), "(1/16)/((nu + 1)^2*(nu + 2))");
        // (nu^2 - 1)/(nu + 1) reduces to nu - 1
        let r = nu().mul(&nu()).sub(&one).div(&nu().add(&one)).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r, nu().sub(&one));
    }

    #[test]
    fn mixed_symbol_sets_unify() {
        let q = RationalFunction::symbol("q");
        let t = RationalFunction::symbol("t");
        let s = q.add(&t);
        assert_eq!(s.vars().len(), 2);
        assert_eq!(s.sub(&t), q);
    }

    #[test]
    fn homogeneity_detection() {
        let b0 = RationalFunction::symbol("b0");
        let b2 = RationalFunction::symbol("b2");
        assert!(b2.div(&b0).unwrap().is_degree_zero_homogeneous());
        assert!(!b2.is_degree_zero_homogeneous());
    }

    #[test]
    fn one_minus_q_power_splits_into_cyclotomics() {
        let q = RationalFunction::symbol("q");
        let one = q.one_like();
        let f = one.sub(&q.pow_u(6)).inv().unwrap();
        // (1 - q)(1 + q)(q^2 + q + 1)(q^2 - q + 1)
        assert_eq!(f.denominator_factors().count(), 4);
        let g = one.sub(&q.pow_u(2)).inv().unwrap().sub(&f);
        let mut point = BTreeMap::new();
        point.insert("q".to_string(), Scalar::Rational(rat(1, 2)));
        let expected = rat(4, 3) - rat(64, 63);
        assert_eq!(g.eval(&point).unwrap(), Scalar::Rational(expected));
    }
}
