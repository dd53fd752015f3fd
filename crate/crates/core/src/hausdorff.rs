//! Finite-difference tables of moment sequences and the two equivalent
//! positivity tests: the moment form on `m_k = p_(k+1) / lambda^(k+1)` and
//! the derivative form on `(z - 1)^j f'(rho z) / f(rho z)`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalars::{
    binomial, factorial, Field, Rational, SignVerdict, Signed, TolerancePolicy, Verdict,
};
use crate::series::{log_derivative_series, TruncatedSeries};
use crate::symfun::PowerSumSequence;

/// `m_0..m_K` with a note on where they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentVector<T> {
    pub values: Vec<T>,
    pub provenance: String,
}

impl<T: Field> MomentVector<T> {
    pub fn new(values: Vec<T>, provenance: impl Into<String>) -> Self {
        MomentVector {
            values,
            provenance: provenance.into(),
        }
    }

    /// `m_k = p_(k+1) / lambda^(k+1)` for `k = 0..=k_max`.
    pub fn from_power_sums(p: &PowerSumSequence<T>, lambda: &T, k_max: usize) -> Result<Self> {
        if p.len() < k_max + 1 {
            return Err(Error::InsufficientCoefficients {
                needed: k_max + 1,
                available: p.len(),
            });
        }
        let inv = lambda.inv().ok_or(Error::NonPositiveLambda)?;
        let mut scale = inv.clone();
        let mut values = Vec::with_capacity(k_max + 1);
        for pk in p.values().iter().take(k_max + 1) {
            values.push(pk.mul(&scale));
            scale = scale.mul(&inv);
        }
        Ok(MomentVector::new(values, "p_(k+1) / lambda^(k+1)"))
    }
}

/// Overall outcome of a sign table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableOutcome {
    Pass,
    Fail,
    Indeterminate,
}

fn combine(verdicts: impl Iterator<Item = Verdict>) -> TableOutcome {
    let mut out = TableOutcome::Pass;
    for v in verdicts {
        match v {
            Verdict::Negative => return TableOutcome::Fail,
            Verdict::Indeterminate => out = TableOutcome::Indeterminate,
            Verdict::Nonnegative => {}
        }
    }
    out
}

/// Triangular table `cells[j][k] = (-Delta)^j m_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceTable<T> {
    pub cells: Vec<Vec<T>>,
    /// Filled by [`DifferenceTable::assess`]; same shape as `cells`.
    pub verdicts: Vec<Vec<SignVerdict>>,
    /// Number of cells compared against the binomial formula.
    pub cross_checked: usize,
}

/// `(-Delta)^j a_n = sum_i C(j, i) (-1)^i a_(n+i)`.
pub fn binomial_difference<T: Field>(m: &[T], j: usize, n: usize) -> T {
    let mut acc = m[n].zero_like();
    for i in 0..=j {
        let term = m[n + i].mul_rational(&Rational::from(binomial(j as u32, i as u32)));
        acc = if i % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

fn sample_cells(rows: &[usize]) -> Vec<(usize, usize)> {
    let total: usize = rows.iter().sum();
    let stride = (total / 400).max(1);
    let mut out = Vec::new();
    let mut idx = 0;
    for (j, &len) in rows.iter().enumerate() {
        for k in 0..len {
            if j <= 2 || k == 0 || k + 1 == len || idx % stride == 0 {
                out.push((j, k));
            }
            idx += 1;
        }
    }
    out
}

/// Builds the table for `j <= j_max` by repeated subtraction, at `extra_bits`
/// above the input precision, and checks sampled cells against the binomial
/// formula.
pub fn difference_table_with<T: Field>(
    m: &MomentVector<T>,
    j_max: usize,
    extra_bits: u32,
) -> Result<DifferenceTable<T>> {
    let len = m.values.len();
    if len < j_max + 1 {
        return Err(Error::InsufficientMoments {
            needed: j_max + 1,
            available: len,
        });
    }
    let row0: Vec<T> = m
        .values
        .iter()
        .map(|x| x.with_extra_precision(extra_bits))
        .collect();
    let mut cells = vec![row0];
    for j in 1..=j_max {
        let prev = &cells[j - 1];
        let row: Vec<T> = (0..prev.len() - 1)
            .map(|k| prev[k].sub(&prev[k + 1]))
            .collect();
        cells.push(row);
    }
    let samples = sample_cells(&cells.iter().map(Vec::len).collect::<Vec<_>>());
    for &(j, k) in &samples {
        let direct = binomial_difference(&cells[0], j, k);
        let diff = direct.sub(&cells[j][k]);
        let ok = diff.is_zero()
            || (!diff.domain().is_exact() && cells[0].iter().any(|s| diff.is_negligible(s)));
        if !ok {
            return Err(Error::CrossCheckFailed { j, k });
        }
    }
    Ok(DifferenceTable {
        cells,
        verdicts: Vec::new(),
        cross_checked: samples.len(),
    })
}

/// [`difference_table_with`] with enough extra bits to absorb the
/// cancellation in `(-Delta)^j`.
pub fn difference_table<T: Field>(m: &MomentVector<T>, j_max: usize) -> Result<DifferenceTable<T>> {
    let extra = m.values.len() as u32 + 16;
    difference_table_with(m, j_max, extra)
}

impl<T: Field> DifferenceTable<T> {
    pub fn rows(&self) -> usize {
        self.cells.len()
    }

    /// Every cell as `(j, k, value)`.
    pub fn iter_cells(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.cells
            .iter()
            .enumerate()
            .flat_map(|(j, row)| row.iter().enumerate().map(move |(k, x)| (j, k, x)))
    }

    pub fn get(&self, j: usize, k: usize) -> Option<&T> {
        self.cells.get(j).and_then(|r| r.get(k))
    }
}

impl<T: Signed> DifferenceTable<T> {
    /// Decides the sign of every cell.
    pub fn assess(&mut self, policy: &TolerancePolicy) -> Result<()> {
        self.verdicts = self
            .cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.sign_decide(policy))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(())
    }

    pub fn outcome(&self) -> TableOutcome {
        combine(self.verdicts.iter().flatten().map(|v| v.verdict))
    }

    /// Cells whose verdict is not NONNEGATIVE.
    pub fn failures(&self) -> Vec<(usize, usize, Verdict)> {
        let mut out = Vec::new();
        for (j, row) in self.verdicts.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                if v.verdict != Verdict::Nonnegative {
                    out.push((j, k, v.verdict));
                }
            }
        }
        out
    }

    /// One row per `j`, one column per `k`: `value:N|-|?`.
    pub fn to_csv(&self) -> String {
        let width = self.cells.first().map_or(0, Vec::len);
        let mut out = String::from("j");
        for k in 0..width {
            let _ = write!(out, ",k{k}");
        }
        out.push('\n');
        for (j, row) in self.cells.iter().enumerate() {
            let _ = write!(out, "{j}");
            for (k, x) in row.iter().enumerate() {
                let letter = match self
                    .verdicts
                    .get(j)
                    .and_then(|r| r.get(k))
                    .map(|v| v.verdict)
                {
                    Some(Verdict::Nonnegative) => "N",
                    Some(Verdict::Negative) => "-",
                    Some(Verdict::Indeterminate) => "?",
                    None => "",
                };
                let value = x.to_scalar().decimal(17).unwrap_or_default();
                let _ = write!(out, ",{value}:{letter}");
            }
            out.push('\n');
        }
        out
    }
}

/// Scale used for float tolerances: the largest `|m_k|`, as f64.
pub(crate) fn tolerance_scale<T: Signed>(values: &[T]) -> f64 {
    let s = values
        .iter()
        .map(|x| x.to_f64().abs())
        .filter(|x| x.is_finite())
        .fold(0.0, f64::max);
    if s > 0.0 {
        s
    } else {
        1.0
    }
}

/// Moment form on the triangle `j + k <= j_max + k_max`, `j <= j_max`.
///
/// Float inputs are differenced at elevated precision, but signs are judged
/// at the precision of the power sums.
pub fn moment_criterion<T: Signed>(
    p: &PowerSumSequence<T>,
    lambda: &T,
    j_max: usize,
    k_max: usize,
    policy: &TolerancePolicy,
) -> Result<DifferenceTable<T>> {
    if !lambda.is_positive() {
        return Err(Error::NonPositiveLambda);
    }
    let m = MomentVector::from_power_sums(p, lambda, j_max + k_max)?;
    let mut table = difference_table(&m, j_max)?;
    let mut policy = policy.clone();
    if let Some(bits) = p.values().first().and_then(Signed::precision_bits) {
        policy.precision_bits.get_or_insert(bits);
        policy.scale *= tolerance_scale(&m.values);
    }
    table.assess(&policy)?;
    Ok(table)
}

/// `(j+k)! [z^(j+k)] (z - 1)^j L(rho z)` with `L = f'/f`.
pub fn derivative_form_coefficient<T: Signed>(
    f: &TruncatedSeries<T>,
    rho: &T,
    j: usize,
    k: usize,
) -> Result<T> {
    if !rho.is_positive() {
        return Err(Error::NonPositiveRho);
    }
    let g = log_derivative_series(f, j + k + 1)?;
    Ok(derivative_coefficient_from_log(g.coeffs(), rho, j, k))
}

fn derivative_coefficient_from_log<T: Field>(g: &[T], rho: &T, j: usize, k: usize) -> T {
    let n = j + k;
    let mut acc = rho.zero_like();
    for i in 0..=j {
        let mut term = g[n - i]
            .mul(&rho.pow_u((n - i) as u32))
            .mul_rational(&Rational::from(binomial(j as u32, i as u32)));
        if (j - i) % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    acc.mul_rational(&Rational::from(factorial(n as u32)))
}

/// Values of the derivative form on `j + k <= bound`; a cell passes when it
/// is `<= 0`, so verdicts are decided on the negated value.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeTable<T> {
    pub cells: Vec<Vec<T>>,
    pub verdicts: Vec<Vec<SignVerdict>>,
}

impl<T: Signed> DerivativeTable<T> {
    pub fn outcome(&self) -> TableOutcome {
        combine(self.verdicts.iter().flatten().map(|v| v.verdict))
    }
}

/// Derivative form on the triangle `j + k <= bound`.
///
/// With `chain_rule` the function differentiated is `d/dz log f(rho z)`,
/// i.e. every cell carries an extra factor `rho`.
pub fn derivative_form_table<T: Signed>(
    f: &TruncatedSeries<T>,
    rho: &T,
    bound: usize,
    chain_rule: bool,
    policy: &TolerancePolicy,
) -> Result<DerivativeTable<T>> {
    if !rho.is_positive() {
        return Err(Error::NonPositiveRho);
    }
    let extra = bound as u32 + 16;
    let base_prec = f.coeffs()[0].precision_bits();
    let f_hi = f.map(|c| c.with_extra_precision(extra));
    let rho_hi = rho.with_extra_precision(extra);
    let g = log_derivative_series(&f_hi, bound + 1)?;
    let mut cells = Vec::with_capacity(bound + 1);
    for j in 0..=bound {
        let row: Vec<T> = (0..=bound - j)
            .map(|k| {
                let d = derivative_coefficient_from_log(g.coeffs(), &rho_hi, j, k);
                if chain_rule {
                    d.mul(&rho_hi)
                } else {
                    d
                }
            })
            .collect();
        cells.push(row);
    }
    let mut policy = policy.clone();
    if let Some(bits) = base_prec {
        policy.precision_bits.get_or_insert(bits);
        let scale = tolerance_scale(&cells[0]);
        policy.scale *= scale;
    }
    let verdicts = cells
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.neg().sign_decide(&policy))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(DerivativeTable { cells, verdicts })
}
