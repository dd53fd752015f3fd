//! Real primitive Dirichlet characters and the kernel `phi(t, chi)` of
//! `Xi(z, chi)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{BigFloat, Field, Signed};

use super::quad::{even_moments, truncation_point, MomentResult, QuadConfig};

/// A real primitive character, realized as a Kronecker symbol `(D|.)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirichletCharacter {
    pub discriminant: i64,
    pub modulus: u64,
    /// `values[r] = chi(r)` for `r` in `0..modulus`.
    pub values: Vec<i8>,
    /// `chi(-1) = (-1)^parity`.
    pub parity: u8,
}

impl DirichletCharacter {
    pub fn chi(&self, n: u64) -> i8 {
        self.values[(n % self.modulus) as usize]
    }

    pub fn label(&self) -> String {
        format!("kronecker({})", self.discriminant)
    }
}

fn squarefree(n: u64) -> bool {
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

fn jacobi(mut a: i64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a = a.rem_euclid(n as i64);
    let mut a = a as u64;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(d|n)` for `n >= 0`.
pub fn kronecker_symbol(d: i64, n: u64) -> i8 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut sign = 1i8;
    while n % 2 == 0 {
        n /= 2;
        sign *= match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    sign * jacobi(d, n)
}

/// The character `n -> (D|n)` for a fundamental discriminant `D`.
pub fn kronecker_character(d: i64) -> Result<DirichletCharacter> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::NotFundamental(d));
    }
    let modulus = d.unsigned_abs();
    let values: Vec<i8> = (0..modulus).map(|n| kronecker_symbol(d, n)).collect();
    let parity = if d > 0 { 0 } else { 1 };
    let chi = DirichletCharacter {
        discriminant: d,
        modulus,
        values,
        parity,
    };
    verify_character(&chi)?;
    Ok(chi)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Multiplicativity, support, parity and primitivity (no smaller conductor).
fn verify_character(chi: &DirichletCharacter) -> Result<()> {
    let m = chi.modulus;
    let bad = || Err(Error::NotFundamental(chi.discriminant));
    for a in 0..m {
        if (chi.chi(a) == 0) != (gcd(a, m) != 1) {
            return bad();
        }
        for b in 0..m {
            if chi.chi(a * b) != chi.chi(a) * chi.chi(b) {
                return bad();
            }
        }
    }
    let expected = if chi.parity == 0 { 1 } else { -1 };
    if chi.chi(m - 1) != expected {
        return bad();
    }
    for d in (1..m).filter(|d| m % d == 0) {
        // induced from modulus d iff trivial on units congruent to 1 mod d
        let induced = (0..m)
            .filter(|&n| gcd(n, m) == 1 && n % d == 1 % d)
            .all(|n| chi.chi(n) == 1);
        if induced {
            return bad();
        }
    }
    Ok(())
}

/// Which exponent the `e^(-ct)` factor of `phi(t, chi)` uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiVariant {
    /// `c = (1 + a)/2`.
    Printed,
    /// `c = (1 + 2a)/2`, the exponent making `phi` even.
    Corrected,
}

impl PhiVariant {
    fn exponent(self, parity: u8) -> i64 {
        match self {
            PhiVariant::Printed => 1 + parity as i64,
            PhiVariant::Corrected => 1 + 2 * parity as i64,
        }
    }
}

/// `phi(t, chi) = 2 sum_(n >= 1) n^a chi(n) exp(-n^2 pi e^(-2t)/m - ct)`, summed as
/// written. Returns the value and the number of terms used.
pub fn dirichlet_phi_direct(
    t: &BigFloat,
    chi: &DirichletCharacter,
    variant: PhiVariant,
    prec: u32,
    series_max: usize,
) -> (BigFloat, usize) {
    let wp = prec + 16;
    let t = t.with_prec(wp);
    let c = variant.exponent(chi.parity);
    let x = BigFloat::pi(wp)
        .mul(&t.mul_rational(&(-2).into()).exp())
        .mul_rational(&(1, chi.modulus as i64).into());
    let damp = t.mul_rational(&(-c, 2).into()).exp();
    let mut sum = BigFloat::zero(wp);
    let mut scale = BigFloat::zero(wp);
    let mut n = 0u64;
    let peak = (chi.parity as f64 / 2.0).max(0.5);
    while (n as usize) < series_max {
        n += 1;
        let nf = BigFloat::from_i64(n as i64, wp);
        let size = nf.mul(&nf).mul(&x);
        let mut mag = size.neg().exp();
        if chi.parity == 1 {
            mag = mag.mul(&nf);
        }
        let s = chi.chi(n);
        if s != 0 {
            sum = if s > 0 { sum.add(&mag) } else { sum.sub(&mag) };
            scale = scale.add(&mag);
        }
        if size.to_f64() > peak
            && !scale.is_zero()
            && mag.abs_le_pow2(scale.to_f64().log2() - wp as f64 - 8.0)
        {
            break;
        }
    }
    (
        sum.mul(&damp).mul_rational(&2.into()).with_prec(prec),
        n as usize,
    )
}

/// `phi(t, chi)` through the fast orientation `phi(-|t|, chi)`, valid for the
/// corrected (even) variant.
pub fn dirichlet_phi(
    t: &BigFloat,
    chi: &DirichletCharacter,
    prec: u32,
    series_max: usize,
) -> (BigFloat, usize) {
    let neg = if t.to_f64() > 0.0 { t.neg() } else { t.clone() };
    dirichlet_phi_direct(&neg, chi, PhiVariant::Corrected, prec, series_max)
}

/// Evenness defect `max |phi(t) - phi(-t)| / |phi(-t)|` over sample points.
pub fn evenness_defect(chi: &DirichletCharacter, variant: PhiVariant, prec: u32) -> f64 {
    [0.3, 0.7, 1.2]
        .iter()
        .map(|&t| {
            let (a, _) =
                dirichlet_phi_direct(&BigFloat::from_f64(t, prec), chi, variant, prec, 1_000_000);
            let (b, _) =
                dirichlet_phi_direct(&BigFloat::from_f64(-t, prec), chi, variant, prec, 1_000_000);
            a.sub(&b)
                .div(&b)
                .map_or(f64::INFINITY, |r| r.abs().to_f64())
        })
        .fold(0.0, f64::max)
}

/// The first variant whose evenness defect is below `2^(-prec/2)`.
pub fn select_variant(chi: &DirichletCharacter, prec: u32) -> Result<PhiVariant> {
    let tol = 2f64.powf(-(prec as f64) / 2.0);
    [PhiVariant::Printed, PhiVariant::Corrected]
        .into_iter()
        .find(|&v| evenness_defect(chi, v, prec) <= tol)
        .ok_or_else(|| Error::Unsupported(format!("no even phi variant for {}", chi.label())))
}

fn log_phi_estimate(chi: &DirichletCharacter) -> impl Fn(f64) -> f64 {
    let m = chi.modulus as f64;
    let c = PhiVariant::Corrected.exponent(chi.parity) as f64 / 2.0;
    move |t: f64| 2f64.ln() - std::f64::consts::PI * (2.0 * t).exp() / m + c * t
}

/// `b_0(chi), ..., b_(2K)(chi)` as `2 int_0^T t^(2n) phi(t, chi) dt`.
pub fn dirichlet_moments(
    chi: &DirichletCharacter,
    k_max: usize,
    prec: u32,
    config: &QuadConfig,
) -> Result<MomentResult> {
    let t_max = config
        .t_max
        .unwrap_or_else(|| truncation_point(log_phi_estimate(chi), k_max, prec + 32));
    let wp = prec + 32;
    let g = |x: &BigFloat| Ok(dirichlet_phi(x, chi, wp, config.series_max));
    let label = format!("dirichlet_xi[{}]", chi.label());
    Ok(even_moments(g, t_max, k_max, prec, config, &label)?.scaled(2))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanConfig {
    pub t_max: f64,
    pub points: usize,
    pub precision: u32,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            t_max: 6.0,
            points: 10_000,
            precision: 128,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub character: String,
    pub variant: PhiVariant,
    pub t_max: f64,
    pub points: usize,
    pub min_value: String,
    pub argmin: f64,
    /// Grid evidence only: `phi(t, chi) >= 0` at every sampled point.
    pub pass: bool,
}

/// Evaluates `phi(t, chi)` on `points` equally spaced `t` in `[0, T]`.
pub fn phi_nonneg_scan(chi: &DirichletCharacter, config: &ScanConfig) -> Result<ScanReport> {
    let variant = select_variant(chi, config.precision)?;
    let n = config.points.max(2);
    let values: Vec<(f64, BigFloat)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let t = config.t_max * i as f64 / (n - 1) as f64;
            let (v, _) = dirichlet_phi(
                &BigFloat::from_f64(t, config.precision),
                chi,
                config.precision,
                1_000_000,
            );
            (t, v)
        })
        .collect();
    let (argmin, min) = values
        .iter()
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
        .map(|(t, v)| (*t, v.clone()))
        .expect("nonempty grid");
    Ok(ScanReport {
        character: chi.label(),
        variant,
        t_max: config.t_max,
        points: n,
        min_value: min.to_decimal(20),
        argmin,
        pass: values.iter().all(|(_, v)| !v.neg().is_positive()),
    })
}


#[cfg(test)]
mod moment_tests {
    use super::*;

    // (pi/m)^(-3/4) Gamma(3/4) L(1/2, chi), with L(1/2, chi) from a Hurwitz zeta decomposition
    const XI0_M4: &str = "0.98071361405771350407137194920328270732263908458092";
    const XI0_M3: &str = "0.56923003844227513115386875466624103914260797533413";

    #[test]
    fn b0_matches_xi_at_zero() {
        let prec = 128;
        for (d, oracle) in [(-4, XI0_M4), (-3, XI0_M3)] {
            let chi = kronecker_character(d).unwrap();
            let r = dirichlet_moments(&chi, 3, prec, &QuadConfig::default()).unwrap();
            let want = BigFloat::parse_decimal(oracle, prec).unwrap();
            assert!(
                r.moments[0].sub(&want).abs_le_pow2(-110.0),
                "{d}: {}",
                r.moments[0].to_decimal(40)
            );
            assert!(r.all_positive());
        }
    }
}
