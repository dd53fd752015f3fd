//! Synthetic sequences `{1/n^2} + defects` with exact power sums, used to
//! see how early the moment form catches a non-positive element.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::report::{CertificateReport, FunctionInfo, Outcome};
use super::{certify_power_sums, CertifyConfig};
use crate::error::{Error, Result};
use crate::scalars::{binomial, format_rational, Field, Rational, Values, Verdict};

/// A planted element that is not a positive real.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Defect {
    /// A real value; only `value <= 0` is a defect.
    Real {
        #[serde(serialize_with = "ser_rational")]
        value: Rational,
        multiplicity: u32,
    },
    /// The pair `re +- i im`, `im != 0`.
    ConjugatePair {
        #[serde(serialize_with = "ser_rational")]
        re: Rational,
        #[serde(serialize_with = "ser_rational")]
        im: Rational,
        multiplicity: u32,
    },
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

impl Defect {
    /// Contribution to `p_k`: `m v^k` or `2 m Re((re + i im)^k)`.
    fn power(&self, k: u32) -> Rational {
        match self {
            Defect::Real {
                value,
                multiplicity,
            } => pow(value, k) * Rational::from(*multiplicity),
            Defect::ConjugatePair {
                re,
                im,
                multiplicity,
            } => {
                // Re((x + iy)^k) = sum over even l of C(k, l) x^(k-l) (iy)^l
                let mut acc = Rational::new();
                for l in (0..=k).step_by(2) {
                    let term = Rational::from(binomial(k, l)) * pow(re, k - l) * pow(im, l);
                    if (l / 2) % 2 == 1 {
                        acc -= term;
                    } else {
                        acc += term;
                    }
                }
                acc * Rational::from(2 * *multiplicity)
            }
        }
    }

    /// `|value|` squared.
    fn modulus_sq(&self) -> Rational {
        match self {
            Defect::Real { value, .. } => value.clone() * value,
            Defect::ConjugatePair { re, im, .. } => re.clone() * re + im.clone() * im,
        }
    }

    fn is_defect(&self) -> bool {
        match self {
            Defect::Real {
                value,
                multiplicity,
            } => *value <= 0 && *multiplicity > 0,
            Defect::ConjugatePair {
                im, multiplicity, ..
            } => *im != 0 && *multiplicity > 0,
        }
    }
}

fn pow(x: &Rational, k: u32) -> Rational {
    x.pow_u(k)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdversarialSpec {
    /// Base sequence `1/n^2` for `n = 1..=base_terms`.
    pub base_terms: u32,
    pub defects: Vec<Defect>,
    #[serde(serialize_with = "ser_rational")]
    pub lambda: Rational,
}

impl AdversarialSpec {
    pub const DEFAULT_BASE_TERMS: u32 = 40;

    /// Base `{1/n^2}` plus at least one defect, with `lambda = 1`.
    pub fn new(defects: Vec<Defect>) -> Result<Self> {
        let spec = AdversarialSpec {
            base_terms: Self::DEFAULT_BASE_TERMS,
            defects,
            lambda: Rational::from(1),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The defect-free control.
    pub fn control() -> Self {
        AdversarialSpec {
            base_terms: Self::DEFAULT_BASE_TERMS,
            defects: Vec::new(),
            lambda: Rational::from(1),
        }
    }

    pub fn with_lambda(mut self, lambda: Rational) -> Result<Self> {
        self.lambda = lambda;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.base_terms == 0 {
            return Err(Error::ParameterOutOfRange("base sequence is empty".into()));
        }
        if self.lambda <= 0 {
            return Err(Error::NonPositiveLambda);
        }
        for d in &self.defects {
            if !d.is_defect() {
                return Err(Error::ParameterOutOfRange(format!("{d:?} is not a defect")));
            }
            if d.modulus_sq() > self.lambda.clone() * &self.lambda {
                return Err(Error::ParameterOutOfRange(format!("{d:?} exceeds lambda")));
            }
        }
        Ok(())
    }

    /// Exact `p_1..p_n`.
    pub fn power_sums(&self, n: usize) -> Vec<Rational> {
        (1..=n as u32)
            .map(|k| {
                let mut acc = Rational::new();
                for m in 1..=self.base_terms {
                    acc += Rational::from((1, (m as i64).pow(2))).pow_u(k);
                }
                for d in &self.defects {
                    acc += d.power(k);
                }
                acc
            })
            .collect()
    }
}

/// Report plus the smallest `j + k` of a NEGATIVE cell.
pub fn adversarial_run(
    spec: &AdversarialSpec,
    cfg: &CertifyConfig,
) -> Result<(CertificateReport, Option<usize>)> {
    spec.validate()?;
    let p = spec.power_sums(cfg.grid_bound + 1);
    let mut params = BTreeMap::new();
    params.insert("base_terms".into(), spec.base_terms.to_string());
    params.insert("defects".into(), spec.defects.len().to_string());
    let info = FunctionInfo {
        id: format!("adversarial[defects={}]", spec.defects.len()),
        kind: "ADVERSARIAL".into(),
        coefficient_mode: None,
        params,
    };
    let mut report = certify_power_sums(info, &Values::Rational(p), &spec.lambda, cfg)?;
    let depth = report
        .cells
        .iter()
        .filter(|c| c.verdict == Verdict::Negative)
        .map(|c| c.j + c.k)
        .min();
    report.metadata.insert(
        "adversarial_spec".into(),
        serde_json::to_value(spec).expect("serializable"),
    );
    report
        .metadata
        .insert("detection_depth".into(), json!(depth));
    Ok((report, depth))
}

/// What each seeded draw plants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DrawKind {
    /// One real defect in `[-lambda, -lambda/4]`.
    NegativeReal,
    /// One conjugate pair inside the disc of radius `lambda`.
    ConjugatePair,
    /// No defect.
    Control,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdversarialStats {
    pub kind: DrawKind,
    pub seed: u64,
    pub draws: usize,
    pub grid_bound: usize,
    /// Draws with at least one NEGATIVE cell.
    pub detected: usize,
    pub passed: usize,
    /// Detection depth per draw, `None` when not detected.
    pub depths: Vec<Option<usize>>,
    pub min_depth: Option<usize>,
    pub max_depth: Option<usize>,
}

/// A random rational in `[lo, hi]` on a grid of step `1/1000`.
fn draw(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    Rational::from((rng.gen_range(lo..=hi), 1000))
}

pub fn draw_spec(kind: DrawKind, rng: &mut ChaCha8Rng) -> Result<AdversarialSpec> {
    match kind {
        DrawKind::Control => Ok(AdversarialSpec::control()),
        DrawKind::NegativeReal => AdversarialSpec::new(vec![Defect::Real {
            value: draw(rng, -1000, -250),
            multiplicity: 1,
        }]),
        DrawKind::ConjugatePair => loop {
            let re = draw(rng, -700, 700);
            let im = draw(rng, 1, 700);
            if re.clone() * &re + im.clone() * &im <= 1 {
                return AdversarialSpec::new(vec![Defect::ConjugatePair {
                    re,
                    im,
                    multiplicity: 1,
                }]);
            }
        },
    }
}

/// Runs `draws` seeded specs of one kind; draws are generated sequentially
/// from one ChaCha stream and evaluated in parallel.
pub fn adversarial_statistics(
    kind: DrawKind,
    seed: u64,
    draws: usize,
    cfg: &CertifyConfig,
) -> Result<AdversarialStats> {
    use rayon::prelude::*;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let specs: Vec<AdversarialSpec> = (0..draws)
        .map(|_| draw_spec(kind, &mut rng))
        .collect::<Result<_>>()?;
    let results: Vec<(Outcome, Option<usize>)> = specs
        .par_iter()
        .map(|s| adversarial_run(s, cfg).map(|(r, d)| (r.verdict, d)))
        .collect::<Result<_>>()?;
    let depths: Vec<Option<usize>> = results.iter().map(|(_, d)| *d).collect();
    Ok(AdversarialStats {
        kind,
        seed,
        draws,
        grid_bound: cfg.grid_bound,
        detected: depths.iter().filter(|d| d.is_some()).count(),
        passed: results.iter().filter(|(o, _)| *o == Outcome::Pass).count(),
        min_depth: depths.iter().flatten().copied().min(),
        max_depth: depths.iter().flatten().copied().max(),
        depths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn conjugate_pair_power_is_real_part() {
        // (3/10 + 2/5 i)^2 = -7/100 + 6/25 i
        let d = Defect::ConjugatePair {
            re: rat(3, 10),
            im: rat(2, 5),
            multiplicity: 1,
        };
        assert_eq!(d.power(1), rat(3, 5));
        assert_eq!(d.power(2), rat(-7, 50));
    }

    #[test]
    fn control_passes() {
        let cfg = CertifyConfig::default().with_grid(12);
        let (r, depth) = adversarial_run(&AdversarialSpec::control(), &cfg).unwrap();
        assert_eq!(r.verdict, Outcome::Pass);
        assert_eq!(depth, None);
    }

    #[test]
    fn negative_half_detected() {
        let spec = AdversarialSpec::new(vec![Defect::Real {
            value: rat(-1, 2),
            multiplicity: 1,
        }])
        .unwrap();
        let (r, depth) = adversarial_run(&spec, &CertifyConfig::default().with_grid(24)).unwrap();
        assert_eq!(r.verdict, Outcome::Fail);
        assert!(depth.unwrap() <= 24);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(AdversarialSpec::new(vec![Defect::Real {
            value: rat(1, 2),
            multiplicity: 1
        }])
        .is_err());
        assert!(AdversarialSpec::new(vec![Defect::Real {
            value: rat(-2, 1),
            multiplicity: 1
        }])
        .is_err());
        assert!(AdversarialSpec::new(vec![Defect::ConjugatePair {
            re: rat(1, 2),
            im: rat(0, 1),
            multiplicity: 1
        }])
        .is_err());
    }

    #[test]
    fn seeded_draws_repeat() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for kind in [DrawKind::NegativeReal, DrawKind::ConjugatePair] {
            assert_eq!(
                draw_spec(kind, &mut a).unwrap(),
                draw_spec(kind, &mut b).unwrap()
            );
        }
    }
}
