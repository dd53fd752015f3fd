//! Catalog of entire functions with known or conjectured real zeros.
//!
//! Every entry is reduced to a genus-0 function `f(z) = sum (-1)^k e_k z^k`
//! with `e_0 = 1`; even functions of genus 1 are reduced through `z -> z^2`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalars::{
    factorial, format_rational, BigFloat, Field, Rational, RationalFunction, Scalar, Values,
};

pub mod airy;
pub mod besselk;
pub mod dirichlet;
pub mod exact;
pub mod quad;
pub mod riemann;

pub use airy::{airy_a, airy_coeffs, airy_coeffs_symbolic, airy_generators};
pub use besselk::besselk_moments;
pub use dirichlet::{
    dirichlet_moments, dirichlet_phi, dirichlet_phi_direct, kronecker_character, phi_nonneg_scan,
    select_variant, DirichletCharacter, PhiVariant, ScanConfig, ScanReport,
};
pub use exact::{
    bessel_coeffs, bessel_coeffs_rational, qbessel_coeffs, qbessel_coeffs_rational,
    ramanujan_aq_coeffs, ramanujan_aq_coeffs_rational, sinc_coeffs,
};
pub use quad::{even_moments, truncation_point, MomentResult, QuadConfig, QuadMeta};
pub use riemann::{riemann_moments, riemann_phi, riemann_phi_direct, riemann_xi_value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FunctionKind {
    Sinc,
    Bessel,
    #[serde(rename = "QBESSEL")]
    QBessel,
    RamanujanAq,
    AiryProduct,
    BesselK,
    RiemannXi,
    DirichletXi,
}

impl FunctionKind {
    pub const ALL: [FunctionKind; 8] = [
        FunctionKind::Sinc,
        FunctionKind::Bessel,
        FunctionKind::QBessel,
        FunctionKind::RamanujanAq,
        FunctionKind::AiryProduct,
        FunctionKind::BesselK,
        FunctionKind::RiemannXi,
        FunctionKind::DirichletXi,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::Sinc => "sinc",
            FunctionKind::Bessel => "bessel",
            FunctionKind::QBessel => "qbessel",
            FunctionKind::RamanujanAq => "ramanujan-aq",
            FunctionKind::AiryProduct => "airy",
            FunctionKind::BesselK => "bessel-k",
            FunctionKind::RiemannXi => "riemann-xi",
            FunctionKind::DirichletXi => "dirichlet-xi",
        }
    }

    /// Coefficients are rational functions of the parameters.
    pub fn has_exact(self) -> bool {
        matches!(
            self,
            FunctionKind::Sinc
                | FunctionKind::Bessel
                | FunctionKind::QBessel
                | FunctionKind::RamanujanAq
        )
    }

    /// Coefficients come from moment quadrature of a kernel.
    pub fn is_moment_kind(self) -> bool {
        matches!(
            self,
            FunctionKind::BesselK | FunctionKind::RiemannXi | FunctionKind::DirichletXi
        )
    }
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        FunctionKind::ALL
            .into_iter()
            .find(|k| {
                k.name() == norm || (norm == "airy-product" && *k == FunctionKind::AiryProduct)
            })
            .ok_or_else(|| Error::ParseError(format!("unknown function '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CoefficientMode {
    /// Parameters substituted, arithmetic in `Q`.
    ExactRational,
    /// Power sums formed over `Q(symbols)`, then evaluated at the parameters.
    RationalFunction,
    Float,
}

impl FromStr for CoefficientMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "exact" | "exact-rational" | "rational" => Ok(CoefficientMode::ExactRational),
            "symbolic" | "rational-function" => Ok(CoefficientMode::RationalFunction),
            "float" => Ok(CoefficientMode::Float),
            _ => Err(Error::ParseError(format!("unknown coefficient mode '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    pub nu: Option<Rational>,
    pub q: Option<Rational>,
    pub a: Option<Rational>,
    /// Overrides `t = pi^2` for the sinc entry (zeros at `n^2 pi^2/t`).
    pub t: Option<Rational>,
    pub character: Option<DirichletCharacter>,
}

impl Params {
    pub fn to_map(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        for (k, v) in [
            ("nu", &self.nu),
            ("q", &self.q),
            ("a", &self.a),
            ("t", &self.t),
        ] {
            if let Some(v) = v {
                m.insert(k.to_string(), format_rational(v));
            }
        }
        if let Some(c) = &self.character {
            m.insert("character".into(), c.label());
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    pub kind: FunctionKind,
    pub params: Params,
    pub mode: CoefficientMode,
}

impl Serialize for FunctionSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("kind", &self.kind)?;
        m.serialize_entry("mode", &self.mode)?;
        m.serialize_entry("params", &self.params.to_map())?;
        m.end()
    }
}

fn require(name: &str, v: &Option<Rational>) -> Result<Rational> {
    v.clone()
        .ok_or_else(|| Error::ParameterOutOfRange(format!("missing parameter {name}")))
}

impl FunctionSpec {
    pub fn new(kind: FunctionKind, params: Params, mode: CoefficientMode) -> Result<Self> {
        let spec = FunctionSpec { kind, params, mode };
        spec.validate()?;
        Ok(spec)
    }

    /// The default mode for a kind: exact where possible.
    pub fn default_mode(kind: FunctionKind, params: &Params) -> CoefficientMode {
        match kind {
            FunctionKind::Sinc if params.t.is_none() => CoefficientMode::RationalFunction,
            FunctionKind::QBessel if params.nu.as_ref().is_some_and(|n| n.denom() != &1) => {
                CoefficientMode::Float
            }
            k if k.has_exact() => CoefficientMode::ExactRational,
            _ => CoefficientMode::Float,
        }
    }

    pub fn with_default_mode(kind: FunctionKind, params: Params) -> Result<Self> {
        let mode = Self::default_mode(kind, &params);
        Self::new(kind, params, mode)
    }

    pub fn sinc() -> Self {
        FunctionSpec {
            kind: FunctionKind::Sinc,
            params: Params::default(),
            mode: CoefficientMode::RationalFunction,
        }
    }

    pub fn bessel(nu: Rational) -> Result<Self> {
        Self::with_default_mode(
            FunctionKind::Bessel,
            Params {
                nu: Some(nu),
                ..Default::default()
            },
        )
    }

    pub fn qbessel(q: Rational, nu: Rational) -> Result<Self> {
        Self::with_default_mode(
            FunctionKind::QBessel,
            Params {
                q: Some(q),
                nu: Some(nu),
                ..Default::default()
            },
        )
    }

    pub fn ramanujan_aq(q: Rational) -> Result<Self> {
        Self::with_default_mode(
            FunctionKind::RamanujanAq,
            Params {
                q: Some(q),
                ..Default::default()
            },
        )
    }

    pub fn airy() -> Self {
        FunctionSpec {
            kind: FunctionKind::AiryProduct,
            params: Params::default(),
            mode: CoefficientMode::Float,
        }
    }

    pub fn bessel_k(a: Rational) -> Result<Self> {
        Self::new(
            FunctionKind::BesselK,
            Params {
                a: Some(a),
                ..Default::default()
            },
            CoefficientMode::Float,
        )
    }

    pub fn riemann_xi() -> Self {
        FunctionSpec {
            kind: FunctionKind::RiemannXi,
            params: Params::default(),
            mode: CoefficientMode::Float,
        }
    }

    pub fn dirichlet_xi(chi: DirichletCharacter) -> Self {
        FunctionSpec {
            kind: FunctionKind::DirichletXi,
            params: Params {
                character: Some(chi),
                ..Default::default()
            },
            mode: CoefficientMode::Float,
        }
    }

    pub fn with_mode(mut self, mode: CoefficientMode) -> Result<Self> {
        self.mode = mode;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        match self.kind {
            FunctionKind::Sinc => {}
            FunctionKind::Bessel => exact::check_nu(&require("nu", &p.nu)?)?,
            FunctionKind::QBessel => {
                exact::check_q(&require("q", &p.q)?)?;
                let nu = require("nu", &p.nu)?;
                exact::check_nu(&nu)?;
                if self.mode == CoefficientMode::ExactRational && nu.denom() != &1 {
                    return Err(Error::Unsupported(
                        "exact q-Bessel coefficients need integer nu".into(),
                    ));
                }
            }
            FunctionKind::RamanujanAq => exact::check_q(&require("q", &p.q)?)?,
            FunctionKind::BesselK => {
                if require("a", &p.a)? <= 0 {
                    return Err(Error::ParameterOutOfRange("a must be positive".into()));
                }
            }
            FunctionKind::DirichletXi => {
                p.character
                    .as_ref()
                    .ok_or_else(|| Error::ParameterOutOfRange("missing character".into()))?;
            }
            FunctionKind::AiryProduct | FunctionKind::RiemannXi => {}
        }
        if self.mode != CoefficientMode::Float && !self.kind.has_exact() {
            return Err(Error::Unsupported(format!(
                "{} has no exact coefficients",
                self.kind
            )));
        }
        if self.kind == FunctionKind::Sinc
            && self.mode == CoefficientMode::ExactRational
            && p.t.is_none()
        {
            return Err(Error::Unsupported(
                "exact sinc coefficients need a rational t".into(),
            ));
        }
        Ok(())
    }

    /// Identifier such as `bessel[nu=1/2]`.
    pub fn id(&self) -> String {
        let params = self.params.to_map();
        if params.is_empty() {
            self.kind.name().to_string()
        } else {
            let inner: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("{}[{}]", self.kind.name(), inner.join(","))
        }
    }

    /// Symbolic `e_0..e_K` for the exact kinds.
    pub fn symbolic_coeffs(&self, k_max: usize) -> Result<Option<Vec<RationalFunction>>> {
        let e = match self.kind {
            FunctionKind::Sinc => sinc_coeffs(k_max)?,
            FunctionKind::Bessel => bessel_coeffs(k_max)?,
            FunctionKind::QBessel => qbessel_coeffs(k_max)?,
            FunctionKind::RamanujanAq => ramanujan_aq_coeffs(k_max)?,
            _ => return Ok(None),
        };
        Ok(Some(e.values().to_vec()))
    }

    /// Binding of the symbols of [`Self::symbolic_coeffs`]: rational where the
    /// parameter value is rational, otherwise a float at `prec` bits.
    pub fn symbol_point(&self, prec: u32) -> Result<BTreeMap<String, Scalar>> {
        let p = &self.params;
        let mut m = BTreeMap::new();
        match self.kind {
            FunctionKind::Sinc => {
                let t = match &p.t {
                    Some(t) => Scalar::Rational(t.clone()),
                    None => {
                        let pi = BigFloat::pi(prec);
                        Scalar::Float(pi.mul(&pi))
                    }
                };
                m.insert("t".into(), t);
            }
            FunctionKind::Bessel => {
                m.insert("nu".into(), Scalar::Rational(require("nu", &p.nu)?));
            }
            FunctionKind::QBessel => {
                let q = require("q", &p.q)?;
                let nu = require("nu", &p.nu)?;
                let t = if nu.denom() == &1 {
                    let n = nu
                        .numer()
                        .to_i32()
                        .ok_or_else(|| Error::ParameterOutOfRange("nu too large".into()))?;
                    Scalar::Rational(q.pow_u(n as u32))
                } else {
                    Scalar::Float(
                        BigFloat::from_rational(&q, prec).powf(&BigFloat::from_rational(&nu, prec)),
                    )
                };
                m.insert("q".into(), Scalar::Rational(q));
                m.insert("t_nu".into(), t);
            }
            FunctionKind::RamanujanAq => {
                m.insert("q".into(), Scalar::Rational(require("q", &p.q)?));
            }
            _ => {}
        }
        Ok(m)
    }

    /// Normalized coefficients `e_0..e_K` of the genus-0 reduction.
    pub fn coefficients(&self, k_max: usize, prec: u32, quad: &QuadConfig) -> Result<Coefficients> {
        self.validate()?;
        let mut out = Coefficients::default();
        let p = &self.params;
        match (self.kind, self.mode) {
            (_, CoefficientMode::ExactRational) => {
                let e = match self.kind {
                    FunctionKind::Sinc => exact::sinc_coeffs_in(&require("t", &p.t)?, k_max)?,
                    FunctionKind::Bessel => bessel_coeffs_rational(&require("nu", &p.nu)?, k_max)?,
                    FunctionKind::QBessel => {
                        let nu = require("nu", &p.nu)?;
                        let n = nu
                            .numer()
                            .to_i32()
                            .ok_or_else(|| Error::ParameterOutOfRange("nu too large".into()))?;
                        qbessel_coeffs_rational(&require("q", &p.q)?, n, k_max)?
                    }
                    FunctionKind::RamanujanAq => {
                        ramanujan_aq_coeffs_rational(&require("q", &p.q)?, k_max)?
                    }
                    _ => unreachable!("validated"),
                };
                out.values = Values::Rational(e.values().to_vec());
            }
            (_, CoefficientMode::RationalFunction) => {
                let sym = self.symbolic_coeffs(k_max)?.expect("validated");
                let point = self.symbol_point(prec)?;
                let evaluated: Vec<Scalar> =
                    sym.iter().map(|f| f.eval(&point)).collect::<Result<_>>()?;
                out.values = Values::from_scalars(&evaluated)?;
                out.symbolic = Some(sym);
                out.point = point;
            }
            (FunctionKind::AiryProduct, _) => {
                out.values = Values::Float(airy_coeffs(k_max, prec)?.values().to_vec());
                out.notes
                    .insert("normalization".into(), "a_k/a_0 with a_0 = 2 pi".into());
            }
            (kind, _) if kind.is_moment_kind() => {
                let moments = match kind {
                    FunctionKind::RiemannXi => riemann_moments(k_max, prec, quad)?,
                    FunctionKind::DirichletXi => {
                        let chi = p.character.as_ref().expect("validated");
                        let variant = select_variant(chi, prec.min(128))?;
                        out.notes
                            .insert("phi_variant".into(), format!("{variant:?}").to_lowercase());
                        dirichlet_moments(chi, k_max, prec, quad)?
                    }
                    FunctionKind::BesselK => {
                        besselk_moments(&require("a", &p.a)?, k_max, prec, quad)?
                    }
                    _ => unreachable!(),
                };
                out.values = Values::Float(elementary_from_moments(&moments.moments)?);
                out.moments = Some(moments);
            }
            (_, CoefficientMode::Float) => {
                let point = self.symbol_point(prec)?;
                let float = |name: &str| -> BigFloat {
                    match &point[name] {
                        Scalar::Rational(q) => BigFloat::from_rational(q, prec),
                        Scalar::Float(x) => x.with_prec(prec),
                        other => unreachable!("{other:?}"),
                    }
                };
                let e = match self.kind {
                    FunctionKind::Sinc => exact::sinc_coeffs_in(&float("t"), k_max)?,
                    FunctionKind::Bessel => exact::bessel_coeffs_in(&float("nu"), k_max)?,
                    FunctionKind::QBessel => {
                        exact::qbessel_coeffs_in(&float("q"), &float("t_nu"), k_max)?
                    }
                    FunctionKind::RamanujanAq => exact::ramanujan_aq_coeffs_in(&float("q"), k_max)?,
                    _ => unreachable!(),
                };
                out.values = Values::Float(e.values().to_vec());
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// Output of [`FunctionSpec::coefficients`].
#[derive(Debug, Clone)]
pub struct Coefficients {
    /// `e_0..e_K`, rational or float.
    pub values: Values,
    /// Symbolic `e_k` in rational-function mode.
    pub symbolic: Option<Vec<RationalFunction>>,
    /// Symbol binding used to evaluate `symbolic`.
    pub point: BTreeMap<String, Scalar>,
    pub moments: Option<MomentResult>,
    pub notes: BTreeMap<String, String>,
}

impl Default for Coefficients {
    fn default() -> Self {
        Coefficients {
            values: Values::Rational(Vec::new()),
            symbolic: None,
            point: BTreeMap::new(),
            moments: None,
            notes: BTreeMap::new(),
        }
    }
}

/// `e_n = b_(2n)/((2n)! b_0)`.
pub fn elementary_from_moments<T: Field>(b: &[T]) -> Result<Vec<T>> {
    let b0 = b.first().ok_or(Error::ZeroB0)?;
    if b0.is_zero() {
        return Err(Error::ZeroB0);
    }
    b.iter()
        .enumerate()
        .map(|(n, x)| {
            let f = Rational::from(factorial(2 * n as u32));
            x.div(&b0.mul_rational(&f)).ok_or(Error::ZeroB0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn kind_names_round_trip() {
        for k in FunctionKind::ALL {
            assert_eq!(k.name().parse::<FunctionKind>().unwrap(), k);
        }
        assert!("zeta".parse::<FunctionKind>().is_err());
        assert_eq!(
            serde_json::to_string(&FunctionKind::QBessel).unwrap(),
            "\"QBESSEL\""
        );
        assert_eq!(
            serde_json::to_string(&FunctionKind::RiemannXi).unwrap(),
            "\"RIEMANN_XI\""
        );
    }

    #[test]
    fn validation() {
        assert!(FunctionSpec::bessel(rat(-3, 2)).is_err());
        assert!(FunctionSpec::ramanujan_aq(rat(1, 1)).is_err());
        assert!(FunctionSpec::riemann_xi()
            .with_mode(CoefficientMode::ExactRational)
            .is_err());
        assert!(FunctionSpec::qbessel(rat(1, 2), rat(1, 2))
            .unwrap()
            .with_mode(CoefficientMode::ExactRational)
            .is_err());
        assert_eq!(
            FunctionSpec::qbessel(rat(1, 2), rat(1, 2)).unwrap().mode,
            CoefficientMode::Float
        );
        assert_eq!(
            FunctionSpec::bessel(rat(1, 2)).unwrap().id(),
            "bessel[nu=1/2]"
        );
    }

    #[test]
    fn modes_agree_numerically() {
        let prec = 128;
        let quad = QuadConfig::default();
        for spec in [
            FunctionSpec::bessel(rat(1, 2)).unwrap(),
            FunctionSpec::qbessel(rat(1, 2), rat(2, 1)).unwrap(),
            FunctionSpec::ramanujan_aq(rat(1, 4)).unwrap(),
        ] {
            let exact = spec
                .coefficients(6, prec, &quad)
                .unwrap()
                .values
                .into_scalars();
            let float = spec
                .clone()
                .with_mode(CoefficientMode::Float)
                .unwrap()
                .coefficients(6, prec, &quad)
                .unwrap();
            let sym = spec
                .clone()
                .with_mode(CoefficientMode::RationalFunction)
                .unwrap()
                .coefficients(6, prec, &quad)
                .unwrap();
            for ((x, y), z) in exact
                .iter()
                .zip(float.values.into_scalars())
                .zip(sym.values.into_scalars())
            {
                let (x, y) = (x.to_bigfloat(prec).unwrap(), y.to_bigfloat(prec).unwrap());
                assert!(x.sub(&y).is_negligible(&x), "{spec}");
                assert_eq!(z.to_bigfloat(prec).unwrap(), x);
            }
        }
    }

    #[test]
    fn sinc_symbolic_evaluates_at_pi_squared() {
        let c = FunctionSpec::sinc()
            .coefficients(2, 128, &QuadConfig::default())
            .unwrap();
        let Values::Float(e) = c.values else {
            panic!("float expected")
        };
        let pi = BigFloat::pi(128);
        assert!(e[1]
            .sub(&pi.mul(&pi).mul_rational(&rat(1, 6)))
            .abs_le_pow2(-120.0));
    }

    #[test]
    fn moments_to_elementary() {
        let b = vec![rat(1, 1), rat(2, 1), rat(4, 1)];
        assert_eq!(
            elementary_from_moments(&b).unwrap(),
            vec![rat(1, 1), rat(1, 1), rat(1, 6)]
        );
        assert!(matches!(
            elementary_from_moments(&[rat(0, 1)]),
            Err(Error::ZeroB0)
        ));
    }
}
