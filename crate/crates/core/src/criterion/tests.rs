use super::*;
use crate::scalars::{rat, Verdict};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

/// `prod (1 - z/r)` for rational roots.
fn product(roots: &[Rational]) -> TruncatedSeries<Rational> {
    let mut c = vec![rat(1, 1)];
    for r in roots {
        let inv = rat(1, 1) / r.clone();
        let mut next = c.clone();
        next.push(rat(0, 1));
        for i in 0..c.len() {
            next[i + 1] -= c[i].clone() * &inv;
        }
        c = next;
    }
    TruncatedSeries::polynomial(c).unwrap()
}

fn info(id: &str) -> FunctionInfo {
    FunctionInfo {
        id: id.into(),
        kind: "SERIES".into(),
        coefficient_mode: None,
        params: BTreeMap::new(),
    }
}

#[test]
fn sinc_moment_passes() {
    let cfg = CertifyConfig::default().with_grid(20);
    let r = certify_moment(
        &FunctionSpec::sinc(),
        &cfg,
        &LambdaPolicy::default_for(FunctionKind::Sinc),
    )
    .unwrap();
    assert_eq!(r.verdict, Outcome::Pass);
    assert_eq!(r.cells.len(), 21 * 22 / 2);
    assert!(r.statement.starts_with("BOUNDED-PASS"));
    assert!(r.metadata.contains_key("symbolic_power_sums"));
}

#[test]
fn bessel_zero_table_lambda_passes_exactly() {
    let cfg = CertifyConfig::default().with_grid(20);
    let spec = FunctionSpec::bessel(rat(0, 1)).unwrap();
    let r = certify_moment(&spec, &cfg, &LambdaPolicy::ZeroTable).unwrap();
    assert_eq!(r.verdict, Outcome::Pass);
    assert_eq!(r.domain, Domain::Rational);
    let lambda = r.lambda.unwrap();
    assert!(lambda.exact.is_some());
    // (1 + 2^-10)/j_01^2 with j_01 = 2.404825557695773
    let want = (1.0 + 2f64.powi(-10)) / 2.404825557695773f64.powi(2);
    assert!((lambda.value.parse::<f64>().unwrap() - want).abs() < 1e-14);
}

#[test]
fn lambda_below_sup_fails() {
    // a single element 1/4 passes at lambda = 1/2; a single element 1 does not
    let cfg = CertifyConfig::default().with_grid(6);
    let p = Values::Rational((1..=7).map(|k| rat(1, 4i64.pow(k))).collect());
    let r = certify_power_sums(info("quarter"), &p, &rat(1, 2), &cfg).unwrap();
    assert_eq!(r.verdict, Outcome::Pass);
    let p = Values::Rational(vec![rat(1, 1); 7]);
    let r = certify_power_sums(info("one"), &p, &rat(1, 2), &cfg).unwrap();
    assert_eq!(r.verdict, Outcome::Fail);
}

#[test]
fn scaling_lambda_rescales_row_zero() {
    let cfg = CertifyConfig::default().with_grid(8);
    let p = Values::Rational(
        FunctionSpec::bessel(rat(1, 1))
            .unwrap()
            .coefficients(9, 64, &QuadConfig::default())
            .and_then(|c| match c.values {
                Values::Rational(e) => {
                    Ok(power_sums_from_elementary(&ElementarySequence::new(e)?, 9)?.into_values())
                }
                _ => unreachable!(),
            })
            .unwrap(),
    );
    let lambda = rat(1, 10);
    let a = certify_power_sums(info("a"), &p, &lambda, &cfg).unwrap();
    let b = certify_power_sums(info("b"), &p, &(lambda.clone() * rat(2, 1)), &cfg).unwrap();
    assert_eq!(a.verdict, Outcome::Pass);
    assert_eq!(b.verdict, Outcome::Pass);
    for k in 0..=8 {
        let x = crate::scalars::parse_rational(&a.cells[k].value).unwrap();
        let y = crate::scalars::parse_rational(&b.cells[k].value).unwrap();
        assert_eq!((a.cells[k].j, a.cells[k].k), (0, k));
        assert_eq!(y, x / Rational::from(2i64.pow(k as u32 + 1)));
    }
}

#[test]
fn derivative_positive_roots_pass() {
    let f = product(&ints(&[2, 3]));
    let rho = rat(2, 1) * safety(false);
    let cfg = CertifyConfig::default().with_grid(10);
    let r = certify_series(info("(1-z/2)(1-z/3)"), &f, &rho, &cfg).unwrap();
    assert_eq!(r.verdict, Outcome::Pass);
    assert_eq!(r.metadata["route_check"]["exact"], true);
    assert_eq!(r.metadata["route_check"]["cells_checked"], 66);
}

#[test]
fn derivative_negative_root_fails() {
    let f = product(&ints(&[-2, 3]));
    let rho = rat(2, 1) * safety(false);
    let cfg = CertifyConfig::default().with_grid(8);
    let r = certify_series(info("(1+z/2)(1-z/3)"), &f, &rho, &cfg).unwrap();
    assert_eq!(r.verdict, Outcome::Fail);
    assert!(r.failures.iter().all(|c| c.verdict == Verdict::Negative));
}

#[test]
fn derivative_matches_moment_table_for_bessel() {
    let cfg = CertifyConfig::default().with_grid(12);
    let spec = FunctionSpec::bessel(rat(1, 2)).unwrap();
    let r = certify_derivative(&spec, &cfg, &RhoPolicy::ZeroTable).unwrap();
    assert_eq!(r.verdict, Outcome::Pass);
    assert_eq!(r.mode, CertMode::Derivative);
    assert_eq!(r.metadata["route_check"]["exact"], true);
}

#[test]
fn derivative_float_route_check() {
    let cfg = CertifyConfig::default().with_grid(12).with_precision(192);
    let spec = FunctionSpec::bessel(rat(3, 1))
        .unwrap()
        .with_mode(CoefficientMode::Float)
        .unwrap();
    let r = certify_derivative(&spec, &cfg, &RhoPolicy::PowerSumBound).unwrap();
    assert_eq!(r.verdict, Outcome::Pass);
    assert_eq!(r.precision_bits, Some(192));
    assert_eq!(r.metadata["route_check"]["exact"], false);
}

#[test]
fn shifted_sinc_passes() {
    let cfg = CertifyConfig::default().with_grid(8).with_precision(192);
    let spec = FunctionSpec::sinc();
    let r = certify_shifted_even(&spec, &rat(1, 1), &cfg, &RhoPolicy::PowerSumBound).unwrap();
    assert_eq!(r.verdict, Outcome::Pass);
    assert_eq!(r.mode, CertMode::ShiftedEven);
}

#[test]
fn zero_shift_is_the_plain_reduction() {
    // G(x) = sin(pi x)/(pi x) so G(sqrt z) has e_k = pi^(2k)/(2k+1)!
    let prec = 192;
    let e: Vec<BigFloat> = crate::catalog::exact::sinc_coeffs_in(
        &BigFloat::pi(prec + 64).mul(&BigFloat::pi(prec + 64)),
        20,
    )
    .unwrap()
    .values()
    .to_vec();
    let (f, residue) = shifted_even_series(&e, &rat(0, 1), 10, prec).unwrap();
    assert!(residue.is_zero());
    for (k, c) in f.coeffs().iter().enumerate() {
        let want = if k % 2 == 1 { e[k].neg() } else { e[k].clone() };
        assert!(c.close_to(&want.with_prec(prec)), "k = {k}");
    }
}

#[test]
fn shift_onto_a_zero_is_rejected() {
    // G(x) = 1 + x^2 vanishes at x = i
    let e = vec![BigFloat::from_i64(1, 128), BigFloat::from_i64(-1, 128)];
    assert_eq!(
        shifted_even_series(&e, &rat(1, 1), 2, 128).unwrap_err(),
        Error::ShiftedNormalizationZero
    );
}

#[test]
fn zero_table_policy_needs_a_table() {
    let cfg = CertifyConfig::default().with_grid(4);
    let err = certify_moment(
        &FunctionSpec::ramanujan_aq(rat(1, 2)).unwrap(),
        &cfg,
        &LambdaPolicy::ZeroTable,
    )
    .unwrap_err();
    assert!(matches!(err, Error::LambdaUnavailable(_)));
}

#[test]
fn fixed_lambda_must_be_positive() {
    let cfg = CertifyConfig::default().with_grid(4);
    let err = certify_moment(
        &FunctionSpec::sinc(),
        &cfg,
        &LambdaPolicy::fixed(&rat(0, 1)),
    )
    .unwrap_err();
    assert_eq!(err, Error::NonPositiveLambda);
}

#[test]
fn report_round_trips_and_csv_shape() {
    let cfg = CertifyConfig::default().with_grid(5);
    let r = certify_moment(
        &FunctionSpec::ramanujan_aq(rat(1, 4)).unwrap(),
        &cfg,
        &LambdaPolicy::PowerSumBound,
    )
    .unwrap();
    let back = CertificateReport::from_json(&r.to_json()).unwrap();
    assert_eq!(back, r);
    let csv = r.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[0], "j,k0,k1,k2,k3,k4,k5");
    assert_eq!(lines[6].split(',').count(), 2);
}

#[test]
fn json_is_repeatable() {
    let cfg = CertifyConfig::default().with_grid(6);
    let spec = FunctionSpec::qbessel(rat(1, 2), rat(0, 1)).unwrap();
    let a = certify_moment(&spec, &cfg, &LambdaPolicy::PowerSumBound)
        .unwrap()
        .to_json();
    let b = certify_moment(&spec, &cfg, &LambdaPolicy::PowerSumBound)
        .unwrap()
        .to_json();
    assert_eq!(a, b);
}
