use posroot::criterion::{
    adversarial_run, certify_derivative, certify_moment, certify_shifted_even, explicit_p_formulas,
    p_from_b_closed_form, p_from_b_recurrence, power_sums, AdversarialSpec, Defect,
};
use posroot::scalars::{rat, Field, Verdict};
use posroot::symfun::{power_sums_from_elementary, ElementarySequence};
use posroot::{
    CertMode, CertifyConfig, CoefficientMode, FunctionSpec, LambdaPolicy, Outcome, Rational,
    RhoPolicy, Values,
};

fn grid(b: usize) -> CertifyConfig {
    CertifyConfig::default().with_grid(b)
}

fn exact_catalog() -> Vec<FunctionSpec> {
    vec![
        FunctionSpec::bessel(rat(0, 1)).unwrap(),
        FunctionSpec::bessel(rat(1, 2)).unwrap(),
        FunctionSpec::bessel(rat(3, 1)).unwrap(),
        FunctionSpec::ramanujan_aq(rat(1, 4)).unwrap(),
        FunctionSpec::ramanujan_aq(rat(1, 2)).unwrap(),
        FunctionSpec::qbessel(rat(1, 2), rat(0, 1)).unwrap(),
    ]
}

#[test]
fn proven_positive_functions_pass_in_both_forms() {
    for spec in exact_catalog() {
        for b in [4, 10] {
            let m = certify_moment(&spec, &grid(b), &LambdaPolicy::PowerSumBound).unwrap();
            assert_eq!(m.verdict, Outcome::Pass, "{} moment B={b}", spec.id());
            assert!(m.precision_bits.is_none());
            let d = certify_derivative(&spec, &grid(b), &RhoPolicy::PowerSumBound).unwrap();
            assert_eq!(d.verdict, Outcome::Pass, "{} derivative B={b}", spec.id());
            assert_eq!(d.metadata["route_check"]["exact"], true);
        }
    }
}

#[test]
fn symbolic_and_exact_modes_agree() {
    let cfg = grid(6);
    let exact = FunctionSpec::bessel(rat(1, 2)).unwrap();
    let symbolic = exact
        .clone()
        .with_mode(CoefficientMode::RationalFunction)
        .unwrap();
    let a = power_sums(&exact, 7, 128, &cfg).unwrap();
    let b = power_sums(&symbolic, 7, 128, &cfg).unwrap();
    assert_eq!(a.p, b.p);
    assert!(b.metadata.contains_key("symbolic_power_sums"));
}

#[test]
fn float_mode_tracks_exact_mode() {
    let cfg = grid(6);
    let exact = FunctionSpec::ramanujan_aq(rat(1, 2)).unwrap();
    let float = exact.clone().with_mode(CoefficientMode::Float).unwrap();
    let (Values::Rational(pe), Values::Float(pf)) = (
        power_sums(&exact, 7, 192, &cfg).unwrap().p,
        power_sums(&float, 7, 192, &cfg).unwrap().p,
    ) else {
        panic!("unexpected domains");
    };
    for (x, y) in pe.iter().zip(&pf) {
        let want = posroot::BigFloat::from_rational(x, 192);
        assert!(y.sub(&want).abs_le_pow2(-150.0));
    }
}

#[test]
fn shifted_sinc_at_several_shifts() {
    let cfg = grid(8).with_precision(192);
    for c in [rat(0, 1), rat(1, 2), rat(1, 1)] {
        let r = certify_shifted_even(&FunctionSpec::sinc(), &c, &cfg, &RhoPolicy::PowerSumBound)
            .unwrap();
        assert_eq!(r.mode, CertMode::ShiftedEven);
        assert!(
            r.failures.iter().all(|f| f.verdict != Verdict::Negative),
            "c = {c}"
        );
    }
}

#[test]
fn explicit_formulas_match_recurrence_and_closed_form() {
    let b: Vec<Rational> = vec![rat(7, 3), rat(-2, 5), rat(11, 4), rat(1, 9), rat(-3, 7)];
    let e: Vec<Rational> = (0..5)
        .map(|i| {
            b[i].clone()
                / (b[0].clone() * Rational::from(posroot::scalars::factorial(2 * i as u32)))
        })
        .collect();
    let newton = power_sums_from_elementary(&ElementarySequence::new(e).unwrap(), 4).unwrap();
    assert_eq!(explicit_p_formulas(&b, 4).unwrap(), newton);
    assert_eq!(p_from_b_recurrence(&b, 4).unwrap(), newton);
    assert_eq!(p_from_b_closed_form(&b, 4).unwrap(), newton);
}

#[test]
fn adversarial_pair_reports_depth() {
    let spec = AdversarialSpec::new(vec![Defect::ConjugatePair {
        re: rat(3, 10),
        im: rat(2, 5),
        multiplicity: 1,
    }])
    .unwrap();
    let (r, depth) = adversarial_run(&spec, &grid(24)).unwrap();
    assert_eq!(r.metadata["detection_depth"], serde_json::json!(depth));
    if let Some(d) = depth {
        assert!(d <= 24);
        assert_eq!(r.verdict, Outcome::Fail);
    }
}
