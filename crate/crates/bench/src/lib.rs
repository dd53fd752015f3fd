//! Fixtures shared by the benchmarks.

use posroot::scalars::rat;
use posroot::{FunctionSpec, Rational};

/// Catalog entries with exact coefficients, used for the rational benches.
pub fn exact_catalog() -> Vec<FunctionSpec> {
    vec![
        FunctionSpec::bessel(rat(1, 2)).expect("valid order"),
        FunctionSpec::ramanujan_aq(rat(1, 4)).expect("valid q"),
        FunctionSpec::qbessel(rat(1, 2), rat(0, 1)).expect("valid parameters"),
    ]
}

/// `e_0 = 1, e_k = (-1)^k / k!`, a dense exact input for Newton's identities.
pub fn alternating_elementary(k: usize) -> Vec<Rational> {
    let mut out = vec![rat(1, 1)];
    let mut f = rat(1, 1);
    for i in 1..=k {
        f /= Rational::from(i as i64);
        out.push(if i % 2 == 1 { -f.clone() } else { f.clone() });
    }
    out
}
