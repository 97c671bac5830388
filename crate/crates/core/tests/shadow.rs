use num_bigint::BigInt;
use selforth::combinatorics::rat_of;
use selforth::lp::{self, Claim, FmOutcome};
use selforth::verifier::{rule_out_half_dimension_via_shadow, shadow_system, ShadowConstraints, ShadowVerdict};

fn restricted() -> ShadowConstraints {
    ShadowConstraints {
        code_weights: (10..=32).step_by(2).collect(),
        shadow_weights: (12..=36).step_by(4).collect(),
        absent: Vec::new(),
    }
}

fn lambda0() -> BigInt {
    "397450513031544".parse().unwrap()
}

#[test]
fn fourier_motzkin_bounds_a40() {
    let (sys, obj) = shadow_system(120, 40, 10, 12, &restricted()).unwrap();
    assert_eq!(sys.nvars, 8);
    assert_eq!(sys.constraints.len(), 12 + 7);
    match lp::fm_certify_below(&sys, &obj, &rat_of(&lambda0()), 20_000) {
        FmOutcome::Infeasible(f) => {
            assert_eq!(f.claim, Claim::Below);
            assert!(f.verify(&sys).is_ok());
        }
        other => panic!("no certificate: {other:?}"),
    }
}

#[test]
fn simplex_agrees() {
    let (sys, obj) = shadow_system(120, 40, 10, 12, &restricted()).unwrap();
    let f = lp::certify_below(&sys, &obj, &rat_of(&lambda0())).expect("bounded below lambda_0");
    assert!(f.verify(&sys).is_ok());
}

#[test]
fn verdict_with_all_weights() {
    let v = rule_out_half_dimension_via_shadow(120, 40, &lambda0(), 10, 12, &ShadowConstraints::all(120, &[])).unwrap();
    assert!(matches!(v, ShadowVerdict::Impossible { .. }));
}
