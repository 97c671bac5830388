use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use selforth::combinatorics::{binom, design_params, int, BinomTable};
use selforth::enumerator::{gleason_decompose, macwilliams, GleasonForm};
use selforth::gf2code::BinaryCode;
use selforth::mendelsohn::{certify_no_dual_weight, replay, Certificate};
use selforth::verifier::case_design;

/// Dual weight distribution by enumerating all vectors of F_2^n.
fn brute_dual_distribution(n: usize, rows: &[Vec<bool>]) -> Vec<BigInt> {
    let masks: Vec<u32> = rows
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, b)| **b).fold(0u32, |m, (i, _)| m | (1 << i)))
        .collect();
    let mut out = vec![BigInt::zero(); n + 1];
    for x in 0u32..(1 << n) {
        if masks.iter().all(|m| (m & x).count_ones() % 2 == 0) {
            out[x.count_ones() as usize] += 1;
        }
    }
    out
}

fn random_code() -> impl Strategy<Value = (usize, Vec<Vec<bool>>)> {
    (4usize..=14).prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(any::<bool>(), n), 1..=n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn macwilliams_matches_brute_force((n, vecs) in random_code()) {
        let c = BinaryCode::from_vectors(n, &vecs);
        let w = c.weight_distribution().unwrap();
        let b = macwilliams(&w, c.dimension()).unwrap();
        prop_assert_eq!(&b.a, &brute_dual_distribution(n, &c.basis_vectors()));
        let back = macwilliams(&b, n - c.dimension()).unwrap();
        prop_assert_eq!(back.a, w.a);
    }

    #[test]
    fn gleason_round_trip(j in 1usize..=18, seed in prop::collection::vec(-1_000_000i64..1_000_000, 19)) {
        let n = 8 * j;
        let coeffs: Vec<BigRational> = (0..=n / 24).map(|i| BigRational::from_integer(seed[i].into())).collect();
        let form = GleasonForm { n, coeffs: coeffs.clone() };
        let w = form.expand_integral().expect("integer combination of integer polynomials");
        prop_assert_eq!(gleason_decompose(&w).unwrap().coeffs, coeffs);
    }

    #[test]
    fn certificates_replay(m in 1usize..=4, dk in 1usize..=3, w in 1u32..40) {
        let k = (m + dk).min(3 * m);
        let d = case_design(m, k).unwrap();
        prop_assume!(w < d.v);
        let check = certify_no_dual_weight(&d, w);
        if let Some(cert) = &check.certificate {
            prop_assert!(replay(&d, w, cert));
            // a perturbed certificate must not verify
            let bad = match cert {
                Certificate::Farkas(f) => {
                    // flips the sign of the contradiction, or makes a sign-constrained multiplier negative
                    let mut f = f.clone();
                    for x in f.multipliers.iter_mut() {
                        *x = -x.clone();
                    }
                    Certificate::Farkas(f)
                }
                Certificate::Lattice(u) => {
                    let mut u = u.clone();
                    for x in u.iter_mut() {
                        *x = BigRational::zero();
                    }
                    Certificate::Lattice(u)
                }
            };
            prop_assert!(!replay(&d, w, &bad));
        }
    }
}

#[test]
fn pascal_rule_sweep() {
    let t = BinomTable::new(200);
    for n in 1..=200i64 {
        for k in 1..=n {
            assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k), "({n},{k})");
            assert_eq!(*t.at(n as usize, k as usize), binom(n, k));
        }
        assert_eq!(binom(n, 0), int(1));
        assert_eq!(binom(n, n + 1), int(0));
    }
}

#[test]
fn lambda_index_divides_out() {
    // λ_i (k−i) = λ_{i+1} (v−i) for every index
    for m in 1..=6 {
        for k in m + 1..=3 * m {
            let d = case_design(m, k).unwrap();
            for i in 0..5u32 {
                let l = &d.lambda_index;
                assert_eq!(
                    &l[i as usize] * BigInt::from(d.k - i),
                    &l[i as usize + 1] * BigInt::from(d.v - i)
                );
            }
            assert_eq!(design_params(5, d.v, d.k, d.lambda.clone()).unwrap(), d);
        }
    }
}
