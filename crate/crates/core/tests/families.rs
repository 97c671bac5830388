mod common;

use num_bigint::BigInt;
use common::*;
use selforth::enumerator::{extremal_family, singly_even_family_with_shadow, ParametricEnumerator};

#[test]
fn parser_sanity() {
    let f = parse_form("-315744 + 276a + 22b + c");
    assert_eq!(f[""], BigInt::from(-315744));
    assert_eq!(f["c"], BigInt::from(1));
    assert_eq!(parse_form("α + 30β")["β"], BigInt::from(30));
}

#[test]
fn length_72_display() {
    let p = extremal_family(72, 12).unwrap();
    assert_eq!(p.params, vec!["α"]);
    check_table(&p, N72);
}

#[test]
fn length_96_table() {
    check_table(&extremal_family(96, 12).unwrap(), N96);
}

#[test]
fn length_120_table() {
    check_table(&extremal_family(120, 12).unwrap(), N120);
}

#[test]
fn length_144_table() {
    check_table(&extremal_family(144, 12).unwrap(), N144);
}

#[test]
fn singly_even_120_tables() {
    let p = singly_even_family_with_shadow(120, 10, 12).unwrap();
    check_table(&p.code, C120);
    check_table(&p.shadow, S120);
}

/// A_{4k} rewritten in the free coordinates A_12, A_16, ...
fn in_free_coordinates(p: &ParametricEnumerator, target: usize) -> Vec<BigInt> {
    use num_rational::BigRational;
    use selforth::linalg::solve_left;
    let np = p.nparams();
    let rows: Vec<Vec<BigRational>> = (0..np).map(|i| p.coefficient(12 + 4 * i).coeffs.clone()).collect();
    let y = solve_left(&rows, &p.coefficient(target).coeffs, np).expect("free weights span the parameters");
    y.iter().map(|v| v.to_integer()).collect()
}

#[test]
fn free_coordinate_forms() {
    let p96 = extremal_family(96, 12).unwrap();
    assert_eq!(in_free_coordinates(&p96, 36), vec![BigInt::from(-192412), BigInt::from(-4368)]);
    let p120 = extremal_family(120, 12).unwrap();
    assert_eq!(
        in_free_coordinates(&p120, 56),
        [-1130786592i64, -16300570, -167960].map(BigInt::from).to_vec()
    );
    let p144 = extremal_family(144, 12).unwrap();
    assert_eq!(
        in_free_coordinates(&p144, 68),
        [-1215686694585i64, -16397532256, -246582076, -2496144].map(BigInt::from).to_vec()
    );
}
