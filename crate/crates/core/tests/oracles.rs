//! Operation examples checked against independently computed values.

mod common;

use common::{brute_expected_error, brute_vc, class};
use num::{BigInt, BigRational, Signed};
use vcone::concept::{vc_dimension, vc_dimension_with_witness};
use vcone::erm::{exact_expected_error, exact_expected_error_with, SegmentConvention};
use vcone::ConceptClass;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn expected_error_matches_enumeration() {
    for (n, m) in [(2, 1), (3, 2), (4, 3), (5, 2), (6, 4), (7, 3), (3, 7)] {
        let (num, den) = brute_expected_error(n, m);
        let brute = BigRational::new(BigInt::from(num), BigInt::from(den));
        assert_eq!(exact_expected_error(n, m), brute, "N={n} m={m}");
    }
}

#[test]
fn expected_error_frozen_values() {
    // enumerated over all N^m rank sequences with exact fractions
    assert_eq!(exact_expected_error(2, 1), q(1, 4));
    assert_eq!(exact_expected_error(3, 2), q(5, 27));
    assert_eq!(exact_expected_error(4, 3), q(9, 64));
    assert_eq!(exact_expected_error(6, 4), q(979, 7776));
    assert_eq!(exact_expected_error_with(6, 4, SegmentConvention::Open), q(2275, 7776));
    assert_eq!(exact_expected_error_with(7, 3, SegmentConvention::Open), q(16, 49));
}

#[test]
fn expected_error_large_n() {
    let e = exact_expected_error(1000, 9);
    let frozen: BigRational = "1990014999986000009999997/20000000000000000000000000".parse().unwrap();
    assert_eq!(e, frozen);
    let gap = (e - q(1, 10)).abs();
    assert!(gap < q(1, 1000));
}

#[test]
fn vc_search_matches_full_scan() {
    for n in 1..=3 {
        for c in ConceptClass::enumerate_all(n).unwrap() {
            assert_eq!(vc_dimension(&c), brute_vc(&c), "{c:?}");
        }
    }
    let c = class(&["000", "100", "110", "111"]);
    assert_eq!(brute_vc(&c), 1);
}

#[test]
fn witness_is_shattered() {
    for c in ConceptClass::enumerate_all(3).unwrap() {
        let vc = vc_dimension_with_witness(&c);
        assert_eq!(vc.witness.len(), vc.dimension);
        assert!(vcone::concept::shatters(&c, &vc.witness).unwrap());
    }
}
