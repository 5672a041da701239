mod common;

use std::collections::BTreeMap;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use oxtoby_core::constructions::oxtoby_classic;
use oxtoby_core::measures::{
    d_double_star, d_star, density_profile, empirical_measure, freq_double_star, freq_star, trajectory,
    CylinderMeasure, WeightScheme,
};
use oxtoby_core::{Error, Symbol};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn bits(s: &str) -> Vec<Symbol> {
    s.chars().map(|c| Symbol(c.to_digit(2).unwrap() as u16)).collect()
}

// Expected values below come from tools/oracle.py.

#[test]
fn distance_of_a_periodic_word_to_its_own_measure() {
    let b0 = bits("01010101");
    let mu = CylinderMeasure::from_cyclic_word(&bits("01"), 3).unwrap();
    let d = d_star(&b0, &mu, 3).unwrap();
    assert_eq!(d.value, q(1, 16));
    assert_eq!(d.tail_bound, q(1, 4));
    let weights = WeightScheme::new(BTreeMap::from([(1, q(1, 2)), (3, q(1, 4))])).unwrap();
    let dd = d_double_star(&b0, &mu, 3, &weights).unwrap();
    assert_eq!(dd.value, q(19, 192));
    // 3/4 of the weight on the window plus the 1/4 left off the scheme
    assert_eq!(dd.tail_bound, q(3, 4) * q(1, 4) + q(1, 2));
}

#[test]
fn thue_morse_block_against_alternating_measure() {
    let b0 = bits("0110100110010110");
    let mu = CylinderMeasure::from_cyclic_word(&bits("01"), 2).unwrap();
    assert_eq!(d_star(&b0, &mu, 2).unwrap().value, q(11, 64));
}

#[test]
fn unit_weights_reduce_to_the_single_star_distance() {
    let b0 = bits("0110100110010110");
    let mu = CylinderMeasure::from_cyclic_word(&bits("0011"), 4).unwrap();
    let single = d_star(&b0, &mu, 4).unwrap();
    let double = d_double_star(&b0, &mu, 4, &WeightScheme::unit()).unwrap();
    assert_eq!(single, double);
    let path = trajectory(&[b0.clone(), bits("0011")], &mu, 4, &WeightScheme::unit()).unwrap();
    assert_eq!(path[0].0, single);
}

#[test]
fn frequency_examples_and_errors() {
    let b0 = bits("0110");
    assert_eq!(freq_star(&b0, &bits("1")).unwrap(), q(1, 2));
    assert_eq!(freq_star(&b0, &bits("11")).unwrap(), q(1, 4));
    assert_eq!(freq_star(&b0, &bits("01100")).unwrap(), BigRational::zero());
    assert!(matches!(freq_star::<Symbol>(&[], &bits("1")), Err(Error::EmptyBase)));
    assert!(matches!(freq_double_star(&b0, &bits("1"), 2, 0), Err(Error::BadCongruenceParams { .. })));
    assert!(matches!(freq_double_star(&b0, &bits("1"), 3, 3), Err(Error::BadCongruenceParams { .. })));
}

#[test]
fn weight_schemes() {
    assert_eq!(WeightScheme::geometric(5).unwrap().total(), q(7, 8));
    assert!(WeightScheme::new(BTreeMap::from([(2, q(1, 2))])).is_err());
    assert!(WeightScheme::new(BTreeMap::from([(1, q(3, 4)), (3, q(1, 2))])).is_err());
    assert_eq!(WeightScheme::unit().total(), BigRational::one());
}

#[test]
fn measure_depth_is_checked() {
    let mu = CylinderMeasure::from_cyclic_word(&bits("01"), 2).unwrap();
    assert!(matches!(d_star(&bits("01"), &mu, 3), Err(Error::InsufficientMeasureDepth { .. })));
}

#[test]
fn empirical_measure_skips_blank_windows() {
    let s = s_ox();
    let mu = empirical_measure(&s, 1, 2).unwrap();
    // x_1 = 1□□1 read cyclically: the only defined length-2 window is "11"
    assert_eq!(mu.get(&bits("11")), BigRational::one());
    assert_eq!(mu.get(&bits("1")), BigRational::one());
}

#[test]
fn density_oscillation_on_six_levels() {
    let s = oxtoby_classic(&[4; 6], &strs(&["1", "0", "1", "0", "1", "0"])).unwrap();
    let got = density_profile(&s, Symbol(1), &[1, 2, 3, 4, 5, 6]).unwrap();
    assert_eq!(got, vec![q(1, 1), q(2, 3), q(5, 7), q(2, 3), q(21, 31), q(2, 3)]);
}

proptest! {
    #[test]
    fn mass_identity(word in proptest::collection::vec(0u16..2, 1..40), l in 1usize..6) {
        let b0: Vec<Symbol> = word.into_iter().map(Symbol).collect();
        let mut total = BigRational::zero();
        for v in 0..1u32 << l {
            let b: Vec<Symbol> = (0..l).map(|i| Symbol(((v >> i) & 1) as u16)).collect();
            total += freq_star(&b0, &b).unwrap();
        }
        let n = b0.len() as i64;
        let expected = if l as i64 > n { BigRational::zero() } else { q(n - l as i64 + 1, n) };
        prop_assert_eq!(total, expected);
    }
}
