mod common;

use std::collections::BTreeMap;

use common::*;
use oxtoby_core::conjugacy::{
    chi_equiv, conjugacy_test, dkl_search, f_t, infer_block_map, relabel, shift_spec, Aggregate, Relabeling,
};
use oxtoby_core::constructions::oxtoby_classic;
use oxtoby_core::{Error, Status, Symbol};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn swap(residues: &[usize]) -> Relabeling {
    Relabeling::new(2, residues.iter().map(|&r| (r, vec![Symbol(1), Symbol(0)])).collect()).unwrap()
}

#[test]
fn classic_image_is_related_at_every_level() {
    let x = s_ox();
    let y = relabel(&x, 1, &swap(&[0, 2])).unwrap();
    for t in 1..=x.horizon() {
        let w = f_t(&x, &y, t).unwrap().yes().expect("relabeled image is related");
        assert!(w.verified);
    }
}

#[test]
fn every_spec_is_related_to_itself_through_the_identity() {
    let x = s_ox();
    for t in 1..=x.horizon() {
        let w = f_t(&x, &x, t).unwrap().yes().unwrap();
        assert_eq!((w.a, w.b), (0, 0));
        assert!(w.map.identity_on());
    }
}

#[test]
fn relabeling_is_undone_by_its_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let x = random_go_spec(&mut rng, 4, 256);
        let t = x.horizon();
        let rho = random_relabeling(&mut rng, &x, t);
        let back = relabel(&relabel(&x, t, &rho).unwrap(), t, &rho.inverse()).unwrap();
        assert_eq!(back.deep_word(), x.deep_word());
    }
}

#[test]
fn relabel_rejects_non_bijections() {
    let map = BTreeMap::from([(0, vec![Symbol(0), Symbol(0)])]);
    assert!(matches!(Relabeling::new(2, map), Err(Error::NotABijection(0))));
}

#[test]
fn incompatible_specs_are_rejected() {
    let x = s_ox();
    let y = oxtoby_classic(&[4, 2], &strs(&["1", "0"])).unwrap();
    assert!(matches!(f_t(&x, &y, 1), Err(Error::StructureMismatch)));
    assert!(matches!(conjugacy_test(&x, &y, 1, 2), Err(Error::StructureMismatch)));
}

#[test]
fn block_map_is_found_between_shifted_relabeled_copies() {
    let x = s_ox();
    let y = relabel(&shift_spec(&x, 5), 2, &swap(&[3, 8])).unwrap();
    let w = dkl_search(&x, &y, 1, 2).unwrap().expect("witness");
    assert!(w.verified);
    let image = w.map.apply(x.deep_word()).unwrap();
    assert_eq!(image, y.deep_word().rotate(w.shift as i64));
    // the unshifted copies have different hole masks
    assert!(infer_block_map(&x, &shift_spec(&x, 1), 1).unwrap().is_no());
}

#[test]
fn hole_count_mismatch_is_reported_not_conjugate() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (x, y) = mismatched_pair(&mut rng);
    let report = conjugacy_test(&x, &y, 1, x.horizon()).unwrap();
    assert_eq!(report.aggregate, Aggregate::NotConjugateUpToHorizon);
    assert!(report.dkl.is_none());
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["aggregate"], "not_conjugate_up_to_horizon");
    assert_eq!(json["rows"].as_array().unwrap().len(), x.horizon());
}

#[test]
fn conjugate_report_carries_a_witness() {
    let x = s_ox();
    let y = relabel(&x, 2, &swap(&[1, 5, 9])).unwrap();
    let report = conjugacy_test(&x, &y, 1, 2).unwrap();
    assert_eq!(report.aggregate, Aggregate::ConjugateWithWitness);
    assert!(report.dkl.unwrap().verified);
    assert!(matches!(conjugacy_test(&x, &y, 0, 2), Err(Error::LevelOutOfRange { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_pairs_have_verified_witnesses(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_go_spec(&mut rng, 4, 256);
        let pair = random_conjugate_pair(&mut rng, x);
        let w = dkl_search(&pair.x, &pair.y, 1, pair.x.horizon()).unwrap();
        prop_assert!(w.is_some());
        let w = w.unwrap();
        prop_assert!(w.verified);
        prop_assert!(w.level <= pair.x.horizon());
        prop_assert!(w.map.verify(pair.x.deep_word(), &pair.y.deep_word().rotate(w.shift as i64)));
        for t in pair.level..=pair.x.horizon() {
            prop_assert!(chi_equiv(&pair.x, &pair.y, t).unwrap().is_yes());
        }
    }

    #[test]
    fn shift_pair_relation_is_symmetric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let periods = random_periods(&mut rng, 3, 64);
        let x = random_go_spec_with(&mut rng, periods.clone(), 2);
        let y = random_go_spec_with(&mut rng, periods, 2);
        for t in 1..=x.horizon() {
            let forward = f_t(&x, &y, t).unwrap().status();
            let backward = f_t(&y, &x, t).unwrap().status();
            prop_assert_eq!(forward, backward);
            prop_assert_eq!(f_t(&x, &x, t).unwrap().status(), Status::Yes);
        }
    }
}
