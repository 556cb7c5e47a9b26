//! Randomized invariants of the index calculus over representable maps.

use cofinite::analysis::{classify, complements, image_identity_check, index, tail_index};
use cofinite::constructions::class_inverse;
use cofinite::oracle::{check_left_right, FiniteSelfMap};
use cofinite::quotient::class_of;
use cofinite::sample::{random_map, random_near_bijection, random_permutation, SampleSpec};
use cofinite::SelfMap;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn near_bijections_compose(seed in any::<u64>()) {
        let mut r = rng(seed);
        let spec = SampleSpec::default();
        let (f, g) = (random_near_bijection(&mut r, &spec), random_near_bijection(&mut r, &spec));
        prop_assert!(classify(&g.compose(&f)).near_bijective);
        prop_assert_eq!(index(&g.compose(&f)).unwrap(), index(&f).unwrap() + index(&g).unwrap());
    }

    #[test]
    fn counting_index_matches_tail_formula(seed in any::<u64>()) {
        let f = random_near_bijection(&mut rng(seed), &SampleSpec::default());
        prop_assert_eq!(Some(index(&f).unwrap()), tail_index(&f));
        prop_assert!(image_identity_check(&f).unwrap());
    }

    #[test]
    fn permutations_move_complements_as_sets(seed in any::<u64>()) {
        let mut r = rng(seed);
        let spec = SampleSpec::default();
        let (f, pi) = (random_near_bijection(&mut r, &spec), random_permutation(&mut r, &spec));
        let base = complements(&f).unwrap();
        let left = complements(&pi.compose(&f)).unwrap();
        let right = complements(&f.compose(&pi)).unwrap();
        prop_assert_eq!(&left.monoset, &base.monoset);
        prop_assert_eq!(left.range, base.range.iter().map(|&y| pi.evaluate(y)).collect());
        prop_assert_eq!(&right.range, &base.range);
        prop_assert_eq!(right.monoset.iter().map(|&x| pi.evaluate(x)).collect::<std::collections::BTreeSet<_>>(), base.monoset);
    }

    #[test]
    fn finite_permutation_transforms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=9);
        let f = FiniteSelfMap::random(&mut r, n);
        let mut table: Vec<u64> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(table.as_mut_slice(), &mut r);
        prop_assert!(check_left_right(&f, &FiniteSelfMap::new(table).unwrap()));
    }

    #[test]
    fn index_is_constant_on_cosets(seed in any::<u64>()) {
        let mut r = rng(seed);
        let spec = SampleSpec::default();
        let (f, pi) = (random_near_bijection(&mut r, &spec), random_permutation(&mut r, &spec));
        let k = index(&f).unwrap();
        prop_assert_eq!(index(&pi.compose(&f)).unwrap(), k);
        prop_assert_eq!(index(&f.compose(&pi)).unwrap(), k);
    }

    #[test]
    fn finite_edits_do_not_move_the_index(seed in any::<u64>(), edits in proptest::collection::vec((0u64..40, 0u64..40), 1..6)) {
        let f = random_near_bijection(&mut rng(seed), &SampleSpec::default());
        let g = f.with_values(edits);
        prop_assert!(g.almost_equal(&f));
        prop_assert_eq!(index(&g).unwrap(), index(&f).unwrap());
        prop_assert_eq!(class_of(&g).unwrap(), class_of(&f).unwrap());
    }

    #[test]
    fn class_inverse_is_two_sided(seed in any::<u64>()) {
        let f = random_near_bijection(&mut rng(seed), &SampleSpec::default());
        let inv = class_inverse(&f).unwrap();
        prop_assert!(inv.compose(&f).almost_equal(&SelfMap::identity()));
        prop_assert!(f.compose(&inv).almost_equal(&SelfMap::identity()));
        prop_assert_eq!(index(&inv).unwrap(), -index(&f).unwrap());
    }

    #[test]
    fn near_injective_composition_respects_almost_equality(seed in any::<u64>(), df in proptest::collection::vec((0u64..30, 0u64..30), 0..4), dg in proptest::collection::vec((0u64..30, 0u64..30), 0..4)) {
        let mut r = rng(seed);
        let spec = SampleSpec::default();
        let f1 = random_near_bijection(&mut r, &spec);
        let g1 = random_map(&mut r, &spec);
        let (f2, g2) = (f1.with_values(df), g1.with_values(dg));
        prop_assert!(g1.compose(&f1).almost_equal(&g2.compose(&f2)));
    }
}
