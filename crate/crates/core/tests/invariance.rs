mod common;

use proptest::prelude::*;

use common::{random_code, random_isometry, rng};
use permcode::invariants::{
    cycle_index, distance_enumerator, distance_enumerator_from_cycle_index, occurrence_matrix, quotient_pair,
    quotient_pairs_equivalent,
};
use permcode::{canonical_form, find_isometry, Equivalence};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn invariants_survive_isometries(n in 4usize..=5, dsel in 0usize..2, size in 1usize..=9, seed in any::<u64>()) {
        let d = n - 1 + dsel;
        let mut r = rng(seed);
        let c = random_code(&mut r, n, d, size);
        let t = random_isometry(&mut r, n);
        let image = t.apply_to_code(&c);

        prop_assert_eq!(image.len(), c.len());
        prop_assert_eq!(cycle_index(&image), cycle_index(&c));
        prop_assert_eq!(distance_enumerator(&image), distance_enumerator(&c));
        prop_assert_eq!(occurrence_matrix(&image).multiset(), occurrence_matrix(&c).multiset());
        prop_assert!(quotient_pairs_equivalent(&quotient_pair(&c), &quotient_pair(&image)).unwrap());
        prop_assert_eq!(distance_enumerator_from_cycle_index(&cycle_index(&c)), distance_enumerator(&c));

        let (fc, fi) = (canonical_form(&c), canonical_form(&image));
        prop_assert_eq!(&fc.certificate, &fi.certificate);
        prop_assert_eq!(fc.group_size, fi.group_size);
        prop_assert_eq!(fc.canonical_code(&c), fi.canonical_code(&image));

        let w = find_isometry(&c, &image, Equivalence::Full).unwrap().expect("isometric by construction");
        prop_assert_eq!(w.apply_to_code(&c), image);
    }

    #[test]
    fn left_right_images_keep_the_restricted_certificate(n in 4usize..=5, seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_code(&mut r, n, n - 1, 6);
        let mut t = random_isometry(&mut r, n);
        t.inverse = false;
        let image = t.apply_to_code(&c);
        let a = permcode::canonical_form_with(&c, Equivalence::NoInversion);
        let b = permcode::canonical_form_with(&image, Equivalence::NoInversion);
        prop_assert_eq!(a.certificate, b.certificate);
    }
}
