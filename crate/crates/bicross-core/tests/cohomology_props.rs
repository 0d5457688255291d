mod common;

use bicross_core::cohomology::{
    coboundaries_are_cocycles, coboundary, cocycle_system, extension_group, is_cocycle,
    normalization_defects, normalize_cocycle, CohomologyContext,
};
use bicross_core::intmat::{smith_normal_form, IntMatrix};
use common::*;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn coboundaries_satisfy_the_cocycle_equations(idx in pair_index()) {
        let pair = &small_pairs()[idx];
        prop_assert!(coboundaries_are_cocycles(&cocycle_system(pair)));
    }

    #[test]
    fn extension_group_survives_relabeling(idx in pair_index(), k1 in prop::collection::vec(any::<u32>(), 8), k2 in prop::collection::vec(any::<u32>(), 8)) {
        let pair = &small_pairs()[idx];
        let p = perm_fixing_zero(pair.n1(), &k1);
        let q = perm_fixing_zero(pair.n2(), &k2);
        let re = relabel_g2(&relabel_g1(pair, &p), &q);
        prop_assert_eq!(extension_group(&re), extension_group(pair));
    }

    #[test]
    fn representatives_are_distinct_cocycles(idx in pair_index()) {
        let pair = &small_pairs()[idx];
        let ctx = CohomologyContext::new(pair);
        let inv = ctx.invariants();
        let reps = ctx.representatives(pair, inv.exponent());
        prop_assert_eq!(reps.cocycles.len() as u64, inv.torsion_order());
        for c in &reps.cocycles {
            prop_assert!(is_cocycle(pair, c).is_empty());
        }
        for (a, x) in reps.cocycles.iter().enumerate() {
            for y in &reps.cocycles[a + 1..] {
                prop_assert!(ctx.cohomologous(pair, x, y).unwrap().is_none());
            }
        }
    }

    #[test]
    fn normalization_stays_in_class(idx in pair_index(), class in any::<usize>(), nums in prop::collection::vec(-20i64..20, 1..40), den in 1i64..13) {
        let pair = &small_pairs()[idx];
        let ctx = CohomologyContext::new(pair);
        let inv = ctx.invariants();
        let reps = ctx.representatives(pair, inv.exponent());
        let base = &reps.cocycles[class % reps.cocycles.len()];
        let r = phases(&nums, den, pair.n1() * pair.n2());
        let c = base.add(&coboundary(pair, &r));
        prop_assert!(is_cocycle(pair, &c).is_empty());
        let (norm, witness) = normalize_cocycle(pair, &c).unwrap();
        prop_assert!(normalization_defects(pair, &norm).is_empty());
        prop_assert_eq!(&c.add(&coboundary(pair, &witness)), &norm);
        prop_assert!(ctx.cohomologous(pair, &c, &norm).unwrap().is_some());
        prop_assert!(ctx.cohomologous(pair, base, &norm).unwrap().is_some());
    }

    #[test]
    fn smith_form_round_trip(rows in 1usize..7, cols in 1usize..7, entries in prop::collection::vec(-9i64..10, 36)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * 6 + j]).collect()).collect();
        let m = IntMatrix::from_rows(&data);
        let (s, l, r) = smith_normal_form(&m);
        prop_assert_eq!(&l.mul(&m).mul(&r), &s);
        prop_assert!(s.is_diagonal());
        prop_assert!(l.determinant().abs().is_one());
        prop_assert!(r.determinant().abs().is_one());
        let d = s.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
    }
}
