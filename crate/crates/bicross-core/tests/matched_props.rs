mod common;

use common::*;
use proptest::prelude::*;
use std::collections::BTreeSet;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn actions_are_bijections(idx in pair_index()) {
        let pair = &small_pairs()[idx];
        let (n1, n2) = (pair.n1(), pair.n2());
        prop_assert!(pair.verify_matched_identities().is_empty());
        let image: BTreeSet<_> = pair.rho_inv_theta().into_iter().collect();
        prop_assert_eq!(image.len(), n1 * n2);
        for g in 0..n1 {
            let row: BTreeSet<_> = (0..n2).map(|s| pair.alpha(g, s)).collect();
            prop_assert_eq!(row.len(), n2);
        }
        for s in 0..n2 {
            let row: BTreeSet<_> = (0..n1).map(|g| pair.beta(s, g)).collect();
            prop_assert_eq!(row.len(), n1);
        }
        let theta: BTreeSet<_> = (0..n1).flat_map(|g| (0..n2).map(move |s| (g, s))).map(|(g, s)| pair.theta(g, s)).collect();
        prop_assert_eq!(theta.len(), pair.ambient.order());
    }

    #[test]
    fn relabeling_conjugates_tables(idx in pair_index(), k1 in prop::collection::vec(any::<u32>(), 8), k2 in prop::collection::vec(any::<u32>(), 8)) {
        let pair = &small_pairs()[idx];
        let (n1, n2) = (pair.n1(), pair.n2());
        let (p, q) = (perm_fixing_zero(n1, &k1), perm_fixing_zero(n2, &k2));
        let re = relabel_g2(&relabel_g1(pair, &p), &q);
        prop_assert!(re.verify_matched_identities().is_empty());
        for g in 0..n1 {
            for s in 0..n2 {
                prop_assert_eq!(re.alpha(p[g], q[s]), q[pair.alpha(g, s)]);
                prop_assert_eq!(re.beta(q[s], p[g]), p[pair.beta(s, g)]);
            }
        }
    }

    #[test]
    fn inner_automorphisms_conjugate_tables(idx in pair_index(), c1 in any::<usize>(), c2 in any::<usize>()) {
        let pair = &small_pairs()[idx];
        let (n1, n2) = (pair.n1(), pair.n2());
        let p = inner(&pair.g1, c1 % n1);
        let q = inner(&pair.g2, c2 % n2);
        // An automorphism leaves the group tables unchanged.
        prop_assert_eq!(pair.g1.relabel(&p).table_rows(), pair.g1.table_rows());
        prop_assert_eq!(pair.g2.relabel(&q).table_rows(), pair.g2.table_rows());
        let re = relabel_g2(&relabel_g1(pair, &p), &q);
        for g in 0..n1 {
            for s in 0..n2 {
                prop_assert_eq!(re.alpha(p[g], q[s]), q[pair.alpha(g, s)]);
                prop_assert_eq!(re.beta(q[s], p[g]), p[pair.beta(s, g)]);
            }
        }
    }

    #[test]
    fn flipping_twice_is_identity(idx in pair_index()) {
        let pair = &small_pairs()[idx];
        let f = pair.flipped();
        prop_assert!(f.verify_matched_identities().is_empty());
        prop_assert_eq!(&f.flipped(), pair);
    }
}
