use bicross_core::group::{self, FiniteGroup, GroupConfig};
use proptest::prelude::*;

fn permutation(degree: usize, key: &[u32]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    p.sort_by_key(|&x| key[x % key.len()] ^ (x as u32).wrapping_mul(2654435761));
    p
}

fn associative(g: &FiniteGroup) -> bool {
    let n = g.order();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))))
}

fn group_from_generators() -> impl Strategy<Value = FiniteGroup> {
    (2usize..6, prop::collection::vec(prop::collection::vec(any::<u32>(), 6), 1..3)).prop_map(|(d, keys)| {
        let gens: Vec<Vec<usize>> = keys.iter().map(|k| permutation(d, k)).collect();
        FiniteGroup::from_permutations(d, &gens, &GroupConfig::default()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closures_are_groups(g in group_from_generators()) {
        prop_assert!(associative(&g));
        for a in 0..g.order() {
            prop_assert_eq!(g.mul(0, a), a);
            prop_assert_eq!(g.mul(a, 0), a);
            prop_assert_eq!(g.mul(g.inv(a), a), 0);
            prop_assert_eq!(g.inv(g.inv(a)), a);
        }
        let rebuilt = FiniteGroup::from_table(&g.table_rows(), &GroupConfig::default()).unwrap();
        prop_assert_eq!(rebuilt.table_rows(), g.table_rows());
    }

    #[test]
    fn trivial_semidirect_is_direct(a in 1usize..7, b in 1usize..7) {
        let (ga, gb) = (FiniteGroup::cyclic(a), FiniteGroup::cyclic(b));
        let cfg = GroupConfig::default();
        let trivial: Vec<Vec<usize>> = (0..b).map(|_| (0..a).collect()).collect();
        let semi = group::semidirect_product(&ga, &gb, &trivial, &cfg).unwrap();
        let direct = group::direct_product(&ga, &gb, &cfg).unwrap();
        prop_assert_eq!(semi.table_rows(), direct.table_rows());
        prop_assert!(associative(&semi));
    }

    #[test]
    fn relabeling_is_an_isomorphism(g in group_from_generators(), key in prop::collection::vec(any::<u32>(), 8)) {
        let n = g.order();
        let mut rest: Vec<usize> = (1..n).collect();
        rest.sort_by_key(|&x| key[x % 8] ^ x as u32);
        let mut p = vec![0; n];
        for (a, &b) in (1..n).zip(&rest) {
            p[a] = b;
        }
        let h = g.relabel(&p);
        for a in 0..n {
            prop_assert_eq!(h.inv(p[a]), p[g.inv(a)]);
            for b in 0..n {
                prop_assert_eq!(h.mul(p[a], p[b]), p[g.mul(a, b)]);
            }
        }
    }
}
