#![allow(dead_code)]

use bicross_core::fixtures;
use bicross_core::group::{self, FiniteGroup, GroupConfig};
use bicross_core::matched::{derive_actions, exact_factorization, MatchedPair};
use bicross_core::phase::Phase;
use proptest::prelude::*;

/// `Z/a × Z/b` split into its two factors (both actions trivial).
pub fn direct_pair(a: usize, b: usize) -> MatchedPair {
    let g = group::direct_product(&FiniteGroup::cyclic(a), &FiniteGroup::cyclic(b), &GroupConfig::default())
        .unwrap();
    let h1: Vec<usize> = (0..a).map(|x| x * b).collect();
    let h2: Vec<usize> = (0..b).collect();
    exact_factorization(&g, &h1, &h2).unwrap()
}

/// `Z/m ⋊ Z/2` by inversion, split as reflections times rotations.
pub fn dihedral(m: usize) -> MatchedPair {
    let action = vec![(0..m).collect(), (0..m).map(|x| (m - x) % m).collect()];
    let g = group::semidirect_product(
        &FiniteGroup::cyclic(m),
        &FiniteGroup::cyclic(2),
        &action,
        &GroupConfig::default(),
    )
    .unwrap();
    exact_factorization(&g, &[0, 1], &(0..m).map(|x| 2 * x).collect::<Vec<_>>()).unwrap()
}

/// Small pairs, cheap enough for many proptest cases.
pub fn small_pairs() -> Vec<MatchedPair> {
    vec![
        fixtures::kac_paljutkin(),
        fixtures::swap_pair(3),
        fixtures::dihedral_pair(),
        fixtures::s4_pair(),
        direct_pair(2, 3),
        direct_pair(2, 2),
        dihedral(3),
        dihedral(5),
        dihedral(6),
    ]
}

pub fn pair_index() -> impl Strategy<Value = usize> {
    0..small_pairs().len()
}

/// A permutation of `0..n` fixing `0`, from a shuffle key.
pub fn perm_fixing_zero(n: usize, key: &[u32]) -> Vec<usize> {
    let mut rest: Vec<usize> = (1..n).collect();
    rest.sort_by_key(|&x| key[x % key.len()].wrapping_mul(x as u32 + 7).rotate_left(x as u32));
    let mut p = vec![0; n];
    for (a, &b) in (1..n).zip(&rest) {
        p[a] = b;
    }
    p
}

/// Same pair with `G1` relabeled: new element `p[g]` is old `g`.
pub fn relabel_g1(pair: &MatchedPair, p: &[usize]) -> MatchedPair {
    let g1 = pair.g1.relabel(p);
    let mut i = vec![0; pair.n1()];
    for g in 0..pair.n1() {
        i[p[g]] = pair.i[g];
    }
    let (alpha, beta) = derive_actions(&pair.ambient, &i, &pair.j).unwrap();
    MatchedPair { ambient: pair.ambient.clone(), g1, g2: pair.g2.clone(), i, j: pair.j.clone(), alpha, beta }
}

/// Same pair with `G2` relabeled: new element `p[s]` is old `s`.
pub fn relabel_g2(pair: &MatchedPair, p: &[usize]) -> MatchedPair {
    let g2 = pair.g2.relabel(p);
    let mut j = vec![0; pair.n2()];
    for s in 0..pair.n2() {
        j[p[s]] = pair.j[s];
    }
    let (alpha, beta) = derive_actions(&pair.ambient, &pair.i, &j).unwrap();
    MatchedPair { ambient: pair.ambient.clone(), g1: pair.g1.clone(), g2, i: pair.i.clone(), j, alpha, beta }
}

/// Inner automorphism `x ↦ c x c⁻¹` as a table.
pub fn inner(g: &FiniteGroup, c: usize) -> Vec<usize> {
    (0..g.order()).map(|x| g.mul(g.mul(c, x), g.inv(c))).collect()
}

pub fn phases(nums: &[i64], den: i64, len: usize) -> Vec<Phase> {
    (0..len).map(|k| Phase::new(nums[k % nums.len()], den)).collect()
}
