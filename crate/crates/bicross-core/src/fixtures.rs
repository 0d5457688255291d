//! Bundled matched pairs: Kac–Paljutkin, the `Z/m` swap family, `S₃·Z/4` in `S₄`,
//! and the dihedral group of order 8 as rotations times a reflection.

use alloc::vec;
use alloc::vec::Vec;

use crate::group::{self, close_permutations, FiniteGroup, GroupConfig};
use crate::matched::{exact_factorization, MatchedPair};

/// Ambient group and subgroup element lists of a fixture.
#[derive(Clone, Debug)]
pub struct FixtureSpec {
    pub name: &'static str,
    pub group: FiniteGroup,
    pub h1: Vec<usize>,
    pub h2: Vec<usize>,
}

impl FixtureSpec {
    pub fn pair(&self) -> MatchedPair {
        exact_factorization(&self.group, &self.h1, &self.h2).expect("bundled fixture factorizes")
    }
}

/// `(Z/m × Z/m) ⋊ Z/2` with `Z/2` swapping the factors; `H1 = Z/2`, `H2 = Z/m × Z/m`.
pub fn swap_spec(m: usize) -> FixtureSpec {
    let cfg = GroupConfig::default();
    let zm = FiniteGroup::cyclic(m);
    let n = group::direct_product(&zm, &zm, &cfg).expect("small product");
    let swap: Vec<usize> = (0..m * m).map(|x| (x % m) * m + x / m).collect();
    let action = vec![(0..m * m).collect(), swap];
    let z2 = FiniteGroup::cyclic(2);
    let g = group::semidirect_product(&n, &z2, &action, &cfg).expect("swap is an automorphism");
    let name = match m {
        2 => "kac-paljutkin",
        3 => "swap-3",
        4 => "swap-4",
        _ => "swap",
    };
    FixtureSpec { name, group: g, h1: vec![0, 1], h2: (0..m * m).map(|x| 2 * x).collect() }
}

/// `S₄` on points `0..4` with `H1` the stabilizer of point 3 and `H2 = ⟨(0 1 2 3)⟩`.
pub fn s4_spec() -> FixtureSpec {
    let cfg = GroupConfig::default();
    let gens = [vec![1, 2, 3, 0], vec![1, 0, 2, 3]];
    let perms = close_permutations(4, &gens, &cfg).expect("S4 closes");
    let g = FiniteGroup::from_permutations(4, &gens, &cfg).expect("S4 closes");
    let h1: Vec<usize> = (0..perms.len()).filter(|&i| perms[i][3] == 3).collect();
    let mut h2 = vec![0];
    let cycle = perms.iter().position(|p| p == &[1, 2, 3, 0]).expect("generator present");
    let mut x = cycle;
    while x != 0 {
        h2.push(x);
        x = g.mul(cycle, x);
    }
    FixtureSpec { name: "s4", group: g, h1, h2 }
}

/// `Z/4 ⋊ Z/2` by inversion with `H1` a reflection subgroup and `H2` the rotations.
pub fn dihedral_spec() -> FixtureSpec {
    let cfg = GroupConfig::default();
    let z4 = FiniteGroup::cyclic(4);
    let z2 = FiniteGroup::cyclic(2);
    let action = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]];
    let g = group::semidirect_product(&z4, &z2, &action, &cfg).expect("inversion is an automorphism");
    FixtureSpec { name: "dihedral", group: g, h1: vec![0, 1], h2: vec![0, 2, 4, 6] }
}

pub fn kac_paljutkin() -> MatchedPair {
    swap_spec(2).pair()
}

pub fn swap_pair(m: usize) -> MatchedPair {
    swap_spec(m).pair()
}

pub fn s4_pair() -> MatchedPair {
    s4_spec().pair()
}

pub fn dihedral_pair() -> MatchedPair {
    dihedral_spec().pair()
}

/// All bundled fixtures in a fixed order.
pub fn all_specs() -> Vec<FixtureSpec> {
    vec![swap_spec(2), swap_spec(3), swap_spec(4), s4_spec(), dihedral_spec()]
}
