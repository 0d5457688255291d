//! Finite groups stored as dense multiplication tables.
//!
//! Elements are indices `0..order` with `0` the identity. Permutation groups
//! compose right-to-left: `(g·h)(x) = g(h(x))`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Limits applied while building groups.
#[derive(Clone, Copy, Debug)]
pub struct GroupConfig {
    /// Largest order accepted from tables, closures and products.
    pub max_order: usize,
    /// Orders up to this value get an exhaustive associativity check.
    pub exhaustive_threshold: usize,
}

impl Default for GroupConfig {
    fn default() -> Self {
        GroupConfig { max_order: 512, exhaustive_threshold: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    EmptyTable,
    Ragged { row: usize },
    EntryOutOfRange { row: usize, col: usize },
    NoIdentity,
    NoInverse { element: usize },
    NotAssociative { a: usize, b: usize, c: usize },
    NotLatin { row: usize },
    TooLarge { order: usize, bound: usize },
    BadPermutation { generator: usize },
    NotAutomorphism { h: usize },
    NotHomomorphism { h: usize, k: usize },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::EmptyTable => write!(f, "empty multiplication table"),
            GroupError::Ragged { row } => write!(f, "table row {row} has the wrong length"),
            GroupError::EntryOutOfRange { row, col } => {
                write!(f, "table entry ({row},{col}) is out of range")
            }
            GroupError::NoIdentity => write!(f, "no identity element"),
            GroupError::NoInverse { element } => write!(f, "no inverse for element {element}"),
            GroupError::NotAssociative { a, b, c } => {
                write!(f, "table is not associative at ({a},{b},{c})")
            }
            GroupError::NotLatin { row } => write!(f, "row {row} is not a permutation"),
            GroupError::TooLarge { order, bound } => {
                write!(f, "group order {order} exceeds the bound {bound}")
            }
            GroupError::BadPermutation { generator } => {
                write!(f, "generator {generator} is not a permutation")
            }
            GroupError::NotAutomorphism { h } => {
                write!(f, "action of element {h} is not an automorphism")
            }
            GroupError::NotHomomorphism { h, k } => {
                write!(f, "action is not a homomorphism at ({h},{k})")
            }
        }
    }
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates a multiplication table, reindexing so that the identity is `0`.
    pub fn from_table(table: &[Vec<usize>], config: &GroupConfig) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::EmptyTable);
        }
        if n > config.max_order {
            return Err(GroupError::TooLarge { order: n, bound: config.max_order });
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Ragged { row: r });
            }
            if let Some(c) = row.iter().position(|&x| x >= n) {
                return Err(GroupError::EntryOutOfRange { row: r, col: c });
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        // Move the identity to index 0 by swapping it with element 0.
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut flat = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[relabel(a) * n + relabel(b)] = relabel(table[a][b]);
            }
        }
        let labels = (0..n).map(|i| format!("{}", relabel(i))).collect();
        Self::from_flat(n, flat, labels, config)
    }

    fn from_flat(
        n: usize,
        table: Vec<usize>,
        labels: Vec<String>,
        config: &GroupConfig,
    ) -> Result<Self, GroupError> {
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a * n + b] == 0 && table[b * n + a] == 0) {
                Some(b) => inverse[a] = b,
                None => return Err(GroupError::NoInverse { element: a }),
            }
        }
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let x = table[a * n + b];
                if seen[x] {
                    return Err(GroupError::NotLatin { row: a });
                }
                seen[x] = true;
            }
        }
        let g = FiniteGroup { order: n, table, inverse, labels };
        g.check_associative(config)?;
        Ok(g)
    }

    fn check_associative(&self, config: &GroupConfig) -> Result<(), GroupError> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(GroupError::NotAssociative { a, b, c })
            } else {
                Ok(())
            }
        };
        if n <= config.exhaustive_threshold {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            // Deterministic sample: a linear congruential walk over triples.
            let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
            for _ in 0..(64 * 64 * 64) {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = (state >> 33) as usize % n;
                let b = (state >> 13) as usize % n;
                let c = (state >> 43) as usize % n;
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    /// Closes a set of permutations of `0..degree` under composition.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        config: &GroupConfig,
    ) -> Result<Self, GroupError> {
        let elems = close_permutations(degree, generators, config)?;
        let index: BTreeMap<&[usize], usize> =
            elems.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let n = elems.len();
        let mut table = vec![0; n * n];
        let mut prod = vec![0; degree];
        for a in 0..n {
            for b in 0..n {
                for x in 0..degree {
                    prod[x] = elems[a][elems[b][x]];
                }
                table[a * n + b] = index[prod.as_slice()];
            }
        }
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        Self::from_flat(n, table, labels, config)
    }

    /// The cyclic group `Z/n`, element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let inverse = (0..n).map(|k| (n - k) % n).collect();
        let labels = (0..n).map(|k| format!("{k}")).collect();
        FiniteGroup { order: n, table, inverse, labels }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Rows of the multiplication table.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// True when `subset` contains the identity and is closed under products and inverses.
    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in subset {
            if x >= self.order {
                return false;
            }
            member[x] = true;
        }
        member[0]
            && subset.iter().all(|&a| member[self.inv(a)])
            && subset.iter().all(|&a| subset.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// The subgroup on `elements` (identity first), with the embedding table.
    pub fn subgroup(&self, elements: &[usize]) -> (FiniteGroup, Vec<usize>) {
        let mut embed: Vec<usize> = Vec::with_capacity(elements.len());
        embed.push(0);
        embed.extend(elements.iter().copied().filter(|&x| x != 0));
        let n = embed.len();
        let mut back = vec![usize::MAX; self.order];
        for (i, &x) in embed.iter().enumerate() {
            back[x] = i;
        }
        let table = (0..n * n).map(|i| back[self.mul(embed[i / n], embed[i % n])]).collect();
        let inverse = embed.iter().map(|&x| back[self.inv(x)]).collect();
        let labels = embed.iter().map(|&x| self.labels[x].clone()).collect();
        (FiniteGroup { order: n, table, inverse, labels }, embed)
    }

    /// Relabels elements by a bijection `perm` fixing `0`: new element `perm[a]` is old `a`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteGroup {
        let n = self.order;
        let mut table = vec![0; n * n];
        let mut inverse = vec![0; n];
        let mut labels = vec![String::new(); n];
        for a in 0..n {
            inverse[perm[a]] = perm[self.inv(a)];
            labels[perm[a]] = self.labels[a].clone();
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        FiniteGroup { order: n, table, inverse, labels }
    }
}

/// All products of `generators`, identity first, in breadth-first order.
///
/// The position of a permutation in the result is its index in
/// [`FiniteGroup::from_permutations`].
pub fn close_permutations(
    degree: usize,
    generators: &[Vec<usize>],
    config: &GroupConfig,
) -> Result<Vec<Vec<usize>>, GroupError> {
    for (i, p) in generators.iter().enumerate() {
        let mut seen = vec![false; degree];
        if p.len() != degree {
            return Err(GroupError::BadPermutation { generator: i });
        }
        for &x in p {
            if x >= degree || seen[x] {
                return Err(GroupError::BadPermutation { generator: i });
            }
            seen[x] = true;
        }
    }
    let identity: Vec<usize> = (0..degree).collect();
    let mut elems: Vec<Vec<usize>> = vec![identity.clone()];
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    index.insert(identity, 0);
    let mut frontier = 0;
    while frontier < elems.len() {
        let cur = elems[frontier].clone();
        frontier += 1;
        for gen in generators {
            let next: Vec<usize> = (0..degree).map(|x| gen[cur[x]]).collect();
            if !index.contains_key(&next) {
                if elems.len() >= config.max_order {
                    return Err(GroupError::TooLarge {
                        order: elems.len() + 1,
                        bound: config.max_order,
                    });
                }
                index.insert(next.clone(), elems.len());
                elems.push(next);
            }
        }
    }
    Ok(elems)
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&format!("{}", x + 1));
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Componentwise product; element `(g,h)` has index `g * |H| + h`.
pub fn direct_product(
    g: &FiniteGroup,
    h: &FiniteGroup,
    config: &GroupConfig,
) -> Result<FiniteGroup, GroupError> {
    let trivial: Vec<Vec<usize>> = (0..h.order).map(|_| (0..g.order).collect()).collect();
    semidirect_product(g, h, &trivial, config)
}

/// `N ⋊ H` with `(n,h)(m,k) = (n·act[h](m), hk)`; element `(n,h)` has index `n * |H| + h`.
pub fn semidirect_product(
    n_grp: &FiniteGroup,
    h_grp: &FiniteGroup,
    action: &[Vec<usize>],
    config: &GroupConfig,
) -> Result<FiniteGroup, GroupError> {
    let (nn, nh) = (n_grp.order, h_grp.order);
    let order = nn.checked_mul(nh).unwrap_or(usize::MAX);
    if order > config.max_order {
        return Err(GroupError::TooLarge { order, bound: config.max_order });
    }
    if action.len() != nh {
        return Err(GroupError::NotAutomorphism { h: action.len().min(nh) });
    }
    for (h, act) in action.iter().enumerate() {
        let mut seen = vec![false; nn];
        if act.len() != nn || act[0] != 0 {
            return Err(GroupError::NotAutomorphism { h });
        }
        for &x in act {
            if x >= nn || seen[x] {
                return Err(GroupError::NotAutomorphism { h });
            }
            seen[x] = true;
        }
        for a in 0..nn {
            for b in 0..nn {
                if act[n_grp.mul(a, b)] != n_grp.mul(act[a], act[b]) {
                    return Err(GroupError::NotAutomorphism { h });
                }
            }
        }
    }
    for h in 0..nh {
        for k in 0..nh {
            let hk = h_grp.mul(h, k);
            if (0..nn).any(|m| action[hk][m] != action[h][action[k][m]]) {
                return Err(GroupError::NotHomomorphism { h, k });
            }
        }
    }
    let mut table = vec![0; order * order];
    let mut inverse = vec![0; order];
    let mut labels = Vec::with_capacity(order);
    for a in 0..order {
        let (n, h) = (a / nh, a % nh);
        labels.push(format!("({},{})", n_grp.label(n), h_grp.label(h)));
        for b in 0..order {
            let (m, k) = (b / nh, b % nh);
            table[a * order + b] = n_grp.mul(n, action[h][m]) * nh + h_grp.mul(h, k);
        }
    }
    for a in 0..order {
        inverse[a] = (0..order).find(|&b| table[a * order + b] == 0).unwrap_or(0);
    }
    Ok(FiniteGroup { order, table, inverse, labels })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> GroupConfig {
        GroupConfig::default()
    }

    #[test]
    fn z2_from_table() {
        let g = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]], &cfg()).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn table_without_inverse_is_rejected() {
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]], &cfg()).unwrap_err();
        assert_eq!(err, GroupError::NoInverse { element: 1 });
    }

    #[test]
    fn identity_not_first_is_moved_to_zero() {
        let g = FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]], &cfg()).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn s4_from_generators() {
        let g = FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], &cfg())
            .unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.center(), vec![0]);
    }

    #[test]
    fn closure_bound_is_enforced() {
        let small = GroupConfig { max_order: 10, exhaustive_threshold: 64 };
        let err = FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], &small)
            .unwrap_err();
        assert!(matches!(err, GroupError::TooLarge { .. }));
    }

    #[test]
    fn klein_and_z3_squared() {
        let z2 = FiniteGroup::cyclic(2);
        let v = direct_product(&z2, &z2, &cfg()).unwrap();
        assert_eq!(v.order(), 4);
        assert_eq!(v.exponent(), 2);
        let z3 = FiniteGroup::cyclic(3);
        let z33 = direct_product(&z3, &z3, &cfg()).unwrap();
        assert_eq!(z33.order(), 9);
        assert!((0..9).all(|a| z33.mul(z33.mul(a, a), a) == 0));
    }

    #[test]
    fn trivial_factor() {
        let z1 = FiniteGroup::cyclic(1);
        let z5 = FiniteGroup::cyclic(5);
        let p = direct_product(&z1, &z5, &cfg()).unwrap();
        assert_eq!(p.table_rows(), z5.table_rows());
    }

    #[test]
    fn dihedral_from_swap_and_inversion() {
        let z2 = FiniteGroup::cyclic(2);
        let v = direct_product(&z2, &z2, &cfg()).unwrap();
        let swap = vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]];
        let d8 = semidirect_product(&v, &z2, &swap, &cfg()).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(d8.center().len(), 2);
        let z4 = FiniteGroup::cyclic(4);
        let inv = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]];
        let d8b = semidirect_product(&z4, &z2, &inv, &cfg()).unwrap();
        assert_eq!(d8b.center().len(), 2);
        assert_eq!(d8b.exponent(), 4);
    }

    #[test]
    fn non_automorphism_rejected() {
        let z3 = FiniteGroup::cyclic(3);
        let z2 = FiniteGroup::cyclic(2);
        let bad = vec![vec![0, 1, 2], vec![1, 0, 2]];
        assert!(semidirect_product(&z3, &z2, &bad, &cfg()).is_err());
    }
}
