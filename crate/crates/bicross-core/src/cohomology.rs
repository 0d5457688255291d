//! Cocycle pairs `(U, V)` with values in `ℚ/ℤ`, their coboundaries, and the
//! group of extensions computed from integer Smith forms.
//!
//! Unknowns are ordered `U(g,h,s)` at `(g·n1 + h)·n2 + s`, then `V(g,s,t)` at
//! `n1²n2 + (g·n2 + s)·n2 + t`. Columns of the coboundary matrix are `R(g,s)`
//! at `g·n2 + s`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::intmat::{sparse_mul, SmithForm, SparseRow, Track};
use crate::matched::MatchedPair;
use crate::phase::Phase;

/// A pair of circle-valued functions `U` on `G1×G1×G2` and `V` on `G1×G2×G2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocyclePair {
    n1: usize,
    n2: usize,
    pub u: Vec<Phase>,
    pub v: Vec<Phase>,
}

impl CocyclePair {
    pub fn trivial(pair: &MatchedPair) -> CocyclePair {
        let (n1, n2) = (pair.n1(), pair.n2());
        CocyclePair {
            n1,
            n2,
            u: vec![Phase::ZERO; n1 * n1 * n2],
            v: vec![Phase::ZERO; n1 * n2 * n2],
        }
    }

    /// Builds a pair from tables of numerators over `den`.
    pub fn from_numerators(
        pair: &MatchedPair,
        den: i64,
        u: &[Vec<Vec<i64>>],
        v: &[Vec<Vec<i64>>],
    ) -> Result<CocyclePair, CohomologyError> {
        let (n1, n2) = (pair.n1(), pair.n2());
        let shape_ok = u.len() == n1
            && u.iter().all(|a| a.len() == n1 && a.iter().all(|b| b.len() == n2))
            && v.len() == n1
            && v.iter().all(|a| a.len() == n2 && a.iter().all(|b| b.len() == n2));
        if !shape_ok {
            return Err(CohomologyError::Shape);
        }
        if den <= 0 {
            return Err(CohomologyError::Denominator(den));
        }
        let mut c = CocyclePair::trivial(pair);
        for g in 0..n1 {
            for h in 0..n1 {
                for s in 0..n2 {
                    c.set_u(g, h, s, Phase::new(u[g][h][s], den));
                }
            }
            for s in 0..n2 {
                for t in 0..n2 {
                    c.set_v(g, s, t, Phase::new(v[g][s][t], den));
                }
            }
        }
        Ok(c)
    }

    /// Numerator tables over the common denominator.
    pub fn to_numerators(&self) -> (i64, Vec<Vec<Vec<i64>>>, Vec<Vec<Vec<i64>>>) {
        let d = self.denominator();
        let (n1, n2) = (self.n1, self.n2);
        let u = (0..n1)
            .map(|g| {
                (0..n1)
                    .map(|h| (0..n2).map(|s| self.u(g, h, s).over(d).unwrap()).collect())
                    .collect()
            })
            .collect();
        let v = (0..n1)
            .map(|g| {
                (0..n2)
                    .map(|s| (0..n2).map(|t| self.v(g, s, t).over(d).unwrap()).collect())
                    .collect()
            })
            .collect();
        (d, u, v)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    #[inline]
    pub fn u(&self, g: usize, h: usize, s: usize) -> Phase {
        self.u[(g * self.n1 + h) * self.n2 + s]
    }

    #[inline]
    pub fn v(&self, g: usize, s: usize, t: usize) -> Phase {
        self.v[(g * self.n2 + s) * self.n2 + t]
    }

    pub fn set_u(&mut self, g: usize, h: usize, s: usize, p: Phase) {
        self.u[(g * self.n1 + h) * self.n2 + s] = p;
    }

    pub fn set_v(&mut self, g: usize, s: usize, t: usize, p: Phase) {
        self.v[(g * self.n2 + s) * self.n2 + t] = p;
    }

    /// Lowest common denominator of all entries.
    pub fn denominator(&self) -> i64 {
        self.u.iter().chain(self.v.iter()).fold(1, |d, p| d.lcm(&p.den()))
    }

    /// The unknown vector `(U, V)`.
    pub fn to_vector(&self) -> Vec<Phase> {
        self.u.iter().chain(self.v.iter()).copied().collect()
    }

    pub fn from_vector(pair: &MatchedPair, x: &[Phase]) -> CocyclePair {
        let (n1, n2) = (pair.n1(), pair.n2());
        let nu = n1 * n1 * n2;
        CocyclePair { n1, n2, u: x[..nu].to_vec(), v: x[nu..].to_vec() }
    }

    /// Pointwise sum, i.e. the product of circle values.
    pub fn add(&self, other: &CocyclePair) -> CocyclePair {
        CocyclePair {
            n1: self.n1,
            n2: self.n2,
            u: self.u.iter().zip(&other.u).map(|(a, b)| *a + *b).collect(),
            v: self.v.iter().zip(&other.v).map(|(a, b)| *a + *b).collect(),
        }
    }

    pub fn sub(&self, other: &CocyclePair) -> CocyclePair {
        CocyclePair {
            n1: self.n1,
            n2: self.n2,
            u: self.u.iter().zip(&other.u).map(|(a, b)| *a - *b).collect(),
            v: self.v.iter().zip(&other.v).map(|(a, b)| *a - *b).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CohomologyError {
    Shape,
    Denominator(i64),
    NotCocycle { which: u8, first: CocycleViolation },
}

impl fmt::Display for CohomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyError::Shape => write!(f, "cocycle tables have the wrong shape"),
            CohomologyError::Denominator(d) => write!(f, "invalid denominator {d}"),
            CohomologyError::NotCocycle { which, first } => {
                write!(f, "input {which} is not a cocycle: {first}")
            }
        }
    }
}

/// One failed instance of the cocycle equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleViolation {
    /// Equation family: 1 (`U` alone), 2 (`V` alone), 3 (mixed).
    pub equation: u8,
    pub args: [usize; 4],
    pub residual: Phase,
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "equation {} at {:?} has residual {}", self.equation, self.args, self.residual)
    }
}

/// Linear form `Σ coeff·unknown` used to assemble both the matrix and the direct check.
fn equation_terms(pair: &MatchedPair, eq: u8, a: [usize; 4]) -> [(i64, usize); 6] {
    let (n1, n2) = (pair.n1(), pair.n2());
    let (m1, m2) = (&pair.g1, &pair.g2);
    let ui = |g: usize, h: usize, s: usize| (g * n1 + h) * n2 + s;
    let vi = |g: usize, s: usize, t: usize| n1 * n1 * n2 + (g * n2 + s) * n2 + t;
    match eq {
        1 => {
            let [g, h, k, s] = a;
            [
                (1, ui(g, h, pair.alpha(k, s))),
                (1, ui(m1.mul(g, h), k, s)),
                (-1, ui(h, k, s)),
                (-1, ui(g, m1.mul(h, k), s)),
                (0, 0),
                (0, 0),
            ]
        }
        2 => {
            let [g, s, t, r] = a;
            [
                (1, vi(pair.beta(s, g), t, r)),
                (1, vi(g, s, m2.mul(r, t))),
                (-1, vi(g, s, t)),
                (-1, vi(g, m2.mul(t, s), r)),
                (0, 0),
                (0, 0),
            ]
        }
        _ => {
            let [g, h, s, t] = a;
            let ahs = pair.alpha(h, s);
            let bsh = pair.beta(s, h);
            [
                (1, vi(m1.mul(g, h), s, t)),
                (-1, ui(g, h, m2.mul(t, s))),
                (1, ui(g, h, s)),
                (1, ui(pair.beta(ahs, g), bsh, t)),
                (-1, vi(g, ahs, pair.alpha(bsh, t))),
                (-1, vi(h, s, t)),
            ]
        }
    }
}

/// Argument tuples of every equation, in canonical order.
fn equation_instances(pair: &MatchedPair) -> impl Iterator<Item = (u8, [usize; 4])> + '_ {
    let (n1, n2) = (pair.n1(), pair.n2());
    let e1 = (0..n1 * n1 * n1 * n2).map(move |x| {
        let (s, x) = (x % n2, x / n2);
        let (k, x) = (x % n1, x / n1);
        let (h, g) = (x % n1, x / n1);
        (1u8, [g, h, k, s])
    });
    let e2 = (0..n1 * n2 * n2 * n2).map(move |x| {
        let (r, x) = (x % n2, x / n2);
        let (t, x) = (x % n2, x / n2);
        let (s, g) = (x % n2, x / n2);
        (2u8, [g, s, t, r])
    });
    let e3 = (0..n1 * n1 * n2 * n2).map(move |x| {
        let (t, x) = (x % n2, x / n2);
        let (s, x) = (x % n2, x / n2);
        let (h, g) = (x % n1, x / n1);
        (3u8, [g, h, s, t])
    });
    e1.chain(e2).chain(e3)
}

fn to_sparse_row(terms: &[(i64, usize)]) -> SparseRow {
    let mut row: Vec<(usize, i64)> = Vec::with_capacity(terms.len());
    for &(c, j) in terms {
        if c == 0 {
            continue;
        }
        match row.iter_mut().find(|x| x.0 == j) {
            Some(x) => x.1 += c,
            None => row.push((j, c)),
        }
    }
    row.retain(|x| x.1 != 0);
    row.sort_by_key(|x| x.0);
    row.into_iter().map(|(j, c)| (j, BigInt::from(c))).collect()
}

/// The cocycle matrix `A` (`M × N`) and coboundary matrix `B` (`N × K`).
#[derive(Clone, Debug)]
pub struct CocycleSystem {
    pub n_unknowns: usize,
    pub n_coboundary: usize,
    pub a: Vec<SparseRow>,
    pub b: Vec<SparseRow>,
    /// Equation family and arguments of each row of `A`.
    pub row_labels: Vec<(u8, [usize; 4])>,
}

impl CocycleSystem {
    /// `A·B`, which vanishes for every matched pair.
    pub fn product(&self) -> Vec<SparseRow> {
        sparse_mul(&self.a, &self.b, self.n_coboundary)
    }
}

pub fn cocycle_system(pair: &MatchedPair) -> CocycleSystem {
    let (n1, n2) = (pair.n1(), pair.n2());
    let n_unknowns = n1 * n1 * n2 + n1 * n2 * n2;
    let n_coboundary = n1 * n2;
    let mut a = Vec::new();
    let mut row_labels = Vec::new();
    for (eq, args) in equation_instances(pair) {
        a.push(to_sparse_row(&equation_terms(pair, eq, args)));
        row_labels.push((eq, args));
    }
    let b = (0..n_unknowns).map(|x| to_sparse_row(&coboundary_terms(pair, x))).collect();
    CocycleSystem { n_unknowns, n_coboundary, a, b, row_labels }
}

fn coboundary_terms(pair: &MatchedPair, x: usize) -> [(i64, usize); 3] {
    let (n1, n2) = (pair.n1(), pair.n2());
    let ri = |g: usize, s: usize| g * n2 + s;
    if x < n1 * n1 * n2 {
        let (s, gh) = (x % n2, x / n2);
        let (g, h) = (gh / n1, gh % n1);
        [(1, ri(h, s)), (1, ri(g, pair.alpha(h, s))), (-1, ri(pair.g1.mul(g, h), s))]
    } else {
        let y = x - n1 * n1 * n2;
        let (t, y) = (y % n2, y / n2);
        let (s, g) = (y % n2, y / n2);
        [(1, ri(g, s)), (1, ri(pair.beta(s, g), t)), (-1, ri(g, pair.g2.mul(t, s)))]
    }
}

/// The coboundary `∂R` of a table `R(g,s)` indexed `g·n2 + s`.
pub fn coboundary(pair: &MatchedPair, r: &[Phase]) -> CocyclePair {
    let n = pair.n1() * pair.n1() * pair.n2() + pair.n1() * pair.n2() * pair.n2();
    let x: Vec<Phase> = (0..n)
        .map(|i| coboundary_terms(pair, i).iter().map(|&(c, j)| r[j].times(c)).sum())
        .collect();
    CocyclePair::from_vector(pair, &x)
}

/// Every instance of the three cocycle equations that fails.
pub fn is_cocycle(pair: &MatchedPair, c: &CocyclePair) -> Vec<CocycleViolation> {
    let x = c.to_vector();
    equation_instances(pair)
        .filter_map(|(eq, args)| {
            let residual: Phase =
                equation_terms(pair, eq, args).iter().map(|&(k, j)| x[j].times(k)).sum();
            (!residual.is_zero()).then_some(CocycleViolation { equation: eq, args, residual })
        })
        .collect()
}

fn require_cocycle(pair: &MatchedPair, c: &CocyclePair, which: u8) -> Result<(), CohomologyError> {
    match is_cocycle(pair, c).into_iter().next() {
        Some(first) => Err(CohomologyError::NotCocycle { which, first }),
        None => Ok(()),
    }
}

/// Torus rank plus invariant factors (each > 1, each dividing the next).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AbelianInvariants {
    pub torus_rank: usize,
    pub invariant_factors: Vec<u64>,
}

impl AbelianInvariants {
    /// Largest invariant factor, 1 for the trivial group.
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    /// Number of elements of the torsion part.
    pub fn torsion_order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

/// Cached Smith forms of the cocycle and coboundary matrices of one pair.
#[derive(Clone, Debug)]
pub struct CohomologyContext {
    pub system: CocycleSystem,
    /// Smith form of `A` with its column transform.
    pub snf_a: SmithForm,
    /// Smith form of `B` with both transforms.
    pub snf_b: SmithForm,
}

impl CohomologyContext {
    pub fn new(pair: &MatchedPair) -> CohomologyContext {
        let system = cocycle_system(pair);
        let snf_a = SmithForm::compute(
            &system.a,
            system.n_unknowns,
            Track { left: false, right: true },
        );
        let snf_b =
            SmithForm::compute(&system.b, system.n_coboundary, Track { left: true, right: true });
        CohomologyContext { system, snf_a, snf_b }
    }

    /// `Γ ≅ dual(ker Bᵀ / im Aᵀ)`: the torsion of that quotient is the torsion of
    /// `coker Aᵀ`, and its free rank is `N − rank A − rank B`.
    pub fn invariants(&self) -> AbelianInvariants {
        invariants_from(&self.system, &self.snf_a, &self.snf_b)
    }

    /// One cocycle per class of order dividing `d`, with `complete` set when
    /// these are all classes of the group of extensions.
    pub fn representatives(&self, pair: &MatchedPair, d: u64) -> Representatives {
        assert!(d > 0, "order must be positive");
        let inv = self.invariants();
        let rank = self.snf_a.rank();
        let cols = self.snf_a.right_cols.as_ref().expect("column transform tracked");
        // Torsion positions of the Smith form and the part of each reachable with denominator d.
        let slots: Vec<(usize, u64)> = (0..rank)
            .filter_map(|i| {
                let s = self.snf_a.diag[i].to_u64().expect("invariant factor fits in u64");
                (s > 1).then_some((i, s.gcd(&d)))
            })
            .filter(|&(_, g)| g > 1)
            .collect();
        let complete = inv.torus_rank == 0 && inv.invariant_factors.iter().all(|s| d % s == 0);
        let total: u64 = slots.iter().map(|x| x.1).product();
        let n = self.system.n_unknowns;
        let mut cocycles = Vec::with_capacity(total as usize);
        let mut k = vec![0u64; slots.len()];
        for _ in 0..total {
            let mut x = vec![Phase::ZERO; n];
            for (slot, &(i, g)) in slots.iter().enumerate() {
                if k[slot] == 0 {
                    continue;
                }
                let gi = BigInt::from(g);
                for (j, r) in &cols[i] {
                    let num = (r * BigInt::from(k[slot])).mod_floor(&gi);
                    x[*j] += Phase::new(num.to_i64().unwrap(), g as i64);
                }
            }
            cocycles.push(CocyclePair::from_vector(pair, &x));
            // Advance the mixed-radix counter, last slot fastest.
            for slot in (0..k.len()).rev() {
                k[slot] += 1;
                if k[slot] < slots[slot].1 {
                    break;
                }
                k[slot] = 0;
            }
        }
        Representatives { cocycles, complete, invariants: inv }
    }

    /// `Some(R)` with `c2 = c1 + ∂R` when the two cocycles are cohomologous.
    pub fn cohomologous(
        &self,
        pair: &MatchedPair,
        c1: &CocyclePair,
        c2: &CocyclePair,
    ) -> Result<Option<Vec<Phase>>, CohomologyError> {
        require_cocycle(pair, c1, 1)?;
        require_cocycle(pair, c2, 2)?;
        Ok(self.coboundary_witness(pair, &c2.sub(c1)))
    }

    /// Solves `∂R = x` in `ℚ/ℤ` if possible.
    pub fn coboundary_witness(&self, pair: &MatchedPair, x: &CocyclePair) -> Option<Vec<Phase>> {
        let xv = x.to_vector();
        let den = x.denominator();
        let num: Vec<BigInt> = xv.iter().map(|p| BigInt::from(p.over(den).unwrap())).collect();
        let left = self.snf_b.left.as_ref().expect("row transform tracked");
        let right = self.snf_b.right_cols.as_ref().expect("column transform tracked");
        let rank = self.snf_b.rank();
        let bden = BigInt::from(den);
        let mut r = vec![Phase::ZERO; self.system.n_coboundary];
        for (i, row) in left.iter().enumerate() {
            let y: BigInt = row.iter().map(|(j, v)| v * &num[*j]).sum();
            if i >= rank {
                if !y.is_multiple_of(&bden) {
                    return None;
                }
                continue;
            }
            // u_i = y / (den·s_i), then R = R_B·u.
            let q = &bden * &self.snf_b.diag[i];
            for (k, v) in &right[i] {
                let n = (v * &y).mod_floor(&q);
                r[*k] += Phase::new(n.to_i64().unwrap(), q.to_i64().unwrap());
            }
        }
        debug_assert_eq!(&coboundary(pair, &r), x);
        Some(r)
    }
}

fn invariants_from(system: &CocycleSystem, a: &SmithForm, b: &SmithForm) -> AbelianInvariants {
    let invariant_factors = a
        .elementary_divisors()
        .iter()
        .map(|x| x.abs().to_u64().expect("invariant factor fits in u64"))
        .collect();
    AbelianInvariants {
        torus_rank: system.n_unknowns - a.rank() - b.rank(),
        invariant_factors,
    }
}

/// The group of extensions `Γ` of a matched pair.
pub fn extension_group(pair: &MatchedPair) -> AbelianInvariants {
    let system = cocycle_system(pair);
    let a = SmithForm::compute(&system.a, system.n_unknowns, Track::default());
    let b = SmithForm::compute(&system.b, system.n_coboundary, Track::default());
    invariants_from(&system, &a, &b)
}

/// Cocycle representatives for the classes of order dividing `d`.
#[derive(Clone, Debug)]
pub struct Representatives {
    /// Trivial class first.
    pub cocycles: Vec<CocyclePair>,
    /// False when `Γ` has a torus part or `d` misses part of the torsion.
    pub complete: bool,
    pub invariants: AbelianInvariants,
}

pub fn cocycle_representatives(pair: &MatchedPair, d: u64) -> Representatives {
    CohomologyContext::new(pair).representatives(pair, d)
}

pub fn are_cohomologous(
    pair: &MatchedPair,
    c1: &CocyclePair,
    c2: &CocyclePair,
) -> Result<Option<Vec<Phase>>, CohomologyError> {
    CohomologyContext::new(pair).cohomologous(pair, c1, c2)
}

/// A cohomologous cocycle with `U(e,e,s) = V(g,e,e) = 0`, together with the
/// table `R` such that the result is `c + ∂R`.
///
/// For cocycles this forces `U(g,e,s) = U(e,g,s) = U(g,h,e) = 0` and
/// `V(e,s,t) = V(g,e,t) = V(g,s,e) = 0`.
pub fn normalize_cocycle(
    pair: &MatchedPair,
    c: &CocyclePair,
) -> Result<(CocyclePair, Vec<Phase>), CohomologyError> {
    require_cocycle(pair, c, 1)?;
    let (n1, n2) = (pair.n1(), pair.n2());
    let mut r = vec![Phase::ZERO; n1 * n2];
    for s in 0..n2 {
        r[s] = -c.u(0, 0, s);
    }
    for g in 1..n1 {
        r[g * n2] = -c.v(g, 0, 0);
    }
    Ok((c.add(&coboundary(pair, &r)), r))
}

/// Which of the unit normalizations fail.
pub fn normalization_defects(pair: &MatchedPair, c: &CocyclePair) -> Vec<&'static str> {
    let (n1, n2) = (pair.n1(), pair.n2());
    let mut out = Vec::new();
    let mut check = |ok: bool, name: &'static str| {
        if !ok {
            out.push(name);
        }
    };
    check((0..n1).all(|g| (0..n2).all(|s| c.u(g, 0, s).is_zero())), "U(g,e,s) = 0");
    check((0..n1).all(|g| (0..n2).all(|s| c.u(0, g, s).is_zero())), "U(e,g,s) = 0");
    check((0..n1).all(|g| (0..n1).all(|h| c.u(g, h, 0).is_zero())), "U(g,h,e) = 0");
    check((0..n2).all(|s| (0..n2).all(|t| c.v(0, s, t).is_zero())), "V(e,s,t) = 0");
    check((0..n1).all(|g| (0..n2).all(|t| c.v(g, 0, t).is_zero())), "V(g,e,t) = 0");
    check((0..n1).all(|g| (0..n2).all(|s| c.v(g, s, 0).is_zero())), "V(g,s,e) = 0");
    out
}

/// True when every row of `A·B` vanishes.
pub fn coboundaries_are_cocycles(system: &CocycleSystem) -> bool {
    system.product().iter().all(|r| r.is_empty())
}
