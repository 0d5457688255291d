//! Generalized permutation operators with exact phases.
//!
//! A [`Monomial`] sends each basis vector `e_i` to `exp(2πi·φ(i))·e_{π(i)}` or to
//! zero; distinct nonzero columns land on distinct rows. A
//! [`PhasePermOperator`] is the unitary case where every column is nonzero.
//! An [`Antiunitary`] is the conjugate-linear analogue.

use alloc::vec;
use alloc::vec::Vec;

use crate::phase::Phase;

/// Unitary `e_i ↦ exp(2πi·phase[i])·e_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasePermOperator {
    perm: Vec<usize>,
    phase: Vec<Phase>,
}

/// First basis index where two operators differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub basis: usize,
    pub left: Option<(usize, Phase)>,
    pub right: Option<(usize, Phase)>,
}

impl PhasePermOperator {
    /// Panics unless `perm` is a bijection of `0..perm.len()`.
    pub fn new(perm: Vec<usize>, phase: Vec<Phase>) -> PhasePermOperator {
        assert_eq!(perm.len(), phase.len(), "perm and phase lengths differ");
        assert!(is_bijection(&perm), "perm is not a bijection");
        PhasePermOperator { perm, phase }
    }

    pub fn identity(dim: usize) -> PhasePermOperator {
        PhasePermOperator { perm: (0..dim).collect(), phase: vec![Phase::ZERO; dim] }
    }

    pub fn diagonal(phase: Vec<Phase>) -> PhasePermOperator {
        PhasePermOperator { perm: (0..phase.len()).collect(), phase }
    }

    /// The flip `e_x ⊗ e_y ↦ e_y ⊗ e_x` on `ℂⁿ ⊗ ℂⁿ`.
    pub fn flip(n: usize) -> PhasePermOperator {
        let perm = (0..n * n).map(|i| (i % n) * n + i / n).collect();
        PhasePermOperator { perm, phase: vec![Phase::ZERO; n * n] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phase
    }

    #[inline]
    pub fn apply(&self, i: usize) -> (usize, Phase) {
        (self.perm[i], self.phase[i])
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &PhasePermOperator) -> PhasePermOperator {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        let mut perm = Vec::with_capacity(self.dim());
        let mut phase = Vec::with_capacity(self.dim());
        for i in 0..rhs.dim() {
            let (j, p) = rhs.apply(i);
            let (k, q) = self.apply(j);
            perm.push(k);
            phase.push(p + q);
        }
        PhasePermOperator { perm, phase }
    }

    pub fn adjoint(&self) -> PhasePermOperator {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut phase = vec![Phase::ZERO; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            phase[self.perm[i]] = -self.phase[i];
        }
        PhasePermOperator { perm, phase }
    }

    /// `self ⊗ rhs`, basis `e_i ⊗ e_j` at `i·dim(rhs) + j`.
    pub fn tensor(&self, rhs: &PhasePermOperator) -> PhasePermOperator {
        let m = rhs.dim();
        let n = self.dim() * m;
        let mut perm = Vec::with_capacity(n);
        let mut phase = Vec::with_capacity(n);
        for i in 0..self.dim() {
            for j in 0..m {
                perm.push(self.perm[i] * m + rhs.perm[j]);
                phase.push(self.phase[i] + rhs.phase[j]);
            }
        }
        PhasePermOperator { perm, phase }
    }

    /// Places an operator on `ℂⁿ ⊗ ℂⁿ` onto legs `(a, b)` of `ℂⁿ ⊗ ℂⁿ ⊗ ℂⁿ`,
    /// legs numbered 0, 1, 2. `a` and `b` need not be increasing.
    pub fn on_legs(&self, n: usize, a: usize, b: usize) -> PhasePermOperator {
        assert_eq!(self.dim(), n * n, "operator is not on a square tensor space");
        assert!(a < 3 && b < 3 && a != b);
        let total = n * n * n;
        let mut perm = Vec::with_capacity(total);
        let mut phase = Vec::with_capacity(total);
        for x in 0..total {
            let mut legs = [x / (n * n), (x / n) % n, x % n];
            let (y, p) = self.apply(legs[a] * n + legs[b]);
            legs[a] = y / n;
            legs[b] = y % n;
            perm.push((legs[0] * n + legs[1]) * n + legs[2]);
            phase.push(p);
        }
        PhasePermOperator { perm, phase }
    }

    /// Returns the first disagreement, if any.
    pub fn first_mismatch(&self, other: &PhasePermOperator) -> Option<Mismatch> {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        (0..self.dim()).find(|&i| self.apply(i) != other.apply(i)).map(|i| Mismatch {
            basis: i,
            left: Some(self.apply(i)),
            right: Some(other.apply(i)),
        })
    }

    pub fn to_monomial(&self) -> Monomial {
        Monomial { cols: (0..self.dim()).map(|i| Some(self.apply(i))).collect() }
    }

    /// Multiplies the phase at basis `i` by `exp(2πi·p)`.
    pub fn perturb_phase(&mut self, i: usize, p: Phase) {
        self.phase[i] += p;
    }

    /// Exchanges the images of basis vectors `i` and `j`.
    pub fn swap_targets(&mut self, i: usize, j: usize) {
        self.perm.swap(i, j);
    }

    /// Least common denominator of the phases.
    pub fn phase_denominator(&self) -> i64 {
        use num_integer::Integer;
        self.phase.iter().fold(1, |d, p| d.lcm(&p.den()))
    }
}

fn is_bijection(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &x in perm {
        if x >= perm.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Partial isometry `e_i ↦ exp(2πi·φ(i))·e_{π(i)}` or `0`, with `π` injective
/// on its domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    cols: Vec<Option<(usize, Phase)>>,
}

/// Two monomials with overlapping supports cannot be summed to a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub column: usize,
}

impl Monomial {
    pub fn zero(dim: usize) -> Monomial {
        Monomial { cols: vec![None; dim] }
    }

    /// Panics if two columns share a row.
    pub fn new(cols: Vec<Option<(usize, Phase)>>) -> Monomial {
        let mut seen = vec![false; cols.len()];
        for (r, _) in cols.iter().flatten() {
            assert!(*r < cols.len() && !seen[*r], "monomial rows must be distinct");
            seen[*r] = true;
        }
        Monomial { cols }
    }

    /// Diagonal with `exp(2πi·p)` where `Some(p)` and zero elsewhere.
    pub fn diagonal(entries: &[Option<Phase>]) -> Monomial {
        Monomial { cols: entries.iter().enumerate().map(|(i, p)| p.map(|p| (i, p))).collect() }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> Option<(usize, Phase)> {
        self.cols[i]
    }

    pub fn columns(&self) -> &[Option<(usize, Phase)>] {
        &self.cols
    }

    pub fn support_size(&self) -> usize {
        self.cols.iter().filter(|c| c.is_some()).count()
    }

    /// Matrix entry at `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> Option<Phase> {
        match self.cols[col] {
            Some((r, p)) if r == row => Some(p),
            _ => None,
        }
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Monomial) -> Monomial {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        let cols = rhs
            .cols
            .iter()
            .map(|c| c.and_then(|(j, p)| self.cols[j].map(|(k, q)| (k, p + q))))
            .collect();
        Monomial { cols }
    }

    pub fn adjoint(&self) -> Monomial {
        let mut cols = vec![None; self.dim()];
        for (i, c) in self.cols.iter().enumerate() {
            if let Some((r, p)) = *c {
                cols[r] = Some((i, -p));
            }
        }
        Monomial { cols }
    }

    pub fn tensor(&self, rhs: &Monomial) -> Monomial {
        let m = rhs.dim();
        let mut cols = Vec::with_capacity(self.dim() * m);
        for a in &self.cols {
            for b in &rhs.cols {
                cols.push(match (a, b) {
                    (Some((i, p)), Some((j, q))) => Some((i * m + j, *p + *q)),
                    _ => None,
                });
            }
        }
        Monomial { cols }
    }

    /// Multiplies every entry by `exp(2πi·p)`.
    pub fn scaled(&self, p: Phase) -> Monomial {
        Monomial { cols: self.cols.iter().map(|c| c.map(|(r, q)| (r, q + p))).collect() }
    }

    /// Adds `other` into `self`, requiring disjoint column and row supports.
    pub fn add_disjoint(&mut self, other: &Monomial) -> Result<(), Overlap> {
        for (i, c) in other.cols.iter().enumerate() {
            if let Some(x) = c {
                if self.cols[i].is_some() {
                    return Err(Overlap { column: i });
                }
                self.cols[i] = Some(*x);
            }
        }
        Ok(())
    }

    pub fn first_mismatch(&self, other: &Monomial) -> Option<Mismatch> {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        (0..self.dim()).find(|&i| self.cols[i] != other.cols[i]).map(|i| Mismatch {
            basis: i,
            left: self.cols[i],
            right: other.cols[i],
        })
    }

    /// Conjugation by a phase-permutation unitary: `V·self·V*`.
    pub fn conjugate_by(&self, v: &PhasePermOperator) -> Monomial {
        let vm = v.to_monomial();
        vm.compose(self).compose(&v.adjoint().to_monomial())
    }
}

/// Conjugate-linear `e_i ↦ exp(2πi·phase[i])·e_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antiunitary {
    perm: Vec<usize>,
    phase: Vec<Phase>,
}

impl Antiunitary {
    pub fn new(perm: Vec<usize>, phase: Vec<Phase>) -> Antiunitary {
        assert_eq!(perm.len(), phase.len());
        assert!(is_bijection(&perm), "perm is not a bijection");
        Antiunitary { perm, phase }
    }

    /// From the pointwise form `(Jξ)(x) = exp(2πi·c(x))·conj(ξ(τ(x)))`.
    pub fn from_pointwise(tau: &[usize], c: &[Phase]) -> Antiunitary {
        let n = tau.len();
        let mut perm = vec![0; n];
        let mut phase = vec![Phase::ZERO; n];
        for x in 0..n {
            perm[tau[x]] = x;
            phase[tau[x]] = c[x];
        }
        Antiunitary::new(perm, phase)
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> (usize, Phase) {
        (self.perm[i], self.phase[i])
    }

    /// `J∘J` as a (linear) unitary.
    pub fn square(&self) -> PhasePermOperator {
        let n = self.dim();
        let mut perm = Vec::with_capacity(n);
        let mut phase = Vec::with_capacity(n);
        for i in 0..n {
            let (j, p) = self.apply(i);
            let (k, q) = self.apply(j);
            perm.push(k);
            phase.push(q - p);
        }
        PhasePermOperator { perm, phase }
    }

    pub fn tensor(&self, rhs: &Antiunitary) -> Antiunitary {
        let m = rhs.dim();
        let mut perm = Vec::with_capacity(self.dim() * m);
        let mut phase = Vec::with_capacity(self.dim() * m);
        for i in 0..self.dim() {
            for j in 0..m {
                perm.push(self.perm[i] * m + rhs.perm[j]);
                phase.push(self.phase[i] + rhs.phase[j]);
            }
        }
        Antiunitary { perm, phase }
    }

    /// `J·A·J` for a monomial `A`.
    pub fn sandwich(&self, a: &Monomial) -> Monomial {
        let cols = (0..self.dim())
            .map(|i| {
                let (pi, c) = self.apply(i);
                a.apply(pi).map(|(api, phi)| {
                    let (k, d) = self.apply(api);
                    (k, d - c - phi)
                })
            })
            .collect();
        Monomial { cols }
    }

    /// `J·W·J` for a unitary `W`.
    pub fn sandwich_unitary(&self, w: &PhasePermOperator) -> PhasePermOperator {
        let m = self.sandwich(&w.to_monomial());
        let (perm, phase) = m.cols.into_iter().map(|c| c.expect("unitary stays unitary")).unzip();
        PhasePermOperator { perm, phase }
    }

    /// Multiplies the phase at basis `i` by `exp(2πi·p)`.
    pub fn perturb_phase(&mut self, i: usize, p: Phase) {
        self.phase[i] += p;
    }

    /// Exchanges the images of basis vectors `i` and `j`.
    pub fn swap_targets(&mut self, i: usize, j: usize) {
        self.perm.swap(i, j);
    }
}
