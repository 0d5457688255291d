//! Finite cocycle bicrossed products: the multiplicative unitaries, the
//! comultiplication, the Haar functional, the modular conjugations and the
//! dual, with exact axiom checks.
//!
//! The Hilbert space is `ℂ[G1×G2]` with basis `(g,s)` at `g·n2 + s`; the
//! tensor square has `(x, y)` at `x·n + y` with `n = n1·n2`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cohomology::{
    is_cocycle, normalization_defects, normalize_cocycle, CocyclePair, CohomologyError,
};
use crate::cyclotomic::{Cyc, CycMatrix, CyclotomicField};
use crate::matched::MatchedPair;
use crate::operator::{Antiunitary, Monomial, PhasePermOperator};
use crate::phase::Phase;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BicrossedError {
    Cocycle(CohomologyError),
    /// The operator dimension is not a perfect square.
    NotSquare(usize),
    /// The operator does not lie in the image of `π`.
    NotInImage,
}

impl fmt::Display for BicrossedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BicrossedError::Cocycle(e) => write!(f, "{e}"),
            BicrossedError::NotSquare(d) => write!(f, "dimension {d} is not a perfect square"),
            BicrossedError::NotInImage => write!(f, "operator is not of the form π(f)"),
        }
    }
}

impl From<CohomologyError> for BicrossedError {
    fn from(e: CohomologyError) -> Self {
        BicrossedError::Cocycle(e)
    }
}

/// Outcome of one axiom check. `witness` names the first failing argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: &'static str,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub args: Vec<usize>,
    pub detail: String,
}

impl AxiomResult {
    fn pass(axiom: &'static str) -> AxiomResult {
        AxiomResult { axiom, passed: true, witness: None }
    }

    fn fail(axiom: &'static str, args: Vec<usize>, detail: String) -> AxiomResult {
        AxiomResult { axiom, passed: false, witness: Some(Witness { args, detail }) }
    }

    fn from_witness(axiom: &'static str, w: Option<(Vec<usize>, String)>) -> AxiomResult {
        match w {
            None => AxiomResult::pass(axiom),
            Some((args, detail)) => AxiomResult::fail(axiom, args, detail),
        }
    }
}

#[inline]
fn idx(n2: usize, g: usize, s: usize) -> usize {
    g * n2 + s
}

/// Source index `σ(g,s,h,t) = (g, α_k(t)s, k, t)` with `k = β_s(g)⁻¹h`.
fn w_hat_source(pair: &MatchedPair, g: usize, s: usize, h: usize, t: usize) -> (usize, usize, usize) {
    let k = pair.g1.mul(pair.g1.inv(pair.beta(s, g)), h);
    let a = pair.alpha(k, t);
    (pair.g2.mul(a, s), k, a)
}

/// `Ŵ`, acting by `(Ŵξ)(g,s,h,t) = Ū(β_s(g),k,t)·V(g,s,α_k(t))·ξ(g, α_k(t)s, k, t)`
/// with `k = β_s(g)⁻¹h`.
pub fn build_w_hat(pair: &MatchedPair, c: &CocyclePair) -> PhasePermOperator {
    let (n1, n2) = (pair.n1(), pair.n2());
    let n = n1 * n2;
    let mut perm = vec![0; n * n];
    let mut phase = vec![Phase::ZERO; n * n];
    for g in 0..n1 {
        for s in 0..n2 {
            let bs = pair.beta(s, g);
            for h in 0..n1 {
                for t in 0..n2 {
                    let (s2, k, a) = w_hat_source(pair, g, s, h, t);
                    let x = idx(n2, g, s) * n + idx(n2, h, t);
                    let src = idx(n2, g, s2) * n + idx(n2, k, t);
                    perm[src] = x;
                    phase[src] = c.v(g, s, a) - c.u(bs, k, t);
                }
            }
        }
    }
    PhasePermOperator::new(perm, phase)
}

/// `W = Σ Ŵ* Σ`.
pub fn w_from_w_hat(w_hat: &PhasePermOperator) -> PhasePermOperator {
    let n = square_root(w_hat.dim()).expect("tensor square");
    let sigma = PhasePermOperator::flip(n);
    sigma.compose(&w_hat.adjoint()).compose(&sigma)
}

fn square_root(d: usize) -> Option<usize> {
    let r = libm::sqrt(d as f64) as usize;
    (r.saturating_sub(1)..=r + 1).find(|&x| x * x == d)
}

fn describe_mismatch(m: &crate::operator::Mismatch) -> String {
    format!("basis {}: {:?} vs {:?}", m.basis, m.left, m.right)
}

/// `W₁₂W₁₃W₂₃ = W₂₃W₁₂` on every basis state.
pub fn pentagon_check(w: &PhasePermOperator) -> Result<AxiomResult, BicrossedError> {
    let n = square_root(w.dim()).ok_or(BicrossedError::NotSquare(w.dim()))?;
    let (w12, w13, w23) = (w.on_legs(n, 0, 1), w.on_legs(n, 0, 2), w.on_legs(n, 1, 2));
    let lhs = w12.compose(&w13).compose(&w23);
    let rhs = w23.compose(&w12);
    Ok(AxiomResult::from_witness(
        "pentagon",
        lhs.first_mismatch(&rhs).map(|m| (vec![m.basis], describe_mismatch(&m))),
    ))
}

/// `(Δ⊗ι)(W) = W₁₃W₂₃` where `(Δ⊗ι)(W) = W₁₂* W₂₃ W₁₂`.
pub fn delta_w_check(w: &PhasePermOperator) -> Result<AxiomResult, BicrossedError> {
    let n = square_root(w.dim()).ok_or(BicrossedError::NotSquare(w.dim()))?;
    let (w12, w13, w23) = (w.on_legs(n, 0, 1), w.on_legs(n, 0, 2), w.on_legs(n, 1, 2));
    let lhs = w12.adjoint().compose(&w23).compose(&w12);
    let rhs = w13.compose(&w23);
    Ok(AxiomResult::from_witness(
        "(Δ⊗ι)(W) = W13 W23",
        lhs.first_mismatch(&rhs).map(|m| (vec![m.basis], describe_mismatch(&m))),
    ))
}

/// `Δ(z) = W*(1⊗z)W` for a monomial `z`.
pub fn comultiply(w: &PhasePermOperator, z: &Monomial) -> Monomial {
    let n = z.dim();
    let one = Monomial::diagonal(&vec![Some(Phase::ZERO); n]);
    let wm = w.to_monomial();
    w.adjoint().to_monomial().compose(&one.tensor(z)).compose(&wm)
}

/// The diagonal phase `Θ` indexed like the tensor square.
pub fn build_theta(pair: &MatchedPair, c: &CocyclePair) -> Vec<Phase> {
    let (n1, n2) = (pair.n1(), pair.n2());
    let n = n1 * n2;
    let mut theta = vec![Phase::ZERO; n * n];
    for g in 0..n1 {
        for s in 0..n2 {
            let bs = pair.beta(s, g);
            for h in 0..n1 {
                for t in 0..n2 {
                    let (_, k, a) = w_hat_source(pair, g, s, h, t);
                    theta[idx(n2, g, s) * n + idx(n2, h, t)] = c.v(g, s, a) - c.u(bs, k, t);
                }
            }
        }
    }
    theta
}

/// First tuple `(g,s,h,t,k,r)` where the multiplicativity equation for `Θ` fails.
pub fn theta_mu_violation(pair: &MatchedPair, theta: &[Phase]) -> Option<[usize; 6]> {
    let (g1, g2) = (&pair.g1, &pair.g2);
    let (n1, n2) = (pair.n1(), pair.n2());
    let n = n1 * n2;
    let th = |g: usize, s: usize, h: usize, t: usize| theta[idx(n2, g, s) * n + idx(n2, h, t)];
    for g in 0..n1 {
        let gi = g1.inv(g);
        for s in 0..n2 {
            let bsg_inv = g1.inv(pair.beta(s, g));
            for h in 0..n1 {
                for t in 0..n2 {
                    let prod = g2.mul(pair.alpha(h, t), pair.alpha(g, s));
                    let second = pair.alpha(gi, prod);
                    let first3 = g1.mul(bsg_inv, h);
                    let bg = pair.beta(prod, gi);
                    let bth_inv = g1.inv(pair.beta(t, h));
                    for k in 0..n1 {
                        let k3 = g1.mul(bg, k);
                        let k5 = g1.mul(bth_inv, k);
                        for r in 0..n2 {
                            let lhs = th(g, s, h, t) + th(g, second, k, r) + th(first3, t, k3, r);
                            let rhs = th(h, t, k, r) + th(g, s, h, g2.mul(pair.alpha(k5, r), t));
                            if lhs != rhs {
                                return Some([g, s, h, t, k, r]);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Recovers `(U, V)` from `Θ`:
/// `U(g,h,t) = −Θ(g,e,gh,t) + Θ(g,e,g,e)`, `V(g,s,t) = Θ(g,s,β_s(g),t) − Θ(e,e,e,t)`.
pub fn cocycle_from_theta(pair: &MatchedPair, theta: &[Phase]) -> CocyclePair {
    let (n1, n2) = (pair.n1(), pair.n2());
    let n = n1 * n2;
    let th = |g: usize, s: usize, h: usize, t: usize| theta[idx(n2, g, s) * n + idx(n2, h, t)];
    let mut c = CocyclePair::trivial(pair);
    for g in 0..n1 {
        for h in 0..n1 {
            for t in 0..n2 {
                c.set_u(g, h, t, th(g, 0, g, 0) - th(g, 0, pair.g1.mul(g, h), t));
            }
        }
        for s in 0..n2 {
            for t in 0..n2 {
                c.set_v(g, s, t, th(g, s, pair.beta(s, g), t) - th(0, 0, 0, t));
            }
        }
    }
    c
}

/// Consistency of `Θ` with the cocycle it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaReport {
    /// `Θ·Ŵ₀ = Ŵ`.
    pub factorizes: AxiomResult,
    /// `Θ·Ŵ₀` satisfies the pentagon equation.
    pub multiplicative: AxiomResult,
    /// The pointwise equation for `Θ` holds at every tuple.
    pub pointwise: AxiomResult,
    /// The inverse formulas give back the cocycle (meaningful for normalized input).
    pub inverse_recovers: AxiomResult,
}

impl ThetaReport {
    pub fn all(&self) -> [&AxiomResult; 4] {
        [&self.factorizes, &self.multiplicative, &self.pointwise, &self.inverse_recovers]
    }

    pub fn passed(&self) -> bool {
        self.all().iter().all(|r| r.passed)
    }
}

/// Checks `Θ` built from `(U, V)`, which need not be a cocycle.
pub fn theta_report(pair: &MatchedPair, c: &CocyclePair) -> ThetaReport {
    let theta = build_theta(pair, c);
    let w0 = build_w_hat(pair, &CocyclePair::trivial(pair));
    let tw0 = PhasePermOperator::diagonal(theta.clone()).compose(&w0);
    let w_hat = build_w_hat(pair, c);
    let factorizes = AxiomResult::from_witness(
        "Θ·Ŵ0 = Ŵ",
        tw0.first_mismatch(&w_hat).map(|m| (vec![m.basis], describe_mismatch(&m))),
    );
    let mut multiplicative = pentagon_check(&tw0).expect("tensor square");
    multiplicative.axiom = "Θ·Ŵ0 multiplicative";
    let pointwise = AxiomResult::from_witness(
        "Θ pointwise equation",
        theta_mu_violation(pair, &theta).map(|a| (a.to_vec(), String::from("(g,s,h,t,k,r)"))),
    );
    let back = cocycle_from_theta(pair, &theta);
    let inverse_recovers = if &back == c {
        AxiomResult::pass("Θ ↦ (U,V) inverse")
    } else {
        let i = c.u.iter().chain(&c.v).zip(back.u.iter().chain(&back.v)).position(|(a, b)| a != b);
        AxiomResult::fail("Θ ↦ (U,V) inverse", i.into_iter().collect(), String::from("unknown index"))
    };
    ThetaReport { factorizes, multiplicative, pointwise, inverse_recovers }
}

/// `π(δ_(g0,s0))`: column `(k,s)` with `α_k(s) = s0` goes to row `(g0·k, s)`
/// with phase `−U(g0,k,s)`.
pub fn pi_of_basis(pair: &MatchedPair, c: &CocyclePair, g0: usize, s0: usize) -> Monomial {
    let (n1, n2) = (pair.n1(), pair.n2());
    let mut cols = vec![None; n1 * n2];
    for k in 0..n1 {
        for s in 0..n2 {
            if pair.alpha(k, s) == s0 {
                cols[idx(n2, k, s)] = Some((idx(n2, pair.g1.mul(g0, k), s), -c.u(g0, k, s)));
            }
        }
    }
    Monomial::new(cols)
}

/// Coefficient table of a monomial in the image of `π`, read off the columns
/// `(e,s)`; `None` where the column is empty.
pub fn extract_basis(pair: &MatchedPair, z: &Monomial) -> BTreeMap<usize, Phase> {
    let n2 = pair.n2();
    let mut f = BTreeMap::new();
    for s in 0..n2 {
        if let Some((row, p)) = z.apply(idx(n2, 0, s)) {
            if row % n2 == s {
                f.insert(row, p);
            }
        }
    }
    f
}

/// A finite cocycle bicrossed product with its structure maps.
#[derive(Clone, Debug)]
pub struct FiniteQG {
    pub pair: MatchedPair,
    /// Normalized.
    pub cocycle: CocyclePair,
    pub w_hat: PhasePermOperator,
    pub w: PhasePermOperator,
    /// `Ũ(g,s) = U(g,g⁻¹,s)` at `g·n2 + s`.
    pub u_tilde: Vec<Phase>,
    /// `Ṽ(g,s) = V(g,s⁻¹,s)` at `g·n2 + s`.
    pub v_tilde: Vec<Phase>,
    pub j: Antiunitary,
    pub j_hat: Antiunitary,
    field: CyclotomicField,
}

impl FiniteQG {
    /// Normalizes `c` and builds every structure map.
    pub fn new(pair: &MatchedPair, c: &CocyclePair) -> Result<FiniteQG, BicrossedError> {
        let (cocycle, _) = normalize_cocycle(pair, c)?;
        debug_assert!(normalization_defects(pair, &cocycle).is_empty());
        let (n1, n2) = (pair.n1(), pair.n2());
        let n = n1 * n2;
        let w_hat = build_w_hat(pair, &cocycle);
        let w = w_from_w_hat(&w_hat);
        let mut u_tilde = vec![Phase::ZERO; n];
        let mut v_tilde = vec![Phase::ZERO; n];
        let mut tau_j = vec![0; n];
        let mut tau_jh = vec![0; n];
        for g in 0..n1 {
            let gi = pair.g1.inv(g);
            for s in 0..n2 {
                let si = pair.g2.inv(s);
                u_tilde[idx(n2, g, s)] = cocycle.u(g, gi, s);
                v_tilde[idx(n2, g, s)] = cocycle.v(g, si, s);
                tau_j[idx(n2, g, s)] = idx(n2, gi, pair.alpha(g, s));
                tau_jh[idx(n2, g, s)] = idx(n2, pair.beta(s, g), si);
            }
        }
        // (Jξ)(g,s) = Ũ(g⁻¹,s)·conj ξ(g⁻¹,α_g(s)); (Ĵξ)(g,s) = Ṽ(g,s⁻¹)·conj ξ(β_s(g),s⁻¹).
        let c_j: Vec<Phase> = (0..n)
            .map(|x| u_tilde[idx(n2, pair.g1.inv(x / n2), x % n2)])
            .collect();
        let c_jh: Vec<Phase> = (0..n)
            .map(|x| v_tilde[idx(n2, x / n2, pair.g2.inv(x % n2))])
            .collect();
        let j = Antiunitary::from_pointwise(&tau_j, &c_j);
        let j_hat = Antiunitary::from_pointwise(&tau_jh, &c_jh);
        let field = CyclotomicField::new(cocycle.denominator() as usize);
        Ok(FiniteQG { pair: pair.clone(), cocycle, w_hat, w, u_tilde, v_tilde, j, j_hat, field })
    }

    pub fn n1(&self) -> usize {
        self.pair.n1()
    }

    pub fn n2(&self) -> usize {
        self.pair.n2()
    }

    /// `|G1|·|G2|`, the dimension of the algebra and of the Hilbert space.
    pub fn dim(&self) -> usize {
        self.n1() * self.n2()
    }

    /// Field generated by the cocycle values.
    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn pi_of_basis(&self, x: usize) -> Monomial {
        pi_of_basis(&self.pair, &self.cocycle, x / self.n2(), x % self.n2())
    }

    /// Dense `π(f)` for a coefficient table indexed by `g·n2 + s`.
    pub fn pi_of(&self, f: &[Cyc]) -> CycMatrix {
        let n = self.dim();
        assert_eq!(f.len(), n, "coefficient table has the wrong length");
        let mut m = CycMatrix::zeros(&self.field, n);
        for (x, fx) in f.iter().enumerate() {
            if fx.is_zero() {
                continue;
            }
            for (col, entry) in self.pi_of_basis(x).columns().iter().enumerate() {
                if let Some((row, p)) = entry {
                    let v = self.field.add(m.get(*row, col), &self.field.mul_phase(fx, *p));
                    m.set(*row, col, v);
                }
            }
        }
        m
    }

    /// `f(k,s) = ⟨z(δ_e⊗δ_s), δ_k⊗δ_s⟩`.
    pub fn extract_coefficients(&self, z: &CycMatrix) -> Vec<Cyc> {
        let n2 = self.n2();
        (0..self.dim()).map(|x| z.get(x, idx(n2, 0, x % n2)).clone()).collect()
    }

    /// `φ(π(f)) = Σ_s f(e,s)`, after confirming `z` lies in the image of `π`.
    pub fn haar(&self, z: &CycMatrix) -> Result<Cyc, BicrossedError> {
        let f = self.extract_coefficients(z);
        if &self.pi_of(&f) != z {
            return Err(BicrossedError::NotInImage);
        }
        Ok(self.haar_of_coefficients(&f))
    }

    pub fn haar_of_coefficients(&self, f: &[Cyc]) -> Cyc {
        (0..self.n2()).fold(self.field.zero(), |acc, s| self.field.add(&acc, &f[s]))
    }

    /// Weights `w(x)` with `φ(π(f)) = Σ_x w(x) f(x)`.
    pub fn haar_weights(&self) -> Vec<Cyc> {
        (0..self.dim())
            .map(|x| if x < self.n2() { self.field.one() } else { self.field.zero() })
            .collect()
    }

    /// `Δ(π(δ_x))` as a monomial on the tensor square.
    pub fn delta_of_basis(&self, x: usize) -> Monomial {
        comultiply(&self.w, &self.pi_of_basis(x))
    }

    /// Coefficients `F(x,y)` of `Y ∈ M⊗M` read off the columns `(e,s1)⊗(e,s2)`,
    /// after confirming `Y = Σ F(x,y)·π(δ_x)⊗π(δ_y)` exactly.
    pub fn extract_tensor(&self, y: &Monomial) -> Result<BTreeMap<(usize, usize), Phase>, BicrossedError> {
        let (n, n2) = (self.dim(), self.n2());
        let mut coeffs = BTreeMap::new();
        for s1 in 0..n2 {
            for s2 in 0..n2 {
                if let Some((row, p)) = y.apply(idx(n2, 0, s1) * n + idx(n2, 0, s2)) {
                    let (x1, x2) = (row / n, row % n);
                    if x1 % n2 != s1 || x2 % n2 != s2 {
                        return Err(BicrossedError::NotInImage);
                    }
                    coeffs.insert((x1, x2), p);
                }
            }
        }
        // Rebuild and compare entry by entry.
        let mut rebuilt: BTreeMap<(usize, usize), Vec<Phase>> = BTreeMap::new();
        for (&(x1, x2), &p) in &coeffs {
            let t = self.pi_of_basis(x1).tensor(&self.pi_of_basis(x2));
            for (col, e) in t.columns().iter().enumerate() {
                if let Some((row, q)) = e {
                    rebuilt.entry((*row, col)).or_default().push(p + *q);
                }
            }
        }
        let f = &self.field;
        let mut expected: BTreeMap<(usize, usize), Cyc> = BTreeMap::new();
        for (col, e) in y.columns().iter().enumerate() {
            if let Some((row, p)) = e {
                expected.insert((*row, col), f.from_phase(*p));
            }
        }
        for (key, phases) in &rebuilt {
            let v = f.sum_phases(phases.iter().copied());
            match expected.remove(key) {
                Some(e) if e == v => {}
                None if v.is_zero() => {}
                _ => return Err(BicrossedError::NotInImage),
            }
        }
        if !expected.is_empty() {
            return Err(BicrossedError::NotInImage);
        }
        Ok(coeffs)
    }

    /// `(ι⊗ψ)Δ(z) = ψ(z)·1` for every basis `z = π(δ_x)`, with `ψ` given by weights.
    pub fn left_invariance(&self, weights: &[Cyc]) -> AxiomResult {
        let f = &self.field;
        let (n, n2) = (self.dim(), self.n2());
        for x in 0..n {
            let coeffs = match self.extract_tensor(&self.delta_of_basis(x)) {
                Ok(c) => c,
                Err(_) => {
                    return AxiomResult::fail("Haar left invariance", vec![x], String::from("Δ(z) ∉ M⊗M"))
                }
            };
            let mut lhs = vec![f.zero(); n];
            for (&(x1, x2), &p) in &coeffs {
                if !weights[x2].is_zero() {
                    lhs[x1] = f.add(&lhs[x1], &f.mul_phase(&weights[x2], p));
                }
            }
            let psi = &weights[x];
            for (k, v) in lhs.iter().enumerate() {
                let target = if k < n2 { psi.clone() } else { f.zero() };
                if *v != target {
                    return AxiomResult::fail(
                        "Haar left invariance",
                        vec![x, k],
                        format!("coefficient {:?} vs {:?}", f.to_complex(v), f.to_complex(&target)),
                    );
                }
            }
        }
        AxiomResult::pass("Haar left invariance")
    }

    /// `α(δ_t)`, the multiplication operator by `[α_g(s) = t]`.
    pub fn alpha_of_delta(&self, t: usize) -> Monomial {
        let n2 = self.n2();
        let d: Vec<Option<Phase>> = (0..self.dim())
            .map(|x| (self.pair.alpha(x / n2, x % n2) == t).then_some(Phase::ZERO))
            .collect();
        Monomial::diagonal(&d)
    }

    /// `(α⊗α)Δ₂(δ_t)`: the multiplication operator by `[α_{g1}(s1)·α_{g2}(s2) = t]`.
    pub fn alpha_delta2(&self, t: usize) -> Monomial {
        let (n, n2) = (self.dim(), self.n2());
        let d: Vec<Option<Phase>> = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                let a = self.pair.alpha(x / n2, x % n2);
                let b = self.pair.alpha(y / n2, y % n2);
                (self.pair.g2.mul(a, b) == t).then_some(Phase::ZERO)
            })
            .collect();
        Monomial::diagonal(&d)
    }

    /// `Δ(α(δ_t)) = (α⊗α)Δ₂(δ_t)` for every `t ∈ G2`.
    pub fn delta_alpha_check(&self) -> AxiomResult {
        delta_alpha_with(&self.w, self)
    }

    /// `R(z) = Ĵ z* Ĵ`.
    pub fn unitary_antipode(&self, z: &Monomial) -> Monomial {
        self.j_hat.sandwich(&z.adjoint())
    }

    /// `ΔR = σ(R⊗R)Δ` on every basis element.
    pub fn antipode_comultiplication_check(&self) -> AxiomResult {
        antipode_delta_with(&self.w, &self.j_hat, self)
    }

    /// `S = R` on every slice of `W`, hence `S² = R² = ι`.
    pub fn antipode_square_check(&self) -> AxiomResult {
        antipode_square_with(&self.j_hat, self)
    }

    /// Symmetries `Ũ(g,α_g(s)) = Ũ(g⁻¹,s)` and `Ṽ(β_s(g),s) = Ṽ(g,s⁻¹)`.
    pub fn tilde_symmetries(&self) -> AxiomResult {
        let p = &self.pair;
        let n2 = self.n2();
        for g in 0..self.n1() {
            for s in 0..n2 {
                let gi = p.g1.inv(g);
                if self.u_tilde[idx(n2, g, p.alpha(g, s))] != self.u_tilde[idx(n2, gi, s)] {
                    return AxiomResult::fail("Ũ, Ṽ symmetries", vec![g, s], String::from("Ũ"));
                }
                if self.v_tilde[idx(n2, p.beta(s, g), s)] != self.v_tilde[idx(n2, g, p.g2.inv(s))] {
                    return AxiomResult::fail("Ũ, Ṽ symmetries", vec![g, s], String::from("Ṽ"));
                }
            }
        }
        AxiomResult::pass("Ũ, Ṽ symmetries")
    }

    /// `J² = Ĵ² = 1` and `(Ĵ⊗J)W(Ĵ⊗J) = W*`.
    pub fn modular_checks(&self) -> Vec<AxiomResult> {
        let id = PhasePermOperator::identity(self.dim());
        let sq = |a: &Antiunitary, name: &'static str| {
            AxiomResult::from_witness(
                name,
                a.square().first_mismatch(&id).map(|m| (vec![m.basis], describe_mismatch(&m))),
            )
        };
        let jj = self.j_hat.tensor(&self.j);
        let lhs = jj.sandwich_unitary(&self.w);
        vec![
            sq(&self.j, "J² = 1"),
            sq(&self.j_hat, "Ĵ² = 1"),
            AxiomResult::from_witness(
                "(Ĵ⊗J)W(Ĵ⊗J) = W*",
                lhs.first_mismatch(&self.w.adjoint()).map(|m| (vec![m.basis], describe_mismatch(&m))),
            ),
        ]
    }

    /// `φ(1) = |G2|`: the algebra is finite-dimensional, so compact and discrete.
    pub fn haar_of_unit(&self) -> Cyc {
        let one: Vec<Cyc> =
            (0..self.dim()).map(|x| if x < self.n2() { self.field.one() } else { self.field.zero() }).collect();
        self.haar_of_coefficients(&one)
    }

    /// Every axiom check on this quantum group.
    pub fn verify(&self) -> Vec<AxiomResult> {
        let mut out = vec![
            pentagon_check(&self.w).expect("tensor square"),
            delta_w_check(&self.w).expect("tensor square"),
            self.delta_alpha_check(),
            self.left_invariance(&self.haar_weights()),
            self.antipode_comultiplication_check(),
            self.antipode_square_check(),
            self.tilde_symmetries(),
        ];
        out.extend(self.modular_checks());
        let w_check = w_from_w_hat(&self.w_hat) == self.w;
        out.push(if w_check { AxiomResult::pass("W = ΣŴ*Σ") } else { AxiomResult::fail("W = ΣŴ*Σ", vec![], String::new()) });
        out
    }
}

fn delta_alpha_with(w: &PhasePermOperator, qg: &FiniteQG) -> AxiomResult {
    for t in 0..qg.n2() {
        let lhs = comultiply(w, &qg.alpha_of_delta(t));
        if let Some(m) = lhs.first_mismatch(&qg.alpha_delta2(t)) {
            return AxiomResult::fail("Δα = (α⊗α)Δ2", vec![t, m.basis], describe_mismatch(&m));
        }
    }
    AxiomResult::pass("Δα = (α⊗α)Δ2")
}

fn antipode_delta_with(w: &PhasePermOperator, j_hat: &Antiunitary, qg: &FiniteQG) -> AxiomResult {
    let n = qg.dim();
    let jj = j_hat.tensor(j_hat);
    let sigma = PhasePermOperator::flip(n);
    for x in 0..n {
        let z = qg.pi_of_basis(x);
        let rz = j_hat.sandwich(&z.adjoint());
        let lhs = comultiply(w, &rz);
        let rhs = jj.sandwich(&comultiply(w, &z).adjoint()).conjugate_by(&sigma);
        if let Some(m) = lhs.first_mismatch(&rhs) {
            return AxiomResult::fail("ΔR = σ(R⊗R)Δ", vec![x, m.basis], describe_mismatch(&m));
        }
    }
    AxiomResult::pass("ΔR = σ(R⊗R)Δ")
}

/// `(ι⊗ω_{a,b})(X)` for `ω_{a,b}(y) = ⟨y e_b, e_a⟩`, a monomial when `X` is one.
pub fn slice(x: &PhasePermOperator, a: usize, b: usize) -> Monomial {
    let n = square_root(x.dim()).expect("tensor square");
    let cols = (0..n)
        .map(|i| {
            let (r, p) = x.apply(i * n + b);
            (r % n == a).then_some((r / n, p))
        })
        .collect();
    Monomial::new(cols)
}

/// The antipode from `S((ι⊗ω)(W)) = (ι⊗ω)(W*)` agrees with `R` on every slice,
/// and `R² = ι` there; together `S² = ι`.
fn antipode_square_with(j_hat: &Antiunitary, qg: &FiniteQG) -> AxiomResult {
    let n = qg.dim();
    let w_adj = qg.w.adjoint();
    for a in 0..n {
        for b in 0..n {
            let z = slice(&qg.w, a, b);
            if z.support_size() == 0 {
                continue;
            }
            let rz = j_hat.sandwich(&z.adjoint());
            if let Some(m) = rz.first_mismatch(&slice(&w_adj, a, b)) {
                return AxiomResult::fail("S = R, S² = ι", vec![a, b, m.basis], describe_mismatch(&m));
            }
            if let Some(m) = j_hat.sandwich(&rz.adjoint()).first_mismatch(&z) {
                return AxiomResult::fail("S = R, S² = ι", vec![a, b, m.basis], describe_mismatch(&m));
            }
        }
    }
    AxiomResult::pass("S = R, S² = ι")
}

/// A deliberately broken variant of each check; `detected` is true when the
/// check rejects it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlResult {
    pub axiom: &'static str,
    pub perturbation: &'static str,
    pub detected: bool,
}

/// Runs every check against a perturbed input.
pub fn negative_controls(qg: &FiniteQG) -> Vec<ControlResult> {
    let n = qg.dim();
    let half = Phase::new(1, 2);
    let mut w_phase = qg.w.clone();
    // Basis state ((e,e),(g,s)) with g ≠ e when possible.
    w_phase.perturb_phase(n - 1, half);
    // Exchange the images of two columns whose second legs carry different α-values.
    let n2 = qg.n2();
    let alpha_leg = |c: usize| {
        let y = qg.w.apply(c).0 % n;
        qg.pair.alpha(y / n2, y % n2)
    };
    let mut w_perm = qg.w.clone();
    if let Some(b) = (1..n * n).find(|&b| alpha_leg(b) != alpha_leg(0)) {
        w_perm.swap_targets(0, b);
    }
    let mut j_hat = qg.j_hat.clone();
    j_hat.perturb_phase(n - 1, Phase::new(1, 4));
    let mut weights = qg.haar_weights();
    let f = qg.field();
    weights[n - 1] = f.add(&weights[n - 1], &f.one());

    let control = |axiom, perturbation, r: AxiomResult| ControlResult { axiom, perturbation, detected: !r.passed };
    vec![
        control("pentagon", "one W phase shifted by 1/2", pentagon_check(&w_phase).expect("square")),
        control("(Δ⊗ι)(W) = W13 W23", "one W phase shifted by 1/2", delta_w_check(&w_phase).expect("square")),
        control("Δα = (α⊗α)Δ2", "two W targets exchanged", delta_alpha_with(&w_perm, qg)),
        control("Haar left invariance", "functional weight added off the unit row", qg.left_invariance(&weights)),
        control("ΔR = σ(R⊗R)Δ", "one Ĵ phase shifted by 1/4", antipode_delta_with(&qg.w, &j_hat, qg)),
        control("S = R, S² = ι", "one Ĵ phase shifted by 1/4", antipode_square_with(&j_hat, qg)),
    ]
}

/// The diagonal unitary `ℛ` of multiplication by `exp(2πi·R(g,s))`.
pub fn multiplication_operator(r: &[Phase]) -> PhasePermOperator {
    PhasePermOperator::diagonal(r.to_vec())
}

/// Whether `W_b = (ℛ⊗ℛ)W_a(ℛ⊗ℛ)*` for `ℛ` the multiplication by `R`.
pub fn conjugates(w_a: &PhasePermOperator, w_b: &PhasePermOperator, r: &[Phase]) -> AxiomResult {
    let rr = multiplication_operator(r);
    let rr2 = rr.tensor(&rr);
    let lhs = rr2.compose(w_a).compose(&rr2.adjoint());
    AxiomResult::from_witness(
        "W_b = (ℛ⊗ℛ)W_a(ℛ⊗ℛ)*",
        lhs.first_mismatch(w_b).map(|m| (vec![m.basis], describe_mismatch(&m))),
    )
}

/// The cocycle on the flipped pair: `U'(s,t,g) = V(g,t,s)` and `V'(s,g,h) = U(h,g,s)`.
pub fn dual_cocycle(pair: &MatchedPair, c: &CocyclePair) -> (MatchedPair, CocyclePair) {
    let flipped = pair.flipped();
    let (n1, n2) = (pair.n1(), pair.n2());
    let mut d = CocyclePair::trivial(&flipped);
    for s in 0..n2 {
        for t in 0..n2 {
            for g in 0..n1 {
                d.set_u(s, t, g, c.v(g, t, s));
            }
        }
        for g in 0..n1 {
            for h in 0..n1 {
                d.set_v(s, g, h, c.u(h, g, s));
            }
        }
    }
    (flipped, d)
}

/// Unitary `e_(g,s) ↦ e_(s,g)` from `ℂ[G1×G2]` to `ℂ[G2×G1]`, squared.
fn swap_factors(n1: usize, n2: usize) -> PhasePermOperator {
    let n = n1 * n2;
    let p: Vec<usize> = (0..n).map(|x| (x % n2) * n1 + x / n2).collect();
    let p = PhasePermOperator::new(p, vec![Phase::ZERO; n]);
    p.tensor(&p)
}

/// Transports an operator on the tensor square of the dual's space back to the original one.
pub fn transport_from_dual(op: &PhasePermOperator, n1: usize, n2: usize) -> PhasePermOperator {
    let p = swap_factors(n1, n2);
    p.adjoint().compose(op).compose(&p)
}

/// The dual bicrossed product on the flipped pair, with identification checks.
#[derive(Clone, Debug)]
pub struct DualReport {
    pub dual: FiniteQG,
    pub dual_is_cocycle: bool,
    /// `W` of the dual equals `Ŵ` of the original, after swapping factors.
    pub identification: AxiomResult,
    /// The dual of the dual reproduces the original operators.
    pub biduality: AxiomResult,
    /// `dim M = dim M̂ = |G1||G2|`.
    pub dimensions: AxiomResult,
    /// `φ(1) = |G2|` and `φ̂(1) = |G1|`, both finite.
    pub compact: AxiomResult,
}

pub fn dual_build(qg: &FiniteQG) -> Result<DualReport, BicrossedError> {
    let (n1, n2) = (qg.n1(), qg.n2());
    let (fp, fc) = dual_cocycle(&qg.pair, &qg.cocycle);
    let dual_is_cocycle = is_cocycle(&fp, &fc).is_empty();
    let dual = FiniteQG::new(&fp, &fc)?;
    let back = transport_from_dual(&dual.w, n1, n2);
    let target = dual_identification_target(qg);
    let identification = AxiomResult::from_witness(
        "dual W identified",
        back.first_mismatch(&target).map(|m| (vec![m.basis], describe_mismatch(&m))),
    );
    let (bp, bc) = dual_cocycle(&fp, &dual.cocycle);
    let same = bp == qg.pair && bc == qg.cocycle && build_w_hat(&bp, &bc) == qg.w_hat;
    let biduality = if same {
        AxiomResult::pass("dual of dual")
    } else {
        AxiomResult::fail("dual of dual", vec![], String::from("operators differ"))
    };
    let dimensions = if dual.dim() == qg.dim() {
        AxiomResult::pass("dim M = dim M̂")
    } else {
        AxiomResult::fail("dim M = dim M̂", vec![qg.dim(), dual.dim()], String::new())
    };
    let f1 = qg.field();
    let f2 = dual.field();
    let compact_ok = qg.haar_of_unit() == f1.from_int(n2 as i64) && dual.haar_of_unit() == f2.from_int(n1 as i64);
    let compact = if compact_ok {
        AxiomResult::pass("φ(1) finite")
    } else {
        AxiomResult::fail("φ(1) finite", vec![], String::new())
    };
    Ok(DualReport { dual, dual_is_cocycle, identification, biduality, dimensions, compact })
}

/// The operator that the dual's `W` matches after swapping factors: `Ŵ = ΣW*Σ`.
pub fn dual_identification_target(qg: &FiniteQG) -> PhasePermOperator {
    qg.w_hat.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::CohomologyContext;
    use crate::fixtures::{kac_paljutkin, s4_pair, swap_pair};
    use crate::group::FiniteGroup;
    use crate::matched::exact_factorization;

    fn classes(pair: &MatchedPair) -> Vec<CocyclePair> {
        let ctx = CohomologyContext::new(pair);
        let d = ctx.invariants().exponent().max(1);
        ctx.representatives(pair, d).cocycles
    }

    #[test]
    fn trivial_second_factor_gives_group_unitary() {
        let g = FiniteGroup::cyclic(5);
        let pair = exact_factorization(&g, &[0, 1, 2, 3, 4], &[0]).unwrap();
        let w_hat = build_w_hat(&pair, &CocyclePair::trivial(&pair));
        for a in 0..5 {
            for b in 0..5 {
                // (Ŵξ)(a,b) = ξ(a, a⁻¹b): e_(a, a⁻¹b) ↦ e_(a,b).
                let src = a * 5 + pair.g1.mul(pair.g1.inv(a), b);
                assert_eq!(w_hat.apply(src), (a * 5 + b, Phase::ZERO));
            }
        }
    }

    #[test]
    fn kac_paljutkin_phases() {
        let pair = kac_paljutkin();
        let cs = classes(&pair);
        assert_eq!(cs.len(), 2);
        let w0 = build_w_hat(&pair, &cs[0]);
        assert!(w0.phases().iter().all(|p| p.is_zero()));
        let qg = FiniteQG::new(&pair, &cs[1]).unwrap();
        assert!(qg.w_hat.phases().iter().all(|p| p.times(2).is_zero()));
        assert!(qg.w_hat.phases().iter().any(|p| !p.is_zero()));
    }

    #[test]
    fn pi_round_trip_and_haar_values() {
        let pair = kac_paljutkin();
        let qg = FiniteQG::new(&pair, &classes(&pair)[1]).unwrap();
        let f = qg.field();
        let n = qg.dim();
        for x in 0..n {
            let mut table = vec![f.zero(); n];
            table[x] = f.one();
            let z = qg.pi_of(&table);
            assert_eq!(qg.extract_coefficients(&z), table);
            let expected = if x < qg.n2() { f.one() } else { f.zero() };
            assert_eq!(qg.haar(&z).unwrap(), expected);
        }
        // δ_e ⊗ 1 is the identity.
        let unit: Vec<Cyc> = (0..n).map(|x| if x < qg.n2() { f.one() } else { f.zero() }).collect();
        let id = qg.pi_of(&unit);
        for i in 0..n {
            for j in 0..n {
                let e = if i == j { f.one() } else { f.zero() };
                assert_eq!(id.get(i, j), &e);
            }
        }
        assert_eq!(qg.haar(&id).unwrap(), f.from_int(qg.n2() as i64));
    }

    #[test]
    fn product_rule_matches_matrix_product() {
        let pair = swap_pair(3);
        let qg = FiniteQG::new(&pair, &classes(&pair)[1]).unwrap();
        let f = qg.field();
        let (n1, n2, n) = (qg.n1(), qg.n2(), qg.dim());
        let g1 = &pair.g1;
        for (x1, x2) in [(1, 4), (7, 3), (10, 17), (5, 5)] {
            let mut f1 = vec![f.zero(); n];
            let mut f2 = vec![f.zero(); n];
            f1[x1] = f.one();
            f2[x2] = f.one();
            let lhs = qg.pi_of(&f1).mul(f, &qg.pi_of(&f2));
            let mut f3 = vec![f.zero(); n];
            for h in 0..n1 {
                for s in 0..n2 {
                    for g in 0..n1 {
                        let k = g1.mul(g1.inv(g), h);
                        let term = f.mul(&f1[g * n2 + pair.alpha(k, s)], &f2[k * n2 + s]);
                        let term = f.mul_phase(&term, -qg.cocycle.u(g, k, s));
                        f3[h * n2 + s] = f.add(&f3[h * n2 + s], &term);
                    }
                }
            }
            assert_eq!(lhs, qg.pi_of(&f3));
        }
    }

    #[test]
    fn theta_of_trivial_cocycle_vanishes() {
        let pair = s4_pair();
        let theta = build_theta(&pair, &CocyclePair::trivial(&pair));
        assert!(theta.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn theta_from_non_cocycle_fails() {
        let pair = kac_paljutkin();
        let mut c = CocyclePair::trivial(&pair);
        c.set_u(1, 1, 1, Phase::new(1, 2));
        assert!(!is_cocycle(&pair, &c).is_empty());
        let report = theta_report(&pair, &c);
        assert!(report.factorizes.passed);
        assert!(!report.multiplicative.passed);
        assert!(!report.pointwise.passed);
    }

    #[test]
    fn every_axiom_on_swap_classes() {
        for m in [2, 3] {
            let pair = swap_pair(m);
            for c in classes(&pair) {
                let qg = FiniteQG::new(&pair, &c).unwrap();
                for r in qg.verify() {
                    assert!(r.passed, "{} {:?}", r.axiom, r.witness);
                }
                for ctl in negative_controls(&qg) {
                    assert!(ctl.detected, "{} not detected", ctl.axiom);
                }
                assert!(theta_report(&pair, &qg.cocycle).passed());
            }
        }
    }

    #[test]
    fn dual_of_beta_trivial_pair_has_trivial_alpha() {
        let pair = kac_paljutkin();
        assert!((0..pair.n2()).all(|s| (0..pair.n1()).all(|g| pair.beta(s, g) == g)));
        let qg = FiniteQG::new(&pair, &classes(&pair)[1]).unwrap();
        let report = dual_build(&qg).unwrap();
        let d = &report.dual.pair;
        assert!((0..d.n1()).all(|s| (0..d.n2()).all(|g| d.alpha(s, g) == g)));
        assert!(report.dual_is_cocycle);
        assert!(report.identification.passed);
        assert!(report.biduality.passed);
        assert!(report.compact.passed);
    }

    #[test]
    fn cohomologous_cocycles_give_conjugate_unitaries() {
        let pair = swap_pair(3);
        let c1 = classes(&pair)[2].clone();
        let r: Vec<Phase> = (0..pair.n1() * pair.n2()).map(|k| Phase::new((k * k + 1) as i64, 6)).collect();
        let c2 = c1.add(&crate::cohomology::coboundary(&pair, &r));
        let w1 = w_from_w_hat(&build_w_hat(&pair, &c1));
        let w2 = w_from_w_hat(&build_w_hat(&pair, &c2));
        assert!(conjugates(&w1, &w2, &r).passed);
        let neg: Vec<Phase> = r.iter().map(|p| -*p).collect();
        assert!(!conjugates(&w1, &w2, &neg).passed);
    }
}
