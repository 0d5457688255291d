//! Exact factorizations `G = H1·H2` and the mutual actions they induce.
//!
//! `i` is the inclusion of `H1` and `j(s) = s⁻¹`, so `θ(g,s) = i(g)j(s)` and
//! `j(α_g(s)) i(β_s(g)) = i(g) j(s)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairError {
    NotSubgroup { which: u8 },
    NontrivialIntersection,
    OrderMismatch { h1: usize, h2: usize, g: usize },
    NotSurjective,
}

impl fmt::Display for PairError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairError::NotSubgroup { which } => write!(f, "H{which} is not a subgroup"),
            PairError::NontrivialIntersection => write!(f, "H1 and H2 intersect nontrivially"),
            PairError::OrderMismatch { h1, h2, g } => {
                write!(f, "|H1|·|H2| = {h1}·{h2} differs from |G| = {g}")
            }
            PairError::NotSurjective => write!(f, "(g,s) ↦ g·s⁻¹ is not onto G"),
        }
    }
}

/// A matched pair of finite groups with its action tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub ambient: FiniteGroup,
    pub g1: FiniteGroup,
    pub g2: FiniteGroup,
    /// `i[g]`: image of `g ∈ G1` in the ambient group.
    pub i: Vec<usize>,
    /// `j[s]`: image of `s ∈ G2` in the ambient group (an anti-embedding).
    pub j: Vec<usize>,
    /// `alpha[g * n2 + s] = α_g(s)`.
    pub alpha: Vec<usize>,
    /// `beta[s * n1 + g] = β_s(g)`.
    pub beta: Vec<usize>,
}

/// A broken identity: `law` names the identity, `args` is the witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub args: Vec<usize>,
}

impl MatchedPair {
    pub fn n1(&self) -> usize {
        self.g1.order()
    }

    pub fn n2(&self) -> usize {
        self.g2.order()
    }

    #[inline]
    pub fn alpha(&self, g: usize, s: usize) -> usize {
        self.alpha[g * self.g2.order() + s]
    }

    #[inline]
    pub fn beta(&self, s: usize, g: usize) -> usize {
        self.beta[s * self.g1.order() + g]
    }

    /// Ambient element `θ(g,s) = i(g)j(s)`.
    pub fn theta(&self, g: usize, s: usize) -> usize {
        self.ambient.mul(self.i[g], self.j[s])
    }

    /// The flipped pair: the roles of `G1` and `G2` are exchanged, with
    /// `ĩ(s) = j(s)⁻¹`, `j̃(g) = i(g)⁻¹`, `α̃_s(g) = β_s(g)`, `β̃_g(s) = α_g(s)`.
    pub fn flipped(&self) -> MatchedPair {
        let (n1, n2) = (self.n1(), self.n2());
        let i = self.j.iter().map(|&x| self.ambient.inv(x)).collect();
        let j = self.i.iter().map(|&x| self.ambient.inv(x)).collect();
        let mut alpha = vec![0; n2 * n1];
        let mut beta = vec![0; n1 * n2];
        for s in 0..n2 {
            for g in 0..n1 {
                alpha[s * n1 + g] = self.beta(s, g);
                beta[g * n2 + s] = self.alpha(g, s);
            }
        }
        MatchedPair {
            ambient: self.ambient.clone(),
            g1: self.g2.clone(),
            g2: self.g1.clone(),
            i,
            j,
            alpha,
            beta,
        }
    }

    /// Exhaustively checks the action laws and the defining relation.
    pub fn verify_matched_identities(&self) -> Vec<Violation> {
        let (g1, g2) = (&self.g1, &self.g2);
        let (n1, n2) = (self.n1(), self.n2());
        let mut out = Vec::new();
        let mut push = |law: &'static str, args: &[usize]| {
            out.push(Violation { law, args: args.to_vec() });
        };
        for g in 0..n1 {
            for s in 0..n2 {
                let lhs = self.theta(g, s);
                let rhs = self.ambient.mul(self.j[self.alpha(g, s)], self.i[self.beta(s, g)]);
                if lhs != rhs {
                    push("i(g)j(s) = j(α_g(s))i(β_s(g))", &[g, s]);
                }
            }
        }
        for s in 0..n2 {
            if self.alpha(0, s) != s {
                push("α_e(s) = s", &[s]);
            }
        }
        for g in 0..n1 {
            if self.alpha(g, 0) != 0 {
                push("α_g(e) = e", &[g]);
            }
            if self.beta(0, g) != g {
                push("β_e(g) = g", &[g]);
            }
        }
        for s in 0..n2 {
            if self.beta(s, 0) != 0 {
                push("β_s(e) = e", &[s]);
            }
        }
        for h in 0..n1 {
            for g in 0..n1 {
                for s in 0..n2 {
                    if self.alpha(g1.mul(h, g), s) != self.alpha(h, self.alpha(g, s)) {
                        push("α_hg(s) = α_h(α_g(s))", &[h, g, s]);
                    }
                    let lhs = self.beta(s, g1.mul(h, g));
                    let rhs = g1.mul(self.beta(self.alpha(g, s), h), self.beta(s, g));
                    if lhs != rhs {
                        push("β_s(hg) = β_α_g(s)(h) β_s(g)", &[h, g, s]);
                    }
                }
            }
        }
        for t in 0..n2 {
            for s in 0..n2 {
                for g in 0..n1 {
                    if self.beta(g2.mul(t, s), g) != self.beta(t, self.beta(s, g)) {
                        push("β_ts(g) = β_t(β_s(g))", &[t, s, g]);
                    }
                    let lhs = self.alpha(g, g2.mul(t, s));
                    let rhs = g2.mul(self.alpha(self.beta(s, g), t), self.alpha(g, s));
                    if lhs != rhs {
                        push("α_g(ts) = α_β_s(g)(t) α_g(s)", &[t, s, g]);
                    }
                }
            }
        }
        out
    }

    /// Pairs `(g,s) ↦ (β_s(g), α_g(s))`, the map `ρ⁻¹θ` on `G1×G2`, as a table.
    pub fn rho_inv_theta(&self) -> Vec<(usize, usize)> {
        let (n1, n2) = (self.n1(), self.n2());
        (0..n1 * n2)
            .map(|x| {
                let (g, s) = (x / n2, x % n2);
                (self.beta(s, g), self.alpha(g, s))
            })
            .collect()
    }
}

/// Builds the matched pair of an exact factorization `G = H1·H2`.
pub fn exact_factorization(
    ambient: &FiniteGroup,
    h1: &[usize],
    h2: &[usize],
) -> Result<MatchedPair, PairError> {
    if !ambient.is_subgroup(h1) {
        return Err(PairError::NotSubgroup { which: 1 });
    }
    if !ambient.is_subgroup(h2) {
        return Err(PairError::NotSubgroup { which: 2 });
    }
    let (g1, i) = ambient.subgroup(h1);
    let (g2, incl2) = ambient.subgroup(h2);
    let (n1, n2) = (g1.order(), g2.order());
    if incl2.iter().any(|x| *x != 0 && i.contains(x)) {
        return Err(PairError::NontrivialIntersection);
    }
    if n1 * n2 != ambient.order() {
        return Err(PairError::OrderMismatch { h1: n1, h2: n2, g: ambient.order() });
    }
    let j: Vec<usize> = incl2.iter().map(|&x| ambient.inv(x)).collect();
    let (alpha, beta) = derive_actions(ambient, &i, &j)?;
    Ok(MatchedPair { ambient: ambient.clone(), g1, g2, i, j, alpha, beta })
}

/// Reads `(α_g(s), β_s(g))` off the inverse of `ρ(x,y) = j(y)i(x)`.
pub fn derive_actions(
    ambient: &FiniteGroup,
    i: &[usize],
    j: &[usize],
) -> Result<(Vec<usize>, Vec<usize>), PairError> {
    let (n1, n2) = (i.len(), j.len());
    let mut rho_inv = vec![usize::MAX; ambient.order()];
    for x in 0..n1 {
        for y in 0..n2 {
            let z = ambient.mul(j[y], i[x]);
            if rho_inv[z] != usize::MAX {
                return Err(PairError::NotSurjective);
            }
            rho_inv[z] = x * n2 + y;
        }
    }
    let mut alpha = vec![0; n1 * n2];
    let mut beta = vec![0; n2 * n1];
    for g in 0..n1 {
        for s in 0..n2 {
            let z = ambient.mul(i[g], j[s]);
            let xy = rho_inv[z];
            if xy == usize::MAX {
                return Err(PairError::NotSurjective);
            }
            let (x, y) = (xy / n2, xy % n2);
            alpha[g * n2 + s] = y;
            beta[s * n1 + g] = x;
        }
    }
    Ok((alpha, beta))
}
