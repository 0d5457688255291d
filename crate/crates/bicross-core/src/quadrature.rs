//! Globally adaptive Gauss–Kronrod (7/15) quadrature with principal values at
//! known simple poles.
//!
//! A pole `p` is handled by folding: the symmetric excision limit
//! `lim_{ε→0} (∫_{p-ρ}^{p-ε} + ∫_{p+ε}^{p+ρ}) f` equals `∫_0^ρ f(p+t) + f(p-t) dt`,
//! whose integrand has at most a logarithmic singularity at `t = 0`.
//! Folded offsets are snapped so that `p ± t` are exact, which makes `x - p`
//! exact inside the integrand; integrands written in terms of `x - p` then
//! cancel their singular parts without rounding noise.
//! Infinite ends are mapped onto `[0,1)` by `t ↦ t/(1-t)`.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
// Gauss weights for the odd Kronrod nodes (indices 1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of integrand evaluations.
    pub max_evals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { abs_tol: 1e-11, rel_tol: 1e-12, max_evals: 400_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evals: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QuadError {
    /// The evaluation budget ran out before the error estimate met the tolerance.
    Budget { value: f64, error: f64, evals: usize },
    /// The integrand returned a non-finite value.
    NonFinite { at: f64 },
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::Budget { value, error, evals } => write!(
                f,
                "quadrature did not converge within {evals} evaluations (value {value}, error {error})"
            ),
            QuadError::NonFinite { at } => write!(f, "integrand is not finite at {at}"),
        }
    }
}

/// One GK15 panel on `[a, b]`: `(kronrod, |kronrod - gauss|)`.
pub fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64), QuadError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    if !fc.is_finite() {
        return Err(QuadError::NonFinite { at: c });
    }
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let (f1, f2) = (f(c - x), f(c + x));
        if !f1.is_finite() {
            return Err(QuadError::NonFinite { at: c - x });
        }
        if !f2.is_finite() {
            return Err(QuadError::NonFinite { at: c + x });
        }
        k += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            g += WG[j / 2] * (f1 + f2);
        }
    }
    Ok((k * h, ((k - g) * h).abs()))
}

/// How a parameter interval maps onto the original variable.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Piece {
    Plain,
    /// `t ↦ f(p+t) + f(p-t)`.
    Fold(f64),
    /// `t ∈ [0,1) ↦ a + t/(1-t)`.
    Up(f64),
    /// `t ∈ [0,1) ↦ b - t/(1-t)`.
    Down(f64),
}

impl Piece {
    fn eval<F: FnMut(f64) -> f64>(self, f: &mut F, t: f64) -> f64 {
        match self {
            Piece::Plain => f(t),
            Piece::Fold(p) => {
                // Offsets are snapped to a multiple of 2·ulp(p) so that both
                // p + t and p - t are exact and the pair is truly symmetric.
                let t = snap(p, t);
                if t == 0.0 {
                    0.0
                } else {
                    f(p + t) + f(p - t)
                }
            }
            Piece::Up(a) => {
                let u = 1.0 - t;
                f(a + t / u) / (u * u)
            }
            Piece::Down(b) => {
                let u = 1.0 - t;
                f(b - t / u) / (u * u)
            }
        }
    }

    fn cost(self) -> usize {
        match self {
            Piece::Fold(_) => 30,
            _ => 15,
        }
    }
}

fn snap(p: f64, t: f64) -> f64 {
    let a = p.abs();
    if a == 0.0 || !a.is_finite() {
        return t;
    }
    let q = 2.0 * (f64::from_bits(a.to_bits() + 1) - a);
    libm::round(t / q) * q
}

struct Panel {
    piece: Piece,
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn panel<F: FnMut(f64) -> f64>(
    f: &mut F,
    piece: Piece,
    a: f64,
    b: f64,
) -> Result<Panel, QuadError> {
    let mut g = |t: f64| piece.eval(f, t);
    let (value, error) = gk15(&mut g, a, b)?;
    Ok(Panel { piece, a, b, value, error })
}

fn run<F: FnMut(f64) -> f64>(
    f: &mut F,
    pieces: &[(Piece, f64, f64)],
    cfg: &QuadConfig,
) -> Result<Estimate, QuadError> {
    let mut heap = BinaryHeap::new();
    let mut evals = 0;
    for &(piece, a, b) in pieces {
        if b > a {
            heap.push(panel(f, piece, a, b)?);
            evals += piece.cost();
        }
    }
    loop {
        // Re-summing keeps the totals free of cancellation drift.
        let value: f64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if error <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
            return Ok(Estimate { value, error, evals });
        }
        if evals >= cfg.max_evals {
            return Err(QuadError::Budget { value, error, evals });
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => return Ok(Estimate { value: 0.0, error: 0.0, evals }),
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel cannot be split in floating point; its error is final.
            return Err(QuadError::Budget { value, error, evals });
        }
        heap.push(panel(f, worst.piece, worst.a, mid)?);
        heap.push(panel(f, worst.piece, mid, worst.b)?);
        evals += 2 * worst.piece.cost();
    }
}

/// Adaptive integral of `f` over `[a, b]` (both finite).
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<Estimate, QuadError> {
    principal_value(&mut f, a, b, &[], cfg)
}

/// Principal value of `∫_lo^hi f` where `poles` lists every non-integrable
/// point of `f`. Ends may be infinite; `hi < lo` reverses the orientation.
/// Poles outside the open interval are ignored; a pole on an end is the
/// caller's responsibility.
pub fn principal_value<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    poles: &[f64],
    cfg: &QuadConfig,
) -> Result<Estimate, QuadError> {
    if hi < lo {
        let e = principal_value(f, hi, lo, poles, cfg)?;
        return Ok(Estimate { value: -e.value, ..e });
    }
    if hi == lo {
        return Ok(Estimate { value: 0.0, error: 0.0, evals: 0 });
    }
    let mut ps: Vec<f64> = poles.iter().copied().filter(|p| *p > lo && *p < hi).collect();
    ps.sort_by(f64::total_cmp);
    ps.dedup();

    let mut radii = Vec::with_capacity(ps.len());
    for (i, &p) in ps.iter().enumerate() {
        let mut r = f64::INFINITY;
        if lo.is_finite() {
            r = r.min(p - lo);
        }
        if hi.is_finite() {
            r = r.min(hi - p);
        }
        if i > 0 {
            r = r.min(p - ps[i - 1]);
        }
        if i + 1 < ps.len() {
            r = r.min(ps[i + 1] - p);
        }
        if !r.is_finite() {
            r = 2.0 * p.abs().max(1.0);
        }
        radii.push(0.5 * r);
    }

    // Regular stretches between the folded windows.
    let mut cuts = Vec::with_capacity(ps.len() + 1);
    let mut left = lo;
    for (&p, &r) in ps.iter().zip(&radii) {
        cuts.push((left, p - r));
        left = p + r;
    }
    cuts.push((left, hi));

    let mut pieces = Vec::new();
    for (&p, &r) in ps.iter().zip(&radii) {
        pieces.push((Piece::Fold(p), 0.0, r));
    }
    for (a, b) in cuts {
        match (a.is_finite(), b.is_finite()) {
            (true, true) => pieces.push((Piece::Plain, a, b)),
            (true, false) => pieces.push((Piece::Up(a), 0.0, 1.0)),
            (false, true) => pieces.push((Piece::Down(b), 0.0, 1.0)),
            (false, false) => {
                pieces.push((Piece::Down(0.0), 0.0, 1.0));
                pieces.push((Piece::Up(0.0), 0.0, 1.0));
            }
        }
    }
    run(&mut f, &pieces, cfg)
}
