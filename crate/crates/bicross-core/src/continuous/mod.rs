//! Sampled numerical checks of matched pairs of Lie groups and of the
//! principal-value cocycle family on the `SL₂` pair.

pub mod axb;
pub mod cocycle;
pub mod infinitesimal;
pub mod sl2;

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Points closer than this to a pole or sign boundary are rejected.
pub const DOMAIN_GUARD: f64 = 1e-6;
/// Tolerance for the action identities.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Tolerance for closed forms against general formulas.
pub const CLOSED_FORM_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum Bound {
    /// Passes when the largest recorded value is at most the threshold.
    AtMost,
    /// Passes when the smallest recorded value exceeds the threshold.
    Exceeds,
}

/// One sampled statement: the extreme recorded value against a threshold.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CheckLine {
    pub name: &'static str,
    pub bound: Bound,
    /// Largest value for `AtMost`, smallest for `Exceeds`.
    pub value: f64,
    pub threshold: f64,
    pub samples: usize,
    pub passed: bool,
}

impl CheckLine {
    pub fn new(name: &'static str, threshold: f64) -> Self {
        CheckLine { name, bound: Bound::AtMost, value: 0.0, threshold, samples: 0, passed: false }
    }

    pub fn exceeding(name: &'static str, threshold: f64) -> Self {
        CheckLine {
            name,
            bound: Bound::Exceeds,
            value: f64::INFINITY,
            threshold,
            samples: 0,
            passed: false,
        }
    }

    /// Records one value; NaN counts as a failure. A line with no samples fails.
    pub fn record(&mut self, v: f64) {
        self.samples += 1;
        match self.bound {
            Bound::AtMost => {
                if v.is_nan() || v > self.value {
                    self.value = if v.is_nan() { f64::INFINITY } else { v };
                }
                self.passed = self.value <= self.threshold;
            }
            Bound::Exceeds => {
                if v.is_nan() || v < self.value {
                    self.value = if v.is_nan() { f64::NEG_INFINITY } else { v };
                }
                self.passed = self.value > self.threshold;
            }
        }
    }

    /// A failure that produced no value, such as a quadrature breakdown.
    pub fn record_failure(&mut self) {
        self.record(f64::NAN);
    }
}

/// Outcome of one sampled example.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExampleReport {
    pub example: &'static str,
    pub seed: u64,
    pub samples: usize,
    /// Draws discarded by the domain guard.
    pub rejected: usize,
    pub lines: Vec<CheckLine>,
    /// Auxiliary figures such as quadrature error estimates.
    pub values: Vec<(&'static str, f64)>,
}

impl ExampleReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn line(&self, name: &str) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.name == name)
    }
}

/// `|x - y| / max(|x|, |y|)`, zero when both vanish.
pub fn rel_err(x: f64, y: f64) -> f64 {
    let scale = x.abs().max(y.abs());
    if scale == 0.0 {
        0.0
    } else {
        (x - y).abs() / scale
    }
}

/// Componentwise error of two vectors relative to their largest entry.
pub fn rel_err_vec(x: &[f64], y: &[f64]) -> f64 {
    let scale = x.iter().chain(y).fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    x.iter().zip(y).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())) / scale
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `±exp(u)` with `u` uniform in `[-spread, spread]` and a random sign.
pub fn signed_log_uniform<R: Rng>(rng: &mut R, spread: f64) -> f64 {
    let m = libm::exp(rng.gen_range(-spread..spread));
    if rng.gen_bool(0.5) {
        m
    } else {
        -m
    }
}

pub fn log_uniform<R: Rng>(rng: &mut R, spread: f64) -> f64 {
    libm::exp(rng.gen_range(-spread..spread))
}

/// Returns `Some(x)` unless `|x|` is inside the guard band.
pub fn guarded(x: f64) -> Option<f64> {
    if x.abs() < DOMAIN_GUARD || !x.is_finite() {
        None
    } else {
        Some(x)
    }
}

/// Modular data of a matched pair of Lie groups, evaluated from the general
/// formulas in terms of the actions and the three modular functions.
///
/// `alpha` and `beta` return `None` inside the domain guard.
pub trait LieMatchedPair {
    type G1: Copy;
    type G2: Copy;
    type Ambient: Copy;

    fn g1_mul(&self, g: Self::G1, h: Self::G1) -> Self::G1;
    fn g1_inv(&self, g: Self::G1) -> Self::G1;
    fn g1_unit(&self) -> Self::G1;
    fn g2_mul(&self, s: Self::G2, t: Self::G2) -> Self::G2;
    fn g2_inv(&self, s: Self::G2) -> Self::G2;
    fn g2_unit(&self) -> Self::G2;
    fn i(&self, g: Self::G1) -> Self::Ambient;
    fn j(&self, s: Self::G2) -> Self::Ambient;
    fn ambient_mul(&self, x: Self::Ambient, y: Self::Ambient) -> Self::Ambient;
    /// Relative distance between ambient elements.
    fn ambient_dist(&self, x: Self::Ambient, y: Self::Ambient) -> f64;
    fn g1_dist(&self, g: Self::G1, h: Self::G1) -> f64;
    fn g2_dist(&self, s: Self::G2, t: Self::G2) -> f64;

    fn alpha(&self, g: Self::G1, s: Self::G2) -> Option<Self::G2>;
    fn beta(&self, s: Self::G2, g: Self::G1) -> Option<Self::G1>;

    fn delta(&self, x: Self::Ambient) -> f64;
    fn delta1(&self, g: Self::G1) -> f64;
    fn delta2(&self, s: Self::G2) -> f64;

    /// `dα_g(s)/ds` with respect to the Haar measure of `G2`, from the
    /// derivative of the closed-form action.
    fn alpha_jacobian(&self, g: Self::G1, s: Self::G2) -> Option<f64>;

    /// `δ(i(x))` computed through the ambient group.
    fn delta_i(&self, g: Self::G1) -> f64 {
        self.delta(self.i(g))
    }

    fn delta_j(&self, s: Self::G2) -> f64 {
        self.delta(self.j(s))
    }

    /// Unitary implementation of the scaling group.
    fn p(&self, g: Self::G1, s: Self::G2) -> Option<f64> {
        let a = self.alpha(g, s)?;
        let b = self.beta(s, g)?;
        let gb = self.g1_mul(g, self.g1_inv(b));
        Some(
            self.delta_i(gb)
                * self.delta1(self.g1_mul(self.g1_inv(g), b))
                * self.delta2(self.g2_mul(self.g2_inv(s), a)),
        )
    }

    fn nabla(&self, g: Self::G1, s: Self::G2) -> Option<f64> {
        let a = self.alpha(g, s)?;
        let b = self.beta(s, g)?;
        Some(
            self.delta_i(b).recip()
                * self.delta1(self.g1_mul(b, g))
                * self.delta2(self.g2_mul(a, self.g2_inv(s))),
        )
    }

    fn nabla_hat(&self, g: Self::G1, s: Self::G2) -> Option<f64> {
        let a = self.alpha(g, s)?;
        let b = self.beta(s, g)?;
        Some(
            self.delta_j(a)
                * self.delta1(self.g1_mul(b, self.g1_inv(g)))
                * self.delta2(self.g2_mul(a, s)),
        )
    }

    fn modular_element(&self, g: Self::G1, s: Self::G2) -> Option<f64> {
        let a = self.alpha(g, s)?;
        let d2 = self.delta2(a);
        Some(self.delta_j(a).recip() / (d2 * d2))
    }

    fn dual_modular_element(&self, g: Self::G1, s: Self::G2) -> Option<f64> {
        let b = self.beta(s, g)?;
        let d1 = self.delta1(b);
        Some(self.delta_i(b) / (d1 * d1))
    }

    /// Radon–Nikodym derivative of `α_g` from the modular functions.
    fn rn_derivative(&self, g: Self::G1, s: Self::G2) -> Option<f64> {
        let a = self.alpha(g, s)?;
        let b = self.beta(s, g)?;
        Some(
            self.delta_i(self.g1_inv(b))
                * self.delta1(b)
                * self.delta2(self.g2_mul(a, self.g2_inv(s))),
        )
    }

    /// `ξ(g,s) = χ(g,s)/χ(g,e)`; identically 1 iff the scaling group is trivial.
    fn xi(&self, g: Self::G1, s: Self::G2) -> Option<f64> {
        Some(self.rn_derivative(g, s)? / self.rn_derivative(g, self.g2_unit())?)
    }

    /// Largest error among the action identities at one sample, or `None` if
    /// some intermediate value falls in the guard band.
    fn action_identity_error(
        &self,
        g: Self::G1,
        h: Self::G1,
        s: Self::G2,
        t: Self::G2,
    ) -> Option<ActionErrors> {
        let mut e = ActionErrors::default();
        let a_gs = self.alpha(g, s)?;
        let b_sg = self.beta(s, g)?;
        e.relation = self.ambient_dist(
            self.ambient_mul(self.i(g), self.j(s)),
            self.ambient_mul(self.j(a_gs), self.i(b_sg)),
        );

        let hg = self.g1_mul(h, g);
        let a_hg = self.alpha(hg, s)?;
        let a_h_ag = self.alpha(h, a_gs)?;
        e.alpha_left = self.g2_dist(a_hg, a_h_ag);
        let b_hg = self.beta(s, hg)?;
        let b_rhs = self.g1_mul(self.beta(a_gs, h)?, b_sg);
        e.beta_left = self.g1_dist(b_hg, b_rhs);

        let ts = self.g2_mul(t, s);
        let b_ts = self.beta(ts, g)?;
        let b_t_bs = self.beta(t, b_sg)?;
        e.beta_right = self.g1_dist(b_ts, b_t_bs);
        let a_ts = self.alpha(g, ts)?;
        let a_rhs = self.g2_mul(self.alpha(b_sg, t)?, a_gs);
        e.alpha_right = self.g2_dist(a_ts, a_rhs);

        let (e1, e2) = (self.g1_unit(), self.g2_unit());
        e.units = [
            self.g2_dist(self.alpha(g, e2)?, e2),
            self.g2_dist(self.alpha(e1, s)?, s),
            self.g1_dist(self.beta(s, e1)?, e1),
            self.g1_dist(self.beta(e2, g)?, g),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        Some(e)
    }
}

/// Errors of the action identities at one sample.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ActionErrors {
    /// `i(g)j(s) = j(α_g(s)) i(β_s(g))`
    pub relation: f64,
    /// `α_hg(s) = α_h(α_g(s))`
    pub alpha_left: f64,
    /// `β_s(hg) = β_{α_g(s)}(h) β_s(g)`
    pub beta_left: f64,
    /// `β_ts(g) = β_t(β_s(g))`
    pub beta_right: f64,
    /// `α_g(ts) = α_{β_s(g)}(t) α_g(s)`
    pub alpha_right: f64,
    /// Unit laws.
    pub units: f64,
}

impl ActionErrors {
    pub fn max(&self) -> f64 {
        [self.relation, self.alpha_left, self.beta_left, self.beta_right, self.alpha_right, self.units]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Draws samples until `count` are accepted by `attempt`, counting rejections.
/// Gives up after `100 * count + 1000` draws.
pub fn sample_accepted<R: Rng, T>(
    rng: &mut R,
    count: usize,
    mut attempt: impl FnMut(&mut R) -> Option<T>,
) -> (Vec<T>, usize) {
    let mut out = Vec::with_capacity(count);
    let mut rejected = 0;
    let limit = 100 * count + 1000;
    while out.len() < count && out.len() + rejected < limit {
        match attempt(rng) {
            Some(v) => out.push(v),
            None => rejected += 1,
        }
    }
    (out, rejected)
}
