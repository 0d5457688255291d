//! `G1 = {(a,b) : a > 0}` with `(a,b)(c,d) = (ac, ad + b/c)` and
//! `G2 = (ℝ,+)` inside `PSL₂(ℝ)`, via upper and lower unitriangular-type
//! matrices.

use alloc::vec;
use rand::Rng;

use super::{
    guarded, log_uniform, rel_err, rel_err_vec, rng, sample_accepted, CheckLine, ExampleReport,
    LieMatchedPair, CLOSED_FORM_TOL, IDENTITY_TOL,
};

/// An element `(a, b)` of `G1`, `a > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Affine {
    pub a: f64,
    pub b: f64,
}

impl Affine {
    pub const UNIT: Affine = Affine { a: 1.0, b: 0.0 };

    pub fn new(a: f64, b: f64) -> Self {
        Affine { a, b }
    }

    pub fn mul(self, o: Affine) -> Affine {
        Affine { a: self.a * o.a, b: self.a * o.b + self.b / o.a }
    }

    pub fn inv(self) -> Affine {
        Affine { a: 1.0 / self.a, b: -self.b }
    }
}

/// `α_(a,b)(x) = x/(a(a+bx))`.
pub fn alpha(g: Affine, x: f64) -> Option<f64> {
    let d = guarded(g.a + g.b * x)?;
    Some(x / (g.a * d))
}

/// `β_x(a,b) = (a+bx, b)` if `a+bx > 0`, `(-a-bx, -b)` if `a+bx < 0`.
pub fn beta(x: f64, g: Affine) -> Option<Affine> {
    let d = guarded(g.a + g.b * x)?;
    Some(if d > 0.0 { Affine::new(d, g.b) } else { Affine::new(-d, -g.b) })
}

pub fn p_closed(g: Affine, s: f64) -> f64 {
    let d = g.a + g.b * s;
    g.a * g.a / (d * d)
}

pub fn nabla_closed(g: Affine, s: f64) -> f64 {
    let d = g.a + g.b * s;
    1.0 / (g.a * g.a * d * d)
}

pub fn dual_modular_element_closed(g: Affine, s: f64) -> f64 {
    let d = g.a + g.b * s;
    d * d * d * d
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Sl2Pair;

/// Row-major 2×2 matrix, compared up to sign.
pub type Mat2 = [f64; 4];

fn additive_dist(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(1.0)
}

impl LieMatchedPair for Sl2Pair {
    type G1 = Affine;
    type G2 = f64;
    type Ambient = Mat2;

    fn g1_mul(&self, g: Affine, h: Affine) -> Affine {
        g.mul(h)
    }
    fn g1_inv(&self, g: Affine) -> Affine {
        g.inv()
    }
    fn g1_unit(&self) -> Affine {
        Affine::UNIT
    }
    fn g2_mul(&self, s: f64, t: f64) -> f64 {
        s + t
    }
    fn g2_inv(&self, s: f64) -> f64 {
        -s
    }
    fn g2_unit(&self) -> f64 {
        0.0
    }
    fn i(&self, g: Affine) -> Mat2 {
        [g.a, g.b, 0.0, 1.0 / g.a]
    }
    fn j(&self, x: f64) -> Mat2 {
        [1.0, 0.0, x, 1.0]
    }
    fn ambient_mul(&self, x: Mat2, y: Mat2) -> Mat2 {
        [
            x[0] * y[0] + x[1] * y[2],
            x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3],
        ]
    }
    fn ambient_dist(&self, x: Mat2, y: Mat2) -> f64 {
        let neg = [-y[0], -y[1], -y[2], -y[3]];
        rel_err_vec(&x, &y).min(rel_err_vec(&x, &neg))
    }
    fn g1_dist(&self, g: Affine, h: Affine) -> f64 {
        rel_err_vec(&[g.a, g.b], &[h.a, h.b])
    }
    fn g2_dist(&self, s: f64, t: f64) -> f64 {
        additive_dist(s, t)
    }
    fn alpha(&self, g: Affine, x: f64) -> Option<f64> {
        alpha(g, x)
    }
    fn beta(&self, x: f64, g: Affine) -> Option<Affine> {
        beta(x, g)
    }
    fn delta(&self, _: Mat2) -> f64 {
        1.0
    }
    fn delta1(&self, g: Affine) -> f64 {
        1.0 / (g.a * g.a)
    }
    fn delta2(&self, _: f64) -> f64 {
        1.0
    }
    fn alpha_jacobian(&self, g: Affine, x: f64) -> Option<f64> {
        let d = guarded(g.a + g.b * x)?;
        Some(1.0 / (d * d))
    }
}

fn draw_g1<R: Rng>(r: &mut R) -> Affine {
    Affine::new(log_uniform(r, 1.5), r.gen_range(-3.0..3.0))
}

/// Samples in-domain points and checks the action identities (with the
/// sign-split `β`), the closed-form modular data, unimodularity of the
/// quantum group and non-unimodularity of its dual.
pub fn sl2_example_check(samples: usize, seed: u64) -> ExampleReport {
    let pair = Sl2Pair;
    let mut r = rng(seed);
    let (points, rejected) = sample_accepted(&mut r, samples, |r| {
        let (g, h) = (draw_g1(r), draw_g1(r));
        let (s, t): (f64, f64) = (r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let actions = pair.action_identity_error(g, h, s, t)?;
        let p = pair.p(g, s)?;
        let closed = [
            rel_err(p, p_closed(g, s)),
            rel_err(pair.nabla_hat(g, s)?, p_closed(g, s)),
            rel_err(pair.nabla(g, s)?, nabla_closed(g, s)),
            rel_err(pair.modular_element(g, s)?, 1.0),
            rel_err(pair.dual_modular_element(g, s)?, dual_modular_element_closed(g, s)),
        ];
        let jac = pair.alpha_jacobian(g, s)? / pair.alpha_jacobian(g, 0.0)?;
        let xi = pair.xi(g, s)?;
        let dual_dev = (pair.dual_modular_element(g, s)? - 1.0).abs();
        Some((actions.max(), closed, rel_err(xi, jac), (xi - 1.0).abs(), dual_dev))
    });

    let mut actions = CheckLine::new("action identities", IDENTITY_TOL);
    let mut p = CheckLine::new("P = a²/(a+bs)²", CLOSED_FORM_TOL);
    let mut nabla_hat = CheckLine::new("∇̂ = a²/(a+bs)²", CLOSED_FORM_TOL);
    let mut nabla = CheckLine::new("∇ = 1/(a²(a+bs)²)", CLOSED_FORM_TOL);
    let mut dm = CheckLine::new("δ_M = 1 (unimodular)", CLOSED_FORM_TOL);
    let mut dmh = CheckLine::new("δ_M̂ = (a+bs)⁴", CLOSED_FORM_TOL);
    let mut xi_line = CheckLine::new("ξ from modular functions = ξ from dα/ds", CLOSED_FORM_TOL);
    let (mut xi_dev, mut dual_dev) = (0.0f64, 0.0f64);
    for (a, c, x, xd, dd) in &points {
        actions.record(*a);
        p.record(c[0]);
        nabla_hat.record(c[1]);
        nabla.record(c[2]);
        dm.record(c[3]);
        dmh.record(c[4]);
        xi_line.record(*x);
        xi_dev = xi_dev.max(*xd);
        dual_dev = dual_dev.max(*dd);
    }
    let n = points.len();
    let mut kac = CheckLine::exceeding("max |ξ - 1| (not a Kac algebra)", 1e-6);
    kac.record(xi_dev);
    let mut dual = CheckLine::exceeding("max |δ_M̂ - 1| (dual not unimodular)", 1e-6);
    dual.record(dual_dev);
    let mut complete = CheckLine::new("all requested samples accepted", 0.0);
    complete.record((samples - n) as f64);

    ExampleReport {
        example: "sl2",
        seed,
        samples: n,
        rejected,
        values: vec![],
        lines: vec![actions, p, nabla_hat, nabla, dm, dmh, xi_line, kac, dual, complete],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_of_g1_acts_trivially() {
        for x in [-2.0, 0.0, 0.5, 3.0] {
            assert_eq!(beta(x, Affine::UNIT), Some(Affine::UNIT));
            assert_eq!(alpha(Affine::UNIT, x), Some(x));
        }
    }

    #[test]
    fn point_one_one_one() {
        let g = Affine::new(1.0, 1.0);
        assert_eq!(alpha(g, 1.0), Some(0.5));
        assert_eq!(beta(1.0, g), Some(Affine::new(2.0, 1.0)));
        assert_eq!(dual_modular_element_closed(g, 1.0), 16.0);
        assert_eq!(Sl2Pair.dual_modular_element(g, 1.0), Some(16.0));
    }

    #[test]
    fn negative_branch_of_beta() {
        // a + bx = 1 - 2 = -1 < 0
        let g = Affine::new(1.0, -1.0);
        assert_eq!(beta(2.0, g), Some(Affine::new(1.0, 1.0)));
        let e = Sl2Pair.action_identity_error(g, Affine::new(2.0, 0.5), 2.0, -0.3).unwrap();
        assert!(e.max() < 1e-14, "{e:?}");
    }

    #[test]
    fn group_law() {
        let g = Affine::new(2.0, -1.5);
        let h = Affine::new(0.5, 3.0);
        let pair = Sl2Pair;
        let lhs = pair.i(g.mul(h));
        let rhs = pair.ambient_mul(pair.i(g), pair.i(h));
        assert!(pair.ambient_dist(lhs, rhs) < 1e-15);
        let e = g.mul(g.inv());
        assert!((e.a - 1.0).abs() < 1e-15 && e.b.abs() < 1e-15);
    }

    #[test]
    fn sampled_check_passes() {
        let rep = sl2_example_check(2000, 5);
        assert!(rep.passed(), "{rep:#?}");
    }
}
