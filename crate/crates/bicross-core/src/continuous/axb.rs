//! `G1 = G2 = ℝ∖{0}` under multiplication inside `{(a,b) : a ≠ 0}` with
//! `(a,b)(c,d) = (ac, d + cb)`, `i(g) = (g, g-1)`, `j(s) = (s, 0)`.

use alloc::vec;

use super::{
    guarded, rel_err, rel_err_vec, rng, sample_accepted, signed_log_uniform, CheckLine,
    ExampleReport, LieMatchedPair, CLOSED_FORM_TOL, IDENTITY_TOL,
};

/// Spread of `log|g|` and `log|s|` in the sampler.
const SPREAD: f64 = 2.5;

#[derive(Clone, Copy, Debug, Default)]
pub struct AxbPair;

/// `α_g(s) = gs/(s(g-1)+1)`.
pub fn alpha(g: f64, s: f64) -> Option<f64> {
    let d = guarded(s * (g - 1.0) + 1.0)?;
    guarded(g * s / d)
}

/// `β_s(g) = s(g-1)+1`.
pub fn beta(s: f64, g: f64) -> Option<f64> {
    guarded(s * (g - 1.0) + 1.0)
}

pub fn p_closed(g: f64, s: f64) -> f64 {
    (g / (s * (g - 1.0) + 1.0)).abs()
}

pub fn nabla_closed(g: f64, s: f64) -> f64 {
    (1.0 / (s * (g - 1.0) + 1.0)).abs()
}

pub fn modular_element_closed(g: f64, s: f64) -> f64 {
    ((s * (g - 1.0) + 1.0) / (g * s)).abs()
}

impl LieMatchedPair for AxbPair {
    type G1 = f64;
    type G2 = f64;
    type Ambient = (f64, f64);

    fn g1_mul(&self, g: f64, h: f64) -> f64 {
        g * h
    }
    fn g1_inv(&self, g: f64) -> f64 {
        1.0 / g
    }
    fn g1_unit(&self) -> f64 {
        1.0
    }
    fn g2_mul(&self, s: f64, t: f64) -> f64 {
        s * t
    }
    fn g2_inv(&self, s: f64) -> f64 {
        1.0 / s
    }
    fn g2_unit(&self) -> f64 {
        1.0
    }
    fn i(&self, g: f64) -> (f64, f64) {
        (g, g - 1.0)
    }
    fn j(&self, s: f64) -> (f64, f64) {
        (s, 0.0)
    }
    fn ambient_mul(&self, x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
        (x.0 * y.0, y.1 + y.0 * x.1)
    }
    fn ambient_dist(&self, x: (f64, f64), y: (f64, f64)) -> f64 {
        rel_err_vec(&[x.0, x.1], &[y.0, y.1])
    }
    fn g1_dist(&self, g: f64, h: f64) -> f64 {
        rel_err(g, h)
    }
    fn g2_dist(&self, s: f64, t: f64) -> f64 {
        rel_err(s, t)
    }
    fn alpha(&self, g: f64, s: f64) -> Option<f64> {
        alpha(g, s)
    }
    fn beta(&self, s: f64, g: f64) -> Option<f64> {
        beta(s, g)
    }
    fn delta(&self, x: (f64, f64)) -> f64 {
        x.0.abs()
    }
    fn delta1(&self, _: f64) -> f64 {
        1.0
    }
    fn delta2(&self, _: f64) -> f64 {
        1.0
    }
    fn alpha_jacobian(&self, g: f64, s: f64) -> Option<f64> {
        // Haar measure ds/|s|: |∂α/∂s| · |s| / |α|, with ∂α/∂s = g/β².
        let b = beta(s, g)?;
        let a = alpha(g, s)?;
        Some((g / (b * b)).abs() * s.abs() / a.abs())
    }
}

/// Samples `samples` in-domain points and checks the action identities, the
/// self-duality map `u(g) = g⁻¹`, the closed-form modular data, and that the
/// scaling group is non-trivial.
pub fn axb_example_check(samples: usize, seed: u64) -> ExampleReport {
    let pair = AxbPair;
    let mut r = rng(seed);
    let (points, rejected) = sample_accepted(&mut r, samples, |r| {
        let (g, h) = (signed_log_uniform(r, SPREAD), signed_log_uniform(r, SPREAD));
        let (s, t) = (signed_log_uniform(r, SPREAD), signed_log_uniform(r, SPREAD));
        let actions = pair.action_identity_error(g, h, s, t)?;
        // self-duality: u(β_s(g)) = α_{u⁻¹(s)}(u(g))
        let dual = rel_err(1.0 / beta(s, g)?, alpha(1.0 / s, 1.0 / g)?);
        let modular = [
            rel_err(pair.p(g, s)?, p_closed(g, s)),
            rel_err(pair.nabla(g, s)?, nabla_closed(g, s)),
            rel_err(pair.modular_element(g, s)?, modular_element_closed(g, s)),
        ];
        let jac = pair.alpha_jacobian(g, s)? / pair.alpha_jacobian(g, 1.0)?;
        let xi = pair.xi(g, s)?;
        Some((actions.max(), dual, modular, rel_err(xi, jac), (xi - 1.0).abs()))
    });

    let mut actions = CheckLine::new("action identities", IDENTITY_TOL);
    let mut dual = CheckLine::new("self-duality u(β_s(g)) = α_u⁻¹(s)(u(g))", IDENTITY_TOL);
    let mut p = CheckLine::new("P = |g/(s(g-1)+1)|", CLOSED_FORM_TOL);
    let mut nabla = CheckLine::new("∇ = |1/(s(g-1)+1)|", CLOSED_FORM_TOL);
    let mut dm = CheckLine::new("δ_M = |(s(g-1)+1)/(gs)|", CLOSED_FORM_TOL);
    let mut xi_line = CheckLine::new("ξ from modular functions = ξ from dα/ds", CLOSED_FORM_TOL);
    let mut xi_dev = 0.0f64;
    for (a, d, m, x, dev) in &points {
        actions.record(*a);
        dual.record(*d);
        p.record(m[0]);
        nabla.record(m[1]);
        dm.record(m[2]);
        xi_line.record(*x);
        xi_dev = xi_dev.max(*dev);
    }
    let mut kac = CheckLine::exceeding("max |ξ - 1| (not a Kac algebra)", 1e-6);
    kac.record(xi_dev);
    let mut complete = CheckLine::new("all requested samples accepted", 0.0);
    complete.record((samples - points.len()) as f64);

    ExampleReport {
        example: "axb",
        seed,
        samples: points.len(),
        rejected,
        values: vec![],
        lines: vec![actions, dual, p, nabla, dm, xi_line, kac, complete],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_of_g1_acts_trivially() {
        for s in [-3.0, -0.5, 0.25, 2.0, 7.0] {
            assert_eq!(alpha(1.0, s), Some(s));
            assert_eq!(beta(s, 1.0), Some(1.0));
        }
    }

    #[test]
    fn point_two_one() {
        assert_eq!(alpha(2.0, 1.0), Some(1.0));
        assert_eq!(beta(1.0, 2.0), Some(2.0));
        assert_eq!(nabla_closed(2.0, 1.0), 0.5);
        assert_eq!(AxbPair.nabla(2.0, 1.0), Some(0.5));
    }

    #[test]
    fn pole_is_guarded() {
        // s(g-1)+1 = 0 at g = 3, s = -1/2
        assert_eq!(alpha(3.0, -0.5), None);
        assert_eq!(AxbPair.p(3.0, -0.5), None);
    }

    #[test]
    fn sampled_check_passes() {
        let rep = axb_example_check(2000, 11);
        assert!(rep.passed(), "{rep:#?}");
        assert_eq!(rep.samples, 2000);
    }
}
