//! Central finite differences of the actions and of the cocycle family at
//! the unit, compared with the structure constants of the infinitesimal
//! Hopf algebras.

use alloc::vec;
use core::f64::consts::PI;

use super::cocycle::{flow_via_actions, phase_integral, quantized_lambda};
use super::sl2::{self, Affine};
use super::{axb, CheckLine, ExampleReport};
use crate::quadrature::QuadConfig;

/// Tolerance for first derivatives of the actions.
pub const ACTION_DERIVATIVE_TOL: f64 = 1e-6;
/// Tolerance for mixed second derivatives.
pub const MIXED_DERIVATIVE_TOL: f64 = 1e-4;

const H1: f64 = 1e-5;
const H2: f64 = 1e-4;

fn central(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// `∂²F/∂x∂y` at `(x, y)` by the four-point central stencil.
pub fn mixed(f: impl Fn(f64, f64) -> f64, x: f64, y: f64, h: f64) -> f64 {
    (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h)
}

/// `d/dx α_x(r)` at `x = 1` on the `ax+b` pair.
pub fn axb_x_on_a(r: f64) -> f64 {
    central(|x| axb::alpha(x, r).unwrap_or(f64::NAN), 1.0, H1)
}

/// `d/da α_(a,0)(x)` at `a = 1` on the `SL₂` pair.
pub fn sl2_x_on_a(x: f64) -> f64 {
    central(|a| sl2::alpha(Affine::new(a, 0.0), x).unwrap_or(f64::NAN), 1.0, H1)
}

/// `d/db α_(1,b)(x)` at `b = 0` on the `SL₂` pair.
pub fn sl2_y_on_a(x: f64) -> f64 {
    central(|b| sl2::alpha(Affine::new(1.0, b), x).unwrap_or(f64::NAN), 0.0, H1)
}

/// `(X_e ⊗ Y_e)[F]` for `F(g,h)`: `X` moves `g` along `(x,0)`, `Y` moves `h`
/// along `(1,y)`.
pub fn x_tensor_y(f: impl Fn(Affine, Affine) -> f64, h: f64) -> f64 {
    mixed(|x, y| f(Affine::new(x, 0.0), Affine::new(1.0, y)), 1.0, 0.0, h)
}

/// `(Y_e ⊗ X_e)[F]`.
pub fn y_tensor_x(f: impl Fn(Affine, Affine) -> f64, h: f64) -> f64 {
    mixed(|x, y| f(Affine::new(1.0, x), Affine::new(y, 0.0)), 0.0, 1.0, h)
}

/// Coefficient `c` with `χ(X⊗Y − Y⊗X)(r) = i c r`, where
/// `χ(H⊗G)(r) = (H_e ⊗ G_e)[exp(-i A_λ(·,·,r))]`.
pub fn chi_coefficient(lambda: f64, r: f64, quad: &QuadConfig) -> f64 {
    let h = 1e-3;
    let im = |g: Affine, k: Affine| {
        let a = phase_integral(lambda, g, k, r, quad).map(|e| e.value).unwrap_or(f64::NAN);
        -libm::sin(a)
    };
    (x_tensor_y(im, h) - y_tensor_x(im, h)) / r
}

/// Finite-difference checks for the `ax+b` pair, the `SL₂` pair, and the
/// cocycle family with `λ = 4n/π`.
pub fn infinitesimal_check(n: i64) -> ExampleReport {
    let mut axb_line = CheckLine::new("ax+b: (X ▷ A)(r) = r(1-r)", ACTION_DERIVATIVE_TOL);
    for r in [-1.0, 0.5, 2.0] {
        axb_line.record((axb_x_on_a(r) - r * (1.0 - r)).abs());
    }
    let mut sl2_x = CheckLine::new("SL2: X ▷ A = -2x", ACTION_DERIVATIVE_TOL);
    let mut sl2_y = CheckLine::new("SL2: Y ▷ A = -x²", ACTION_DERIVATIVE_TOL);
    for x in [-1.5, 0.5, 2.0] {
        sl2_x.record((sl2_x_on_a(x) + 2.0 * x).abs());
        sl2_y.record((sl2_y_on_a(x) + x * x).abs());
    }

    let lambda = quantized_lambda(n);
    let mut xy = CheckLine::new("(X_e ⊗ Y_e)[f_λ(φ_r)] = 0", MIXED_DERIVATIVE_TOL);
    let mut yx = CheckLine::new("(Y_e ⊗ X_e)[f_λ(φ_r)] = λ", MIXED_DERIVATIVE_TOL);
    for l in [1.0, 4.0 / PI, lambda] {
        for r in [-0.7, 0.3, 1.5] {
            let f = |g: Affine, h: Affine| flow_via_actions(l, g, h, r).unwrap_or(f64::NAN);
            xy.record(x_tensor_y(f, H2).abs());
            yx.record((y_tensor_x(f, H2) - l).abs());
        }
    }

    let quad = QuadConfig { abs_tol: 1e-14, rel_tol: 1e-14, ..QuadConfig::default() };
    let expected = -lambda;
    let mut chi = CheckLine::new("χ_n(X⊗Y - Y⊗X) = -i(4n/π)A", MIXED_DERIVATIVE_TOL);
    let mut measured = 0.0;
    for r in [0.5, -0.8] {
        measured = chi_coefficient(lambda, r, &quad);
        chi.record((measured - expected).abs());
    }

    ExampleReport {
        example: "infinitesimal",
        seed: 0,
        samples: 3,
        rejected: 0,
        values: vec![("lambda", lambda), ("chi coefficient", measured)],
        lines: vec![axb_line, sl2_x, sl2_y, xy, yx, chi],
    }
}
