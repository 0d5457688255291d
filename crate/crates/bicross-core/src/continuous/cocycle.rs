//! Phases `A_λ(g,h,s) = PV ∫_0^s f_λ(φ_r(g,h)) dr` on the `SL₂` matched pair,
//! with `f_λ(a,b,c,d) = λ b log c / (a c²)` and
//! `φ_r(g,h) = (β_{α_h(r)}(g), β_r(h))`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use rand::Rng;

use super::sl2::{alpha, beta, Affine};
use super::{log_uniform, rel_err_vec, rng, sample_accepted, CheckLine, ExampleReport, DOMAIN_GUARD};
use crate::quadrature::{principal_value, Estimate, QuadConfig, QuadError};

const TWO_PI: f64 = 2.0 * PI;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CocycleError {
    Quadrature(QuadError),
    /// `f_λ(φ_r(g,h))` and the closed flow form disagree at `r`.
    Pointwise { r: f64, via_actions: f64, closed: f64 },
    /// An argument lies on a pole or sign boundary.
    Domain,
}

impl fmt::Display for CocycleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleError::Quadrature(e) => write!(f, "{e}"),
            CocycleError::Pointwise { r, via_actions, closed } => write!(
                f,
                "flow integrand mismatch at r = {r}: {via_actions} through the actions, {closed} closed form"
            ),
            CocycleError::Domain => write!(f, "argument on a pole or sign boundary"),
        }
    }
}

impl From<QuadError> for CocycleError {
    fn from(e: QuadError) -> Self {
        CocycleError::Quadrature(e)
    }
}

/// `f_λ(g,h) = λ b log c / (a c²)` for `g = (a,b)`, `h = (c,d)`.
pub fn f_lambda(lambda: f64, g: Affine, h: Affine) -> f64 {
    lambda * g.b * libm::log(h.a) / (g.a * h.a * h.a)
}

/// `φ_r(g,h) = (β_{α_h(r)}(g), β_r(h))`.
pub fn phi(r: f64, g: Affine, h: Affine) -> Option<(Affine, Affine)> {
    Some((beta(alpha(h, r)?, g)?, beta(r, h)?))
}

/// `f_λ(φ_r(g,h))` evaluated through the actions.
pub fn flow_via_actions(lambda: f64, g: Affine, h: Affine, r: f64) -> Option<f64> {
    let (x, y) = phi(r, g, h)?;
    Some(f_lambda(lambda, x, y))
}

/// `λb log|c+dr| / ((c+dr)(ac + (ad+b/c)r))`.
pub fn flow(lambda: f64, g: Affine, h: Affine, r: f64) -> f64 {
    let u = h.a + h.b * r;
    let q = g.a * h.b + g.b / h.a;
    lambda * g.b * libm::log(u.abs()) / (u * (g.a * h.a + q * r))
}

/// The flow integrand written as `λb log|d(r-p₁)| / (d(r-p₁) · q(r-p₂))` with
/// `q = ad + b/c` and the poles `p₁ = -c/d`, `p₂ = -ac/q`, so that folded
/// evaluations at `p ± t` see exactly opposite offsets.
pub fn flow_factored(lambda: f64, g: Affine, h: Affine, r: f64) -> f64 {
    let q = g.a * h.b + g.b / h.a;
    if h.b == 0.0 || q == 0.0 {
        return flow(lambda, g, h, r);
    }
    let (p1, p2) = (-h.a / h.b, -g.a * h.a / q);
    let u = h.b * (r - p1);
    lambda * g.b * libm::log(u.abs()) / (u * q * (r - p2))
}

/// Poles of `r ↦ flow(λ,g,h,r)`: `-c/d` and `-ac/(ad+b/c)`.
pub fn flow_poles(g: Affine, h: Affine) -> Vec<f64> {
    let mut out = Vec::with_capacity(2);
    if h.b != 0.0 {
        out.push(-h.a / h.b);
    }
    let q = g.a * h.b + g.b / h.a;
    if q != 0.0 {
        out.push(-g.a * h.a / q);
    }
    out
}

/// `(d/b)(ad + b/c)`; its sign selects the branch of the full-line value.
pub fn line_indicator(g: Affine, h: Affine) -> f64 {
    h.b / g.b * (g.a * h.b + g.b / h.a)
}

/// `±λπ²/2` by the sign of the indicator; zero when `b = 0`; `None` when the
/// integrand degenerates (`d = 0` or `ad + b/c = 0`).
pub fn line_value_closed(lambda: f64, g: Affine, h: Affine) -> Option<f64> {
    if g.b == 0.0 {
        return Some(0.0);
    }
    let ind = line_indicator(g, h);
    if ind == 0.0 || !ind.is_finite() {
        return None;
    }
    let v = lambda * PI * PI / 2.0;
    Some(if ind > 0.0 { v } else { -v })
}

/// `A_λ(g,h,s)`.
pub fn phase_integral(
    lambda: f64,
    g: Affine,
    h: Affine,
    s: f64,
    cfg: &QuadConfig,
) -> Result<Estimate, QuadError> {
    principal_value(|r| flow_factored(lambda, g, h, r), 0.0, s, &flow_poles(g, h), cfg)
}

/// Largest scaled disagreement between `f_λ(φ_r(g,h))` and the closed flow
/// form, relative to `|λb/((c+dr)(ac+qr))| · max(1, |log|c+dr||)` times the
/// condition numbers of the factors `c+dr` and `ac+qr`; `None` inside the
/// guard band.
pub fn flow_pointwise_error(lambda: f64, g: Affine, h: Affine, r: f64) -> Option<f64> {
    let via = flow_via_actions(lambda, g, h, r)?;
    let closed = flow(lambda, g, h, r);
    let u = h.a + h.b * r;
    let q = g.a * h.b + g.b / h.a;
    let v = g.a * h.a + q * r;
    let cond = (h.a.abs() + (h.b * r).abs()) / u.abs()
        + ((g.a * h.a).abs() + (q * r).abs()) / v.abs();
    let scale =
        (lambda * g.b / (u * v)).abs() * libm::log(u.abs()).abs().max(1.0) * cond;
    if scale == 0.0 {
        return Some((via - closed).abs());
    }
    Some((via - closed).abs() / scale)
}

/// Full-line principal value with its prerequisites.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LineIntegral {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    /// `±λπ²/2`, or `None` for a degenerate integrand.
    pub closed: Option<f64>,
    /// Worst pointwise disagreement of the integrand with the closed flow form.
    pub pointwise_error: f64,
}

/// Pointwise closed-form tolerance used as a precondition of the line integral.
pub const POINTWISE_TOL: f64 = 1e-12;

/// `PV ∫_ℝ f_λ(φ_r(g,h)) dr`, after checking the integrand pointwise at 48
/// abscissae against the closed flow form.
pub fn pv_line_integral(
    lambda: f64,
    g: Affine,
    h: Affine,
    cfg: &QuadConfig,
) -> Result<LineIntegral, CocycleError> {
    let poles = flow_poles(g, h);
    let scale = poles.iter().fold(1.0f64, |m, p| m.max(p.abs()));
    let mut worst = 0.0f64;
    for k in 0..48 {
        let theta = -PI / 2.0 + PI * (k as f64 + 0.37) / 48.0;
        let r = scale * libm::tan(theta);
        if let Some(e) = flow_pointwise_error(lambda, g, h, r) {
            if !(e <= POINTWISE_TOL) {
                return Err(CocycleError::Pointwise {
                    r,
                    via_actions: flow_via_actions(lambda, g, h, r).unwrap_or(f64::NAN),
                    closed: flow(lambda, g, h, r),
                });
            }
            worst = worst.max(e);
        }
    }
    let e = principal_value(
        |r| flow_factored(lambda, g, h, r),
        f64::NEG_INFINITY,
        f64::INFINITY,
        &poles,
        cfg,
    )?;
    Ok(LineIntegral {
        value: e.value,
        error_estimate: e.error,
        evaluations: e.evals,
        closed: line_value_closed(lambda, g, h),
        pointwise_error: worst,
    })
}

/// Absolute residual of
/// `(1/l²) f(a,b,c,d) + f(ac, ad+b/c, l, m) = f(c,d,l,m) + f(a,b,cl, cm+d/l)`.
pub fn star1_residual(f: impl Fn(f64, f64, f64, f64) -> f64, pt: [f64; 6]) -> f64 {
    let [a, b, c, d, l, m] = pt;
    let lhs = f(a, b, c, d) / (l * l) + f(a * c, a * d + b / c, l, m);
    let rhs = f(c, d, l, m) + f(a, b, c * l, c * m + d / l);
    (lhs - rhs).abs()
}

/// `f(a,b,c,d) = (1/c²) B(a,b) + B(c,d) - B(ac, ad+b/c)`.
pub fn trivial_solution(big_b: impl Fn(f64, f64) -> f64) -> impl Fn(f64, f64, f64, f64) -> f64 {
    move |a, b, c, d| big_b(a, b) / (c * c) + big_b(c, d) - big_b(a * c, a * d + b / c)
}

pub fn f_lambda4(lambda: f64) -> impl Fn(f64, f64, f64, f64) -> f64 {
    move |a, b, c, d| f_lambda(lambda, Affine::new(a, b), Affine::new(c, d))
}

/// Arguments of the cocycle identity.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CocycleConfig {
    pub g: Affine,
    pub h: Affine,
    pub k: Affine,
    pub s: f64,
}

impl CocycleConfig {
    /// The point where `α_k(s)` blows up.
    pub fn blowup(&self) -> f64 {
        -self.k.a / self.k.b
    }

    /// Whether `s` lies beyond the blow-up of `α_k`.
    pub fn crosses_blowup(&self) -> bool {
        let p = self.blowup();
        self.k.b != 0.0 && p * self.s > 0.0 && self.s.abs() > p.abs()
    }

    /// The four integrals `(pair, upper limit)` of the identity, left side first.
    pub fn terms(&self) -> Option<[(Affine, Affine, f64); 4]> {
        let (g, h, k, s) = (self.g, self.h, self.k, self.s);
        let ak = alpha(k, s)?;
        Some([(g, h, ak), (g.mul(h), k, s), (h, k, s), (g, h.mul(k), s)])
    }

    /// Every pole of every term keeps a relative distance of at least the
    /// domain guard from both integration limits.
    pub fn in_domain(&self) -> bool {
        let Some(terms) = self.terms() else { return false };
        terms.iter().all(|&(x, y, upper)| {
            if x.b.abs() < DOMAIN_GUARD || !upper.is_finite() {
                return false;
            }
            flow_poles(x, y).iter().all(|&p| {
                let tol = DOMAIN_GUARD * p.abs().max(1.0);
                p.abs() > tol && (p - upper).abs() > tol
            })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CocycleResidual {
    /// `A(g,h,α_k(s)) + A(gh,k,s) - A(h,k,s) - A(g,hk,s)`.
    pub raw: f64,
    /// `|raw|` reduced into `[0, 2π)`.
    pub reduced: f64,
    /// Distance from `raw` to the nearest multiple of `2π`.
    pub distance: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Residual of the cocycle identity modulo `2π`.
pub fn cocycle_residual_mod2pi(
    lambda: f64,
    c: &CocycleConfig,
    cfg: &QuadConfig,
) -> Result<CocycleResidual, CocycleError> {
    let terms = c.terms().ok_or(CocycleError::Domain)?;
    let mut raw = 0.0;
    let mut err = 0.0;
    let mut evals = 0;
    for (idx, &(x, y, upper)) in terms.iter().enumerate() {
        let e = phase_integral(lambda, x, y, upper, cfg)?;
        raw += if idx < 2 { e.value } else { -e.value };
        err += e.error;
        evals += e.evals;
    }
    let reduced = reduce_mod_2pi(raw.abs());
    Ok(CocycleResidual {
        raw,
        reduced,
        distance: reduced.min(TWO_PI - reduced),
        error_estimate: err,
        evaluations: evals,
    })
}

/// `x mod 2π` in `[0, 2π)`.
pub fn reduce_mod_2pi(x: f64) -> f64 {
    let r = x - TWO_PI * libm::floor(x / TWO_PI);
    if r >= TWO_PI {
        0.0
    } else {
        r
    }
}

fn draw_g1<R: Rng>(r: &mut R) -> Affine {
    let b = r.gen_range(0.3..2.0);
    Affine::new(log_uniform(r, 0.7), if r.gen_bool(0.5) { b } else { -b })
}

/// Configurations with `s` past the blow-up of `α_k`. Each one also passes
/// the ordinary pole `-l/m` of the `(h,k)` and `(gh,k)` integrands.
pub fn crossing_bank(count: usize, seed: u64) -> (Vec<CocycleConfig>, usize) {
    let mut r = rng(seed);
    sample_accepted(&mut r, count, |r| {
        let (g, h, k) = (draw_g1(r), draw_g1(r), draw_g1(r));
        let s = -k.a / k.b * (1.0 + r.gen_range(0.05..1.5));
        let c = CocycleConfig { g, h, k, s };
        (c.in_domain() && c.crosses_blowup()).then_some(c)
    })
}

/// Configurations with `s` short of the blow-up of `α_k`.
pub fn regular_bank(count: usize, seed: u64) -> (Vec<CocycleConfig>, usize) {
    let mut r = rng(seed);
    sample_accepted(&mut r, count, |r| {
        let (g, h, k) = (draw_g1(r), draw_g1(r), draw_g1(r));
        let u: f64 = r.gen_range(-2.0..0.9);
        let s = -k.a / k.b * u;
        let c = CocycleConfig { g, h, k, s };
        (u.abs() > 0.05 && c.in_domain() && !c.crosses_blowup()).then_some(c)
    })
}

/// Settings of [`cocycle_example_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CocycleCheckConfig {
    /// `λ = 4n/π`.
    pub n: i64,
    /// Points for the pointwise, flow and functional-equation checks.
    pub samples: usize,
    /// Random `(a,b,c,d)` for the full-line value.
    pub line_points: usize,
    /// Size of each cocycle bank.
    pub bank: usize,
    pub seed: u64,
    pub quad: QuadConfig,
}

impl Default for CocycleCheckConfig {
    fn default() -> Self {
        CocycleCheckConfig {
            n: 1,
            samples: 1000,
            line_points: 100,
            bank: 20,
            seed: 0,
            quad: QuadConfig::default(),
        }
    }
}

pub fn quantized_lambda(n: i64) -> f64 {
    4.0 * n as f64 / PI
}

pub const LINE_TOL: f64 = 1e-6;
pub const COCYCLE_TOL: f64 = 1e-6;
pub const STAR1_TOL: f64 = 1e-12;
pub const FLOW_COMPOSITION_TOL: f64 = 1e-10;

fn draw_point<R: Rng>(r: &mut R) -> [f64; 6] {
    [
        log_uniform(r, 1.0),
        r.gen_range(-2.0..2.0),
        log_uniform(r, 1.0),
        r.gen_range(-2.0..2.0),
        log_uniform(r, 1.0),
        r.gen_range(-2.0..2.0),
    ]
}

fn draw_signed<R: Rng>(r: &mut R) -> Affine {
    Affine::new(log_uniform(r, 1.0), r.gen_range(-2.0..2.0))
}

/// The sampled suite for `λ = 4n/π`: integrand closed form, flow property,
/// functional equation, full-line values, and the cocycle identity on a
/// pole-crossing bank and a regular bank, with `λ = 1` as the control.
pub fn cocycle_example_check(cfg: &CocycleCheckConfig) -> ExampleReport {
    let lambda = quantized_lambda(cfg.n);
    let quad = &cfg.quad;
    let mut r = rng(cfg.seed);
    let mut rejected = 0;
    let mut values = Vec::new();

    // f_λ(φ_r(g,h)) against the closed flow form, and φ_{t+s} = φ_t ∘ φ_s.
    let mut pointwise = CheckLine::new("f_λ(φ_r(g,h)) = closed flow form", POINTWISE_TOL);
    let mut composition = CheckLine::new("φ_(t+s) = φ_t ∘ φ_s", FLOW_COMPOSITION_TOL);
    let lam = if lambda == 0.0 { 1.0 } else { lambda };
    let (pts, rej) = sample_accepted(&mut r, cfg.samples, |r| {
        let (g, h) = (draw_signed(r), draw_signed(r));
        let (s, t): (f64, f64) = (r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let pw = flow_pointwise_error(lam, g, h, s)?;
        let (x1, y1) = phi(t + s, g, h)?;
        let (xs, ys) = phi(s, g, h)?;
        let (x2, y2) = phi(t, xs, ys)?;
        let comp = rel_err_vec(&[x1.a, x1.b, y1.a, y1.b], &[x2.a, x2.b, y2.a, y2.b]);
        Some((pw, comp))
    });
    rejected += rej;
    for (pw, comp) in pts {
        pointwise.record(pw);
        composition.record(comp);
    }

    // Functional equation.
    let mut star_f = CheckLine::new("star1 residual, f_λ", STAR1_TOL);
    let mut star_t1 = CheckLine::new("star1 residual, trivial B = ab", STAR1_TOL);
    let mut star_t2 = CheckLine::new("star1 residual, trivial B = b²/a", STAR1_TOL);
    let mut star_t3 = CheckLine::new("star1 residual, trivial B = log(a) cos(b)", STAR1_TOL);
    let fl = f_lambda4(lam);
    let t1 = trivial_solution(|a, b| a * b);
    let t2 = trivial_solution(|a, b| b * b / a);
    let t3 = trivial_solution(|a, b| libm::log(a) * libm::cos(b));
    for _ in 0..cfg.samples {
        let p = draw_point(&mut r);
        star_f.record(star1_residual(&fl, p));
        star_t1.record(star1_residual(&t1, p));
        star_t2.record(star1_residual(&t2, p));
        star_t3.record(star1_residual(&t3, p));
    }
    let eps = 1e-6;
    let perturbed = |a: f64, b: f64, c: f64, d: f64| fl(a, b, c, d) + eps * b;
    let mut star_ctrl = CheckLine::exceeding("star1 residual, f_λ + εb (control)", eps * 1e-3);
    star_ctrl.record(star1_residual(perturbed, [2.0, 1.0, 3.0, 1.0, 2.0, 1.0]));

    // Full-line values.
    let mut line = CheckLine::new("full-line PV = ±λπ²/2", LINE_TOL);
    let mut line_err = 0.0f64;
    let (pts, rej) = sample_accepted(&mut r, cfg.line_points, |r| {
        let (g, h) = (draw_signed(r), draw_signed(r));
        let q = g.a * h.b + g.b / h.a;
        (g.b.abs() > 1e-3 && h.b.abs() > 1e-3 && q.abs() > 1e-3).then_some((g, h))
    });
    rejected += rej;
    for (g, h) in pts {
        match pv_line_integral(lambda, g, h, quad) {
            Ok(li) => match li.closed {
                Some(c) => {
                    line.record((li.value - c).abs());
                    line_err = line_err.max(li.error_estimate);
                }
                None => line.record_failure(),
            },
            Err(_) => line.record_failure(),
        }
    }
    values.push(("full-line PV max error estimate", line_err));

    // Cocycle identity.
    let (crossing, rej1) = crossing_bank(cfg.bank, cfg.seed ^ 0x5eed_c0c1);
    let (regular, rej2) = regular_bank(cfg.bank, cfg.seed ^ 0x5eed_0e9a);
    rejected += rej1 + rej2;
    let mut cross = CheckLine::new("cocycle residual mod 2π, λ = 4n/π, pole-crossing bank", COCYCLE_TOL);
    let mut reg = CheckLine::new("cocycle residual mod 2π, λ = 4n/π, regular bank", COCYCLE_TOL);
    let mut ctrl = CheckLine::exceeding("cocycle residual mod 2π, λ = 1, pole-crossing bank", 1.0);
    let mut quad_err = 0.0f64;
    let mut evals = 0usize;
    let mut ctrl_reduced = f64::INFINITY;
    for (bank, l, line, control) in [
        (&crossing, lambda, &mut cross, false),
        (&regular, lambda, &mut reg, false),
        (&crossing, 1.0, &mut ctrl, true),
    ] {
        for c in bank {
            match cocycle_residual_mod2pi(l, c, quad) {
                Ok(res) => {
                    line.record(res.distance);
                    if control {
                        ctrl_reduced = ctrl_reduced.min(res.reduced);
                    }
                    quad_err = quad_err.max(res.error_estimate);
                    evals += res.evaluations;
                }
                Err(_) => line.record_failure(),
            }
        }
        if bank.len() < cfg.bank {
            line.record_failure();
        }
    }
    values.push(("λ = 1 control: min |residual| mod 2π", ctrl_reduced));
    values.push(("cocycle residual max error estimate", quad_err));
    values.push(("quadrature evaluations", evals as f64));
    values.push(("lambda", lambda));

    ExampleReport {
        example: "cocycle",
        seed: cfg.seed,
        samples: cfg.samples,
        rejected,
        values,
        lines: vec![
            pointwise, composition, star_f, star_t1, star_t2, star_t3, star_ctrl, line, cross, reg,
            ctrl,
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn line_value_positive_branch() {
        let lambda = 4.0 / PI;
        let (g, h) = (Affine::new(1.0, 1.0), Affine::new(1.0, 1.0));
        assert_eq!(line_indicator(g, h), 2.0);
        let li = pv_line_integral(lambda, g, h, &q()).unwrap();
        assert!((li.value - 2.0 * PI).abs() < 1e-6, "{li:?}");
        assert!((li.closed.unwrap() - 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn line_value_negative_branch() {
        let lambda = 4.0 / PI;
        let (g, h) = (Affine::new(1.0, 1.0), Affine::new(1.0, -0.5));
        assert!(line_indicator(g, h) < 0.0);
        let li = pv_line_integral(lambda, g, h, &q()).unwrap();
        assert!((li.value + 2.0 * PI).abs() < 1e-6, "{li:?}");
    }

    #[test]
    fn factored_flow_matches_quoted_form() {
        let (g, h) = (Affine::new(1.3, -0.4), Affine::new(0.8, 1.1));
        for r in [-3.0, -0.2, 0.4, 2.5, 10.0] {
            let (x, y) = (flow(1.0, g, h, r), flow_factored(1.0, g, h, r));
            assert!((x - y).abs() <= 1e-13 * x.abs().max(1.0), "{r}: {x} {y}");
        }
    }

    #[test]
    fn negative_lambda_flips_line_value() {
        let (g, h) = (Affine::new(1.0, 1.0), Affine::new(1.0, 1.0));
        let li = pv_line_integral(-4.0 / PI, g, h, &q()).unwrap();
        assert!((li.value + 2.0 * PI).abs() < 1e-6);
        assert!((li.closed.unwrap() + 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn zero_b_gives_zero() {
        let li = pv_line_integral(1.0, Affine::new(2.0, 0.0), Affine::new(1.5, 0.7), &q()).unwrap();
        assert_eq!(li.value, 0.0);
        assert_eq!(li.closed, Some(0.0));
    }

    #[test]
    fn star1_at_fixed_point() {
        let p = [2.0, 1.0, 3.0, 1.0, 2.0, 1.0];
        assert!(star1_residual(f_lambda4(1.0), p) < 1e-12);
        assert!(star1_residual(trivial_solution(|a, b| a * b), p) < 1e-12);
        let eps = 1e-3;
        let f = f_lambda4(1.0);
        let r = star1_residual(|a, b, c, d| f(a, b, c, d) + eps * b, p);
        // ε(b/l² + ad + b/c - d - b) = 7ε/12
        assert!((r - 7.0 * eps / 12.0).abs() < 1e-12, "{r}");
    }

    #[test]
    fn reduction_mod_two_pi() {
        assert!(reduce_mod_2pi(-0.1) > 6.0);
        assert!((reduce_mod_2pi(4.0 * PI + 0.25) - 0.25).abs() < 1e-12);
        assert_eq!(reduce_mod_2pi(0.0), 0.0);
    }

    #[test]
    fn quantized_residual_vanishes_across_blowup() {
        let (bank, _) = crossing_bank(3, 1);
        for c in &bank {
            let r = cocycle_residual_mod2pi(4.0 / PI, c, &q()).unwrap();
            assert!(r.distance < 1e-6, "{c:?} {r:?}");
            // The raw jump is ±2π.
            assert!((r.raw.abs() - 2.0 * PI).abs() < 1e-6, "{r:?}");
            let bad = cocycle_residual_mod2pi(1.0, c, &q()).unwrap();
            assert!((bad.raw.abs() - PI * PI / 2.0).abs() < 1e-6, "{bad:?}");
        }
    }

    #[test]
    fn regular_residual_vanishes_for_any_lambda() {
        let (bank, _) = regular_bank(3, 2);
        for c in &bank {
            let r = cocycle_residual_mod2pi(1.0, c, &q()).unwrap();
            assert!(r.raw.abs() < 1e-6, "{c:?} {r:?}");
        }
    }
}
