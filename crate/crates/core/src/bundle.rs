//! Parallel transport and holonomy of the Chern-Simons line bundle in the
//! τ̂₀ trivialization.
//!
//! The connection form relative to τ̂₀ is ω = (1/4πi)(u₁ du₂ − u₂ du₁);
//! transport along a lifted path is exp(−∫ω) (holonomy is the exponential of
//! minus the integral). A closed base loop lifts to a path between two deck
//! translates, and the gauge transition between the translates contributes
//! the factor (−1)^{σ(n)} exp((n₁u₂ − n₂u₁)/2) with σ the spin quadratic
//! form. Over the constrained curve the bundle is flat with trivial holonomy,
//! so transport × transition ≡ 1; over the unconstrained (u₁, u₂)-plane the
//! curvature is (1/2πi) du₁ ∧ du₂, checked against Stokes on rectangles.

use crate::cover::{lift_path, CoverPoint, DeckElement, LiftedPath, PathSpec};
use crate::error::{Error, Result};
use crate::quad::{action_integral, integrate, QuadratureConfig};
use crate::Complex;
use std::f64::consts::TAU;

/// Initial discretization for internally lifted loops.
const LIFT_STEPS: usize = 16;

/// A quadratic refinement σ(n₁, n₂) = n₁n₂ + a·n₁ + b·n₂ mod 2 of the
/// intersection pairing. The default (a, b) = (0, 0) is the spin structure
/// with trivial holonomy; the other three are available for experimentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SpinForm {
    pub a: bool,
    pub b: bool,
}

impl SpinForm {
    pub fn new(a: bool, b: bool) -> Self {
        Self { a, b }
    }

    /// σ(n) ∈ {0, 1}.
    pub fn sigma(&self, n: DeckElement) -> u8 {
        let q = n.n1 * n.n2 + (self.a as i64) * n.n1 + (self.b as i64) * n.n2;
        q.rem_euclid(2) as u8
    }

    pub fn sign(&self, n: DeckElement) -> f64 {
        if self.sigma(n) == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

/// Parallel transport coefficient in the τ̂₀ gauge.
#[derive(Debug, Clone, Copy)]
pub struct TransportResult {
    pub factor: Complex,
    pub deck_shift: DeckElement,
    /// Trivialization tag; transport is always reported in this gauge.
    pub gauge: &'static str,
    /// Error estimate on the underlying integral (not on the exponential).
    pub err_estimate: f64,
}

/// Coefficients (c₁, c₂) of ω = c₁ du₁ + c₂ du₂:
/// c₁ = −u₂/4πi, c₂ = u₁/4πi.
pub fn connection_form(p: &CoverPoint) -> (Complex, Complex) {
    let inv_4pi_i = Complex::new(0.0, -1.0 / (2.0 * TAU)); // 1/(4πi)
    (-p.u2() * inv_4pi_i, p.u1() * inv_4pi_i)
}

/// Constant coefficient of the curvature dω = (1/2πi) du₁ ∧ du₂.
pub fn curvature() -> Complex {
    Complex::new(0.0, -1.0 / TAU)
}

/// Gauge transition relating τ̂₀ at deck_act(n, p) to τ̂₀ at p:
/// (−1)^{σ(n)} exp((n₁u₂ − n₂u₁)/2). The exponent is invariant under deck
/// translation of p by n itself, so either endpoint of a lifted loop gives
/// the same factor.
pub fn transition_factor(n: DeckElement, p_end: &CoverPoint, spin: SpinForm) -> Complex {
    let exponent = 0.5 * (p_end.u2() * n.n1 as f64 - p_end.u1() * n.n2 as f64);
    spin.sign(n) * exponent.exp()
}

/// exp(−∫ω) along a lifted path, by adaptive quadrature on the action
/// integral ∫(u₁du₂ − u₂du₁). Succeeds only when the accumulated error
/// estimate on the integral stays within the requested tolerance.
pub fn parallel_transport(lp: &LiftedPath, quad: &QuadratureConfig) -> Result<TransportResult> {
    let (action, err) = action_integral(lp, quad)?;
    if err > quad.abs_tol {
        return Err(Error::Quadrature(format!(
            "accumulated error estimate {err:.3e} exceeds {:.3e}",
            quad.abs_tol
        )));
    }
    // −(1/4πi)·A = i·A/(4π)
    let factor = (action * Complex::new(0.0, 1.0 / (2.0 * TAU))).exp();
    Ok(TransportResult {
        factor,
        deck_shift: lp.deck_shift(),
        gauge: "tau0-hat",
        err_estimate: err,
    })
}

/// Holonomy of the bundle around a closed base loop: lift, transport, and
/// correct by the gauge transition of the accumulated deck shift. For any
/// loop avoiding the punctures this is 1 with the default spin form.
pub fn loop_holonomy(
    loop_spec: &PathSpec,
    start: &CoverPoint,
    quad: &QuadratureConfig,
    spin: SpinForm,
) -> Result<Complex> {
    if !loop_spec.is_closed() {
        return Err(Error::Domain("loop specification is not closed".into()));
    }
    let lp = lift_path(loop_spec, start, LIFT_STEPS)?;
    let transport = parallel_transport(&lp, quad)?;
    Ok(transport.factor * transition_factor(lp.deck_shift(), lp.end(), spin))
}

/// Compare exp(−∮ω) around the rectangle [u₁, u₁+a] × [u₂, u₂+b] in the full
/// (u₁, u₂)-plane (no curve constraint, bundle not flat) against the Stokes
/// prediction exp(−ab/2πi). Returns (numeric, analytic).
pub fn rectangle_holonomy_check(
    u0: (Complex, Complex),
    a: f64,
    b: f64,
    quad: &QuadratureConfig,
) -> Result<(Complex, Complex)> {
    let (u1_0, u2_0) = u0;
    let inv_4pi_i = Complex::new(0.0, -1.0 / (2.0 * TAU));
    // Sides traversed counterclockwise; ω = c₁du₁ + c₂du₂ pulled back to s.
    type Side = (
        Box<dyn Fn(f64) -> (Complex, Complex)>,
        Complex, // du₁/ds
        Complex, // du₂/ds
    );
    let sides: [Side; 4] = [
        (
            Box::new(move |s| (u1_0 + Complex::new(a * s, 0.0), u2_0)),
            Complex::new(a, 0.0),
            Complex::new(0.0, 0.0),
        ),
        (
            Box::new(move |s| (u1_0 + Complex::new(a, 0.0), u2_0 + Complex::new(b * s, 0.0))),
            Complex::new(0.0, 0.0),
            Complex::new(b, 0.0),
        ),
        (
            Box::new(move |s| {
                (
                    u1_0 + Complex::new(a * (1.0 - s), 0.0),
                    u2_0 + Complex::new(b, 0.0),
                )
            }),
            Complex::new(-a, 0.0),
            Complex::new(0.0, 0.0),
        ),
        (
            Box::new(move |s| (u1_0, u2_0 + Complex::new(b * (1.0 - s), 0.0))),
            Complex::new(0.0, 0.0),
            Complex::new(-b, 0.0),
        ),
    ];

    let side_cfg = QuadratureConfig {
        abs_tol: quad.abs_tol / 4.0,
        max_depth: quad.max_depth,
    };
    let mut total = Complex::new(0.0, 0.0);
    for (pos, du1, du2) in &sides {
        let integrand = |s: f64| {
            let (u1, u2) = pos(s);
            let c1 = -u2 * inv_4pi_i;
            let c2 = u1 * inv_4pi_i;
            c1 * du1 + c2 * du2
        };
        let (v, _) = integrate(&integrand, 0.0, 1.0, &side_cfg)?;
        total += v;
    }
    let numeric = (-total).exp();
    let analytic = (-Complex::new(a * b, 0.0) * curvature()).exp();
    Ok((numeric, analytic))
}
