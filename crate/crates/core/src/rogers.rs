//! The enhanced Rogers dilogarithm L: cover → C/Z(2).
//!
//! Two independent evaluators are provided. The closed form combines the Li₂
//! kernel with the principal-chart decomposition and the deck transformation
//! law; the path evaluator integrates dL = ½(u₁ du₂ − u₂ du₁) along an
//! automatically constructed lifted path from the normalization anchor,
//! realizing deck shifts by genuine winding loops (so agreement of the two is
//! a real test of the monodromy law, not a restatement of it).
//!
//! Normalization: L(−log 2, −log 2) = π²/12, which pins the additive constant
//! the flat-section construction leaves free.

use crate::cover::{
    deck_decompose, distance_to_cuts, lift_path, segment_puncture_distance, CoverPoint,
    DeckElement, PathSpec,
};
use crate::error::{Error, Result};
use crate::li2::{li2, Li2Config};
use crate::quad::{action_integral, QuadratureConfig};
use crate::tate::TateValue;
use crate::tol::{CURVE_TOL, EXCL_MARGIN, NEAR_CUT_DEFER};
use crate::Complex;
use std::f64::consts::{LN_2, PI, TAU};

/// Initial discretization per smooth piece when the path evaluator lifts its
/// own paths.
const LIFT_STEPS: usize = 16;
/// Radius of the winding octagons around each puncture.
const LOOP_RADIUS: f64 = 0.35;

/// The anchor pinning the additive constant of L.
#[derive(Debug, Clone, Copy)]
pub struct Normalization {
    anchor: CoverPoint,
    anchor_value: Complex,
}

impl Normalization {
    /// Anchor (−log 2, −log 2) with value Li₂(½) + ½ log²2 = π²/12.
    pub fn standard() -> Self {
        let u = Complex::new(-LN_2, 0.0);
        let anchor = CoverPoint::new(u, u).expect("anchor lies on the curve");
        let li = li2(Complex::new(0.5, 0.0), &Li2Config::default())
            .expect("1/2 is interior to the series disk");
        let anchor_value = li + 0.5 * u * u;
        Self {
            anchor,
            anchor_value,
        }
    }

    pub fn anchor(&self) -> &CoverPoint {
        &self.anchor
    }

    pub fn anchor_value(&self) -> Complex {
        self.anchor_value
    }
}

impl Default for Normalization {
    fn default() -> Self {
        Self::standard()
    }
}

/// Monodromy increment of Thm. 11: πi(n₁u₂ − n₂u₁) + 2π²n₁n₂ at the given
/// point, so that L(deck_act(n, p)) ≡ L(p) + monodromy_delta(n, p) mod Z(2).
pub fn monodromy_delta(n: DeckElement, p: &CoverPoint) -> TateValue {
    let i_pi = Complex::new(0.0, PI);
    let delta = i_pi * (p.u2() * n.n1 as f64 - p.u1() * n.n2 as f64)
        + Complex::new(2.0 * PI * PI * (n.n1 * n.n2) as f64, 0.0);
    TateValue::new(delta)
}

/// Closed-form evaluator: decompose p = deck_act(n, p₀) with p₀ principal and
/// return Li₂(z) + ½u₁⁰u₂⁰ + πi(n₁u₂⁰ − n₂u₁⁰) + 2π²n₁n₂.
///
/// Within 10⁻³ of either principal cut the chart decomposition is
/// ill-conditioned and evaluation defers to the path evaluator.
pub fn eval_l_closed(p: &CoverPoint) -> Result<TateValue> {
    eval_l_closed_with(p, &Li2Config::default())
}

/// [`eval_l_closed`] with an explicit kernel configuration.
pub fn eval_l_closed_with(p: &CoverPoint, li2_cfg: &Li2Config) -> Result<TateValue> {
    let z = p.base();
    if distance_to_cuts(z) < NEAR_CUT_DEFER {
        return eval_l_path(p, &QuadratureConfig::default());
    }
    let (n, p0) = deck_decompose(p)?;
    let z0 = p0.u1().exp();
    let li = li2(z0, li2_cfg)?;
    let principal = li + 0.5 * p0.u1() * p0.u2();
    Ok(TateValue::new(principal) + monodromy_delta(n, &p0).rep())
}

/// Insert detour waypoints so that no leg comes within the exclusion margin
/// of a puncture. The i/2 waypoint is tried first, then a waypoint below the
/// punctures, then both.
fn route(from: Complex, to: Complex) -> Result<Vec<Complex>> {
    let wp_hi = Complex::new(0.0, 0.5);
    let wp_lo = Complex::new(0.5, -0.75);
    let candidates: [&[Complex]; 5] = [&[], &[wp_hi], &[wp_lo], &[wp_hi, wp_lo], &[wp_lo, wp_hi]];
    'outer: for mid in candidates {
        let mut pts = Vec::with_capacity(mid.len() + 2);
        pts.push(from);
        pts.extend_from_slice(mid);
        pts.push(to);
        for w in pts.windows(2) {
            if w[0] != w[1] && segment_puncture_distance(w[0], w[1]) <= EXCL_MARGIN {
                continue 'outer;
            }
        }
        return Ok(pts);
    }
    Err(Error::Puncture(format!(
        "no admissible route from {from} to {to}"
    )))
}

/// Polyline realizing the deck shift m by |m₁| winding loops around 0 and
/// |m₂| around 1, based at z_t. Out-and-back legs cancel homotopically, so
/// the loop contributes exactly m to the deck shift of the lift.
fn winding_loops(z_t: Complex, m: DeckElement) -> Result<Vec<Complex>> {
    let mut pts = vec![z_t];
    let entry_dir = Complex::from_polar(LOOP_RADIUS, -PI / 3.0);
    for (q, count) in [
        (Complex::new(0.0, 0.0), m.n1),
        (Complex::new(1.0, 0.0), m.n2),
    ] {
        if count == 0 {
            continue;
        }
        let entry = q + entry_dir;
        let leg = route(z_t, entry)?;
        pts.extend_from_slice(&leg[1..]);
        let sign = count.signum() as f64;
        for _ in 0..count.unsigned_abs() {
            for k in 1..=8 {
                let ang = -PI / 3.0 + sign * TAU * k as f64 / 8.0;
                pts.push(q + Complex::from_polar(LOOP_RADIUS, ang));
            }
        }
        let mut back = leg;
        back.reverse();
        pts.extend_from_slice(&back[1..]);
    }
    Ok(pts)
}

/// Path evaluator: anchor_value + ∫ dL along a lifted path from the anchor to
/// p, with dL = ½(u₁ du₂ − u₂ du₁). The path runs from z = ½ to the
/// projection of p (detouring around punctures when necessary) and then
/// winds around the punctures until the lift lands on p itself.
pub fn eval_l_path(p: &CoverPoint, quad: &QuadratureConfig) -> Result<TateValue> {
    let norm = Normalization::standard();
    let z_t = p.base();
    let w_t = Complex::new(1.0, 0.0) - z_t;
    if z_t.norm() <= EXCL_MARGIN || w_t.norm() <= EXCL_MARGIN {
        return Err(Error::Puncture(format!(
            "projection {z_t} within the exclusion margin of a puncture"
        )));
    }

    let base = PathSpec::Polyline {
        points: route(Complex::new(0.5, 0.0), z_t)?,
    };
    let first = lift_path(&base, norm.anchor(), LIFT_STEPS)?;
    let mut action = Complex::new(0.0, 0.0);
    let (a, _) = action_integral(&first, quad)?;
    action += a;

    let end = *first.end();
    let m = DeckElement::new(
        ((p.u1() - end.u1()).im / TAU).round() as i64,
        ((p.u2() - end.u2()).im / TAU).round() as i64,
    );
    let reach_tol = 1e-8 * (1.0 + z_t.norm() + w_t.norm());
    let final_end = if m.is_identity() {
        end
    } else {
        let loops = PathSpec::Polyline {
            points: winding_loops(z_t, m)?,
        };
        let second = lift_path(&loops, &end, LIFT_STEPS)?;
        let (a, _) = action_integral(&second, quad)?;
        action += a;
        *second.end()
    };
    let miss = (final_end.u1() - p.u1()).norm() + (final_end.u2() - p.u2()).norm();
    if miss > reach_tol {
        return Err(Error::Domain(format!(
            "constructed path missed the target lift by {miss:.3e}"
        )));
    }
    Ok(TateValue::new(norm.anchor_value() + 0.5 * action))
}

/// F(u₂) = Li₂(1 − e^{u₂}) mod Z(2), the analytic continuation along paths in
/// the u₂-plane, computed as eval_L(p) − ½u₁u₂ for a lift p with second
/// coordinate u₂ (independent of the chosen lift).
pub fn f_dilog(u2: Complex) -> Result<TateValue> {
    let k = (u2.im / TAU).round();
    if (u2 - Complex::new(0.0, TAU * k)).norm() <= EXCL_MARGIN {
        return Err(Error::Domain(format!(
            "u2 = {u2} within the margin of a pole in Z(1)"
        )));
    }
    let z = Complex::new(1.0, 0.0) - u2.exp();
    let u1 = crate::cover::principal_log(z)?;
    let tol = CURVE_TOL * 1.0f64.max(4.0 * (z.norm() + u2.exp().norm()));
    let p = CoverPoint::with_curve_tol(u1, u2, tol)?;
    let l = eval_l_closed(&p)?;
    Ok(TateValue::new(l.rep() - 0.5 * u1 * u2))
}

/// φ = exp(L / 2πi), single-valued on the cover: the Z(2) ambiguity of L is
/// annihilated by the exponential.
pub fn phi(p: &CoverPoint) -> Result<Complex> {
    phi_with(p, &Li2Config::default())
}

/// [`phi`] with an explicit kernel configuration.
pub fn phi_with(p: &CoverPoint, li2_cfg: &Li2Config) -> Result<Complex> {
    let l = eval_l_closed_with(p, li2_cfg)?;
    // 1/(2πi) = −i/(2π)
    Ok((l.rep() * Complex::new(0.0, -1.0 / TAU)).exp())
}

/// L(u₁, u₂) + L(u₂, u₁). Constant (≡ π²/6 mod Z(2)) over the cover.
pub fn reflection_defect(p: &CoverPoint) -> Result<TateValue> {
    let a = eval_l_closed(p)?;
    let b = eval_l_closed(&p.swap())?;
    Ok(a + b)
}
