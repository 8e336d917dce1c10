//! Adaptive composite quadrature and the action integral along lifted paths.

use crate::cover::{LiftedPath, PathSpec};
use crate::error::{Error, Result};
use crate::Complex;

/// Tolerances for adaptive quadrature. `abs_tol` bounds the integral itself,
/// not any exponential applied afterwards.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_depth: 40,
        }
    }
}

impl QuadratureConfig {
    fn validate(&self) -> Result<()> {
        if self.abs_tol <= 0.0 {
            return Err(Error::Domain("abs_tol must be positive".into()));
        }
        Ok(())
    }
}

fn simpson(fa: Complex, fm: Complex, fb: Complex, h: f64) -> Complex {
    (fa + fm * 4.0 + fb) * (h / 6.0)
}

struct Adapt<'a, F> {
    f: &'a F,
    abs_tol_leaf: f64,
}

impl<F: Fn(f64) -> Complex> Adapt<'_, F> {
    /// Recursive interval halving with the Richardson-style |S₂ − S₁|/15
    /// error estimate.
    #[allow(clippy::too_many_arguments)]
    fn run(
        &self,
        a: f64,
        b: f64,
        fa: Complex,
        fm: Complex,
        fb: Complex,
        whole: Complex,
        tol: f64,
        depth: u32,
    ) -> Result<(Complex, f64)> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        let err = delta.norm() / 15.0;
        if err <= tol || (b - a) < 1e-14 {
            return Ok((left + right + delta / 15.0, err));
        }
        if depth == 0 {
            return Err(Error::Quadrature(format!(
                "interval [{a}, {b}] did not converge (residual {err:.3e})"
            )));
        }
        let half_tol = (0.5 * tol).max(self.abs_tol_leaf);
        let (vl, el) = self.run(a, m, fa, flm, fm, left, half_tol, depth - 1)?;
        let (vr, er) = self.run(m, b, fm, frm, fb, right, half_tol, depth - 1)?;
        Ok((vl + vr, el + er))
    }
}

/// Integrate a complex-valued function over [a, b] to absolute tolerance.
/// Returns the value and an error estimate.
pub fn integrate<F: Fn(f64) -> Complex>(
    f: &F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<(Complex, f64)> {
    cfg.validate()?;
    if a == b {
        return Ok((Complex::new(0.0, 0.0), 0.0));
    }
    let fa = f(a);
    let fm = f(0.5 * (a + b));
    let fb = f(b);
    let whole = simpson(fa, fm, fb, b - a);
    let adapt = Adapt {
        f,
        abs_tol_leaf: cfg.abs_tol * 1e-4,
    };
    adapt.run(a, b, fa, fm, fb, whole, cfg.abs_tol, cfg.max_depth)
}

/// ∫ (u₁ du₂ − u₂ du₁) along a lifted path, with continuous branches taken
/// from the lift. This single integral backs both the path evaluator of L
/// (scaled by ½) and parallel transport (scaled by 1/4πi and exponentiated).
pub fn action_integral(lp: &LiftedPath, cfg: &QuadratureConfig) -> Result<(Complex, f64)> {
    let one = Complex::new(1.0, 0.0);
    // Velocity is fixed per smooth piece so polyline corners never leak the
    // wrong segment slope into an endpoint sample.
    let pieces: Vec<(f64, f64, Option<Complex>)> = match lp.path() {
        PathSpec::Polyline { points } => {
            if points.len() < 2 {
                return Ok((Complex::new(0.0, 0.0), 0.0));
            }
            let nseg = points.len() - 1;
            (0..nseg)
                .map(|i| {
                    let t0 = i as f64 / nseg as f64;
                    let t1 = (i + 1) as f64 / nseg as f64;
                    (t0, t1, Some((points[i + 1] - points[i]) * nseg as f64))
                })
                .collect()
        }
        _ => vec![(0.0, 1.0, None)],
    };
    let piece_cfg = QuadratureConfig {
        abs_tol: cfg.abs_tol / pieces.len() as f64,
        max_depth: cfg.max_depth,
    };

    let mut total = Complex::new(0.0, 0.0);
    let mut err = 0.0;
    for (t0, t1, vel) in pieces {
        let integrand = |t: f64| {
            let z = lp.path().at(t);
            let zp = vel.unwrap_or_else(|| lp.path().velocity(t));
            let w = one - z;
            let (u1, u2) = lp.branch_at(t);
            let du1 = zp / z;
            let du2 = -zp / w;
            u1 * du2 - u2 * du1
        };
        let (v, e) = integrate(&integrand, t0, t1, &piece_cfg)?;
        total += v;
        err += e;
    }
    Ok((total, err))
}
