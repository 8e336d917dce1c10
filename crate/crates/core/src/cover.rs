//! The Z²-cover of the thrice-punctured line and continuous path lifting.
//!
//! Base points are z ∈ C \ {0, 1} (the second moduli coordinate is always
//! 1 − z). Cover points are pairs (u1, u2) with e^{u1} + e^{u2} = 1; the deck
//! group Z² acts by u_k ↦ u_k + 2πi n_k. Lifting a base path tracks both
//! logarithm branches by incremental argument unwrapping, refining the
//! discretization until no step can alias a branch jump.
//!
//! Branch convention: the principal logarithm has Im ∈ (−π, π], closed at π.

use crate::error::{Error, Result};
use crate::tol::{CURVE_TOL, EXCL_MARGIN};
use crate::Complex;
use std::f64::consts::{PI, TAU};
use std::ops::{Add, Neg};

/// Unwrapping threshold per accepted step, for both e^{u1} and e^{u2}.
/// π/2 (not π) guards against aliasing on coarse discretizations.
const UNWRAP_THRESHOLD: f64 = PI / 2.0;
/// Total sample budget for one lift.
const MAX_LIFT_SAMPLES: usize = 4_000_000;
/// Smallest parameter interval the refinement may produce.
const MIN_STEP: f64 = 1e-13;

fn check_finite(z: Complex, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} has non-finite components")))
    }
}

/// Principal complex logarithm with Im ∈ (−π, π].
pub fn principal_log(z: Complex) -> Result<Complex> {
    check_finite(z, "log argument")?;
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("log of zero".into()));
    }
    let mut w = z.ln();
    // atan2 maps the negative real axis with -0.0 imaginary part to -π.
    if w.im == -PI {
        w.im = PI;
    }
    Ok(w)
}

/// Distance from z to the union of the two principal cuts
/// (−∞, 0] ∪ [1, ∞) of the chart (Log z, Log(1−z)).
pub fn distance_to_cuts(z: Complex) -> f64 {
    let to_left = if z.re <= 0.0 { z.im.abs() } else { z.norm() };
    let to_right = if z.re >= 1.0 {
        z.im.abs()
    } else {
        (z - Complex::new(1.0, 0.0)).norm()
    };
    to_left.min(to_right)
}

/// True when z lies exactly on a principal cut (−∞, 0] ∪ [1, ∞).
pub fn on_principal_cut(z: Complex) -> bool {
    z.im == 0.0 && (z.re <= 0.0 || z.re >= 1.0)
}

/// Distance from the segment [a, b] to the point q.
fn segment_point_distance(a: Complex, b: Complex, q: Complex) -> f64 {
    let v = b - a;
    let len2 = v.norm_sqr();
    if len2 == 0.0 {
        return (q - a).norm();
    }
    let t = ((q - a).re * v.re + (q - a).im * v.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (q - (a + v * t)).norm()
}

/// Distance from the segment [a, b] to the nearer puncture (0 or 1).
pub fn segment_puncture_distance(a: Complex, b: Complex) -> f64 {
    let zero = Complex::new(0.0, 0.0);
    let one = Complex::new(1.0, 0.0);
    segment_point_distance(a, b, zero).min(segment_point_distance(a, b, one))
}

/// A point of the punctured base: z ∉ {0, 1} within the exclusion margin.
/// Encodes (μ1, μ2) with μ1 = z and μ2 = 1 − z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasePoint {
    z: Complex,
}

impl BasePoint {
    pub fn new(z: Complex) -> Result<Self> {
        Self::with_margin(z, EXCL_MARGIN)
    }

    pub fn with_margin(z: Complex, margin: f64) -> Result<Self> {
        check_finite(z, "base point")?;
        if z.norm() <= margin || (z - Complex::new(1.0, 0.0)).norm() <= margin {
            return Err(Error::Domain(format!(
                "base point {z} within margin {margin} of a puncture"
            )));
        }
        Ok(Self { z })
    }

    pub fn z(&self) -> Complex {
        self.z
    }

    /// The derived second coordinate μ2 = 1 − z.
    pub fn mu2(&self) -> Complex {
        Complex::new(1.0, 0.0) - self.z
    }
}

/// A point (u1, u2) of the cover, constrained by e^{u1} + e^{u2} = 1.
/// Violating inputs are rejected at construction, never repaired.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverPoint {
    u1: Complex,
    u2: Complex,
}

impl CoverPoint {
    pub fn new(u1: Complex, u2: Complex) -> Result<Self> {
        Self::with_curve_tol(u1, u2, CURVE_TOL)
    }

    pub fn with_curve_tol(u1: Complex, u2: Complex, tol: f64) -> Result<Self> {
        check_finite(u1, "u1")?;
        check_finite(u2, "u2")?;
        let defect = Self::curve_defect(u1, u2);
        if defect > tol {
            return Err(Error::Domain(format!(
                "curve constraint violated: |e^u1 + e^u2 - 1| = {defect:.3e} > {tol:.3e}"
            )));
        }
        Ok(Self { u1, u2 })
    }

    /// |e^{u1} + e^{u2} − 1|.
    pub fn curve_defect(u1: Complex, u2: Complex) -> f64 {
        (u1.exp() + u2.exp() - Complex::new(1.0, 0.0)).norm()
    }

    pub(crate) fn new_unchecked(u1: Complex, u2: Complex) -> Self {
        Self { u1, u2 }
    }

    pub fn u1(&self) -> Complex {
        self.u1
    }

    pub fn u2(&self) -> Complex {
        self.u2
    }

    /// Projection to the base: z = e^{u1}.
    pub fn base(&self) -> Complex {
        self.u1.exp()
    }

    /// The swapped point (u2, u1); valid since the constraint is symmetric.
    pub fn swap(&self) -> CoverPoint {
        CoverPoint {
            u1: self.u2,
            u2: self.u1,
        }
    }
}

/// A deck transformation (n1, n2) acting by u_k ↦ u_k + 2πi n_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct DeckElement {
    pub n1: i64,
    pub n2: i64,
}

impl DeckElement {
    pub fn new(n1: i64, n2: i64) -> Self {
        Self { n1, n2 }
    }

    pub fn is_identity(&self) -> bool {
        self.n1 == 0 && self.n2 == 0
    }
}

impl Add for DeckElement {
    type Output = DeckElement;
    fn add(self, rhs: DeckElement) -> DeckElement {
        DeckElement::new(self.n1 + rhs.n1, self.n2 + rhs.n2)
    }
}

impl Neg for DeckElement {
    type Output = DeckElement;
    fn neg(self) -> DeckElement {
        DeckElement::new(-self.n1, -self.n2)
    }
}

/// Apply the deck transformation: (u1 + 2πi n1, u2 + 2πi n2).
pub fn deck_act(n: DeckElement, p: &CoverPoint) -> CoverPoint {
    CoverPoint::new_unchecked(
        p.u1() + Complex::new(0.0, TAU * n.n1 as f64),
        p.u2() + Complex::new(0.0, TAU * n.n2 as f64),
    )
}

/// Branch index k such that y − 2πk ∈ (−π, π].
fn branch_index(y: f64) -> i64 {
    ((y - PI) / TAU).ceil() as i64
}

/// Principal lift (Log z, Log(1−z)) of a base point off both cuts.
pub fn lift_principal(b: &BasePoint) -> Result<CoverPoint> {
    let z = b.z();
    if on_principal_cut(z) {
        return Err(Error::BranchCut(format!(
            "z = {z} lies on (-inf, 0] or [1, inf); use path lifting"
        )));
    }
    let u1 = principal_log(z)?;
    let u2 = principal_log(b.mu2())?;
    CoverPoint::new(u1, u2)
}

/// Write p = deck_act(n, p0) with p0 in the principal chart.
/// The round trip deck_act(n, p0) reproduces p exactly.
pub fn deck_decompose(p: &CoverPoint) -> Result<(DeckElement, CoverPoint)> {
    let z = p.base();
    if on_principal_cut(z) {
        return Err(Error::BranchCut(format!(
            "projection z = {z} lies on a principal cut"
        )));
    }
    let n = DeckElement::new(branch_index(p.u1().im), branch_index(p.u2().im));
    let p0 = CoverPoint::new_unchecked(
        p.u1() - Complex::new(0.0, TAU * n.n1 as f64),
        p.u2() - Complex::new(0.0, TAU * n.n2 as f64),
    );
    Ok((n, p0))
}

/// Parametric base paths, all on t ∈ [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub enum PathSpec {
    /// Piecewise-linear path through the given points, uniform in t.
    Polyline { points: Vec<Complex> },
    /// center + radius · e^{2πi · turns · t}; `turns` may be negative.
    Circle {
        center: Complex,
        radius: f64,
        turns: i32,
    },
    /// The loop z(t) = ε e^{2πi t}, one positive turn around z = 0.
    GammaEps { eps: f64 },
}

impl PathSpec {
    pub fn segment(a: Complex, b: Complex) -> Self {
        PathSpec::Polyline { points: vec![a, b] }
    }

    pub fn at(&self, t: f64) -> Complex {
        match self {
            PathSpec::Polyline { points } => {
                if points.len() == 1 {
                    return points[0];
                }
                let (i, s) = self.polyline_locate(t);
                points[i] + (points[i + 1] - points[i]) * s
            }
            PathSpec::Circle {
                center,
                radius,
                turns,
            } => center + Complex::from_polar(*radius, TAU * (*turns as f64) * t),
            PathSpec::GammaEps { eps } => Complex::from_polar(*eps, TAU * t),
        }
    }

    /// dz/dt; on a polyline, the velocity of the segment containing t.
    pub fn velocity(&self, t: f64) -> Complex {
        match self {
            PathSpec::Polyline { points } => {
                if points.len() == 1 {
                    return Complex::new(0.0, 0.0);
                }
                let (i, _) = self.polyline_locate(t);
                (points[i + 1] - points[i]) * (points.len() - 1) as f64
            }
            PathSpec::Circle {
                center: _,
                radius,
                turns,
            } => {
                let w = TAU * (*turns as f64);
                Complex::new(0.0, w) * Complex::from_polar(*radius, w * t)
            }
            PathSpec::GammaEps { eps } => {
                Complex::new(0.0, TAU) * Complex::from_polar(*eps, TAU * t)
            }
        }
    }

    fn polyline_locate(&self, t: f64) -> (usize, f64) {
        let PathSpec::Polyline { points } = self else {
            unreachable!()
        };
        let nseg = points.len() - 1;
        let x = (t.clamp(0.0, 1.0)) * nseg as f64;
        let i = (x.floor() as usize).min(nseg - 1);
        (i, x - i as f64)
    }

    /// Parameter values separating smooth pieces (polyline vertices).
    pub fn knots(&self) -> Vec<f64> {
        match self {
            PathSpec::Polyline { points } if points.len() > 1 => {
                let nseg = points.len() - 1;
                (0..=nseg).map(|i| i as f64 / nseg as f64).collect()
            }
            _ => vec![0.0, 1.0],
        }
    }

    /// Lower bound on the initial discretization of each smooth piece.
    ///
    /// Along a straight segment the argument seen from any point is monotone,
    /// so endpoint tests cannot alias and polylines need no floor. A circle
    /// can hide whole turns between samples whose endpoints coincide, so it
    /// gets eight initial samples per turn.
    fn min_initial_steps(&self) -> usize {
        match self {
            PathSpec::Polyline { .. } => 1,
            PathSpec::Circle { turns, .. } => 8 * (turns.unsigned_abs() as usize).max(1),
            PathSpec::GammaEps { .. } => 8,
        }
    }

    pub fn is_closed(&self) -> bool {
        (self.at(1.0) - self.at(0.0)).norm() <= 1e-12
    }

    /// Validate that no segment/arc of the path comes within `margin` of a
    /// puncture. Cheap conservative check used before lifting.
    pub fn check_punctures(&self, margin: f64) -> Result<()> {
        match self {
            PathSpec::Polyline { points } => {
                if points.is_empty() {
                    return Err(Error::Domain("empty polyline".into()));
                }
                for w in points.windows(2) {
                    let d = segment_puncture_distance(w[0], w[1]);
                    if d <= margin {
                        return Err(Error::Puncture(format!(
                            "polyline segment within {d:.3e} of a puncture"
                        )));
                    }
                }
                if points.len() == 1 {
                    let p = points[0];
                    if p.norm() <= margin || (p - Complex::new(1.0, 0.0)).norm() <= margin {
                        return Err(Error::Puncture("constant path at a puncture".into()));
                    }
                }
                Ok(())
            }
            PathSpec::Circle {
                center,
                radius,
                turns: _,
            } => {
                for q in [Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)] {
                    let d = ((center - q).norm() - radius).abs();
                    if d <= margin {
                        return Err(Error::Puncture(format!(
                            "circle passes within {d:.3e} of a puncture"
                        )));
                    }
                }
                Ok(())
            }
            PathSpec::GammaEps { eps } => {
                if *eps <= margin || (1.0 - eps).abs() <= margin {
                    Err(Error::Puncture(format!("gamma_eps with eps = {eps}")))
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// A discretized continuous lift of a base path.
///
/// Consecutive samples satisfy |Δ arg| < π/2 for both e^{u1} and e^{u2}, so
/// there are no silent branch jumps; `deck_shift` reports the winding of the
/// end point relative to the lift of the start's base point along the path.
#[derive(Debug, Clone)]
pub struct LiftedPath {
    path: PathSpec,
    samples: Vec<(f64, CoverPoint)>,
    deck_shift: DeckElement,
}

impl LiftedPath {
    pub fn path(&self) -> &PathSpec {
        &self.path
    }

    pub fn samples(&self) -> &[(f64, CoverPoint)] {
        &self.samples
    }

    pub fn start(&self) -> &CoverPoint {
        &self.samples.first().expect("non-empty lift").1
    }

    pub fn end(&self) -> &CoverPoint {
        &self.samples.last().expect("non-empty lift").1
    }

    pub fn deck_shift(&self) -> DeckElement {
        self.deck_shift
    }

    /// Continuous branch of (u1, u2) at an arbitrary parameter, anchored at
    /// the nearest sample to the left. Within one accepted step the argument
    /// moves by less than π/2, so the branch assignment is unambiguous.
    pub fn branch_at(&self, t: f64) -> (Complex, Complex) {
        let idx = match self
            .samples
            .binary_search_by(|(s, _)| s.partial_cmp(&t).expect("finite parameter"))
        {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        };
        let (t0, p0) = self.samples[idx.min(self.samples.len() - 1)];
        let z0 = self.path.at(t0);
        let w0 = Complex::new(1.0, 0.0) - z0;
        let z = self.path.at(t);
        let w = Complex::new(1.0, 0.0) - z;
        (p0.u1() + (z / z0).ln(), p0.u2() + (w / w0).ln())
    }
}

struct LiftState {
    samples: Vec<(f64, CoverPoint)>,
    m1: i64,
    m2: i64,
    z_prev: Complex,
    w_prev: Complex,
}

fn puncture_check(t: f64, z: Complex, w: Complex, margin: f64) -> Result<()> {
    if z.norm() <= margin || w.norm() <= margin {
        Err(Error::Puncture(format!(
            "path at t = {t} within {margin:.1e} of a puncture (z = {z})"
        )))
    } else {
        Ok(())
    }
}

/// One accepted or rejected step of the march: returns false when the step
/// must be bisected.
fn step_acceptable(z0: Complex, z1: Complex, w0: Complex, w1: Complex) -> bool {
    let a1 = (z1 / z0).arg().abs();
    let a2 = (w1 / w0).arg().abs();
    // The chord criterion bounds interior argument excursions on curved arcs.
    let c1 = (z1 - z0).norm() < 0.5 * z0.norm().min(z1.norm());
    let c2 = (w1 - w0).norm() < 0.5 * w0.norm().min(w1.norm());
    a1 < UNWRAP_THRESHOLD && a2 < UNWRAP_THRESHOLD && c1 && c2
}

/// Continuously lift a base path starting from a given cover point.
///
/// `steps` sets the initial uniform discretization of each smooth piece; the
/// march then bisects any step whose argument increment could alias a branch
/// jump. Fails with `Puncture` if the path approaches z ∈ {0, 1} within the
/// exclusion margin and with `Refinement` if the sample budget is exhausted.
pub fn lift_path(path: &PathSpec, start: &CoverPoint, steps: usize) -> Result<LiftedPath> {
    if steps == 0 {
        return Err(Error::Domain("steps must be positive".into()));
    }
    let z0 = path.at(0.0);
    let w0 = Complex::new(1.0, 0.0) - z0;
    let proj = start.base();
    let scale = 1.0f64.max(z0.norm());
    if (proj - z0).norm() > CURVE_TOL * scale * 8.0 {
        return Err(Error::Domain(format!(
            "start point projects to {proj}, not to path(0) = {z0}"
        )));
    }
    puncture_check(0.0, z0, w0, EXCL_MARGIN)?;

    let m1_0 = ((start.u1().im - principal_log(z0)?.im) / TAU).round() as i64;
    let m2_0 = ((start.u2().im - principal_log(w0)?.im) / TAU).round() as i64;

    let mut st = LiftState {
        samples: vec![(0.0, *start)],
        m1: m1_0,
        m2: m2_0,
        z_prev: z0,
        w_prev: w0,
    };

    // Initial grid: knot spans subdivided `steps` times each, with a floor
    // that prevents whole turns of a circle from hiding between samples.
    let steps = steps.max(path.min_initial_steps());
    let knots = path.knots();
    let mut targets = Vec::new();
    for pair in knots.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        for k in 1..=steps {
            targets.push(a + (b - a) * k as f64 / steps as f64);
        }
    }

    let mut t_prev = 0.0f64;
    // Pending targets processed front to back; bisection pushes midpoints.
    let mut pending: Vec<f64> = targets.into_iter().rev().collect();
    while let Some(t_next) = pending.pop() {
        let z_next = path.at(t_next);
        let w_next = Complex::new(1.0, 0.0) - z_next;
        puncture_check(t_next, z_next, w_next, EXCL_MARGIN)?;

        if !step_acceptable(st.z_prev, z_next, st.w_prev, w_next) {
            if t_next - t_prev < MIN_STEP {
                return Err(Error::Refinement(format!(
                    "step at t = {t_prev} cannot be refined below {MIN_STEP}"
                )));
            }
            pending.push(t_next);
            pending.push(0.5 * (t_prev + t_next));
            continue;
        }

        // Accept: update branch integers from the principal-log jump.
        let p1_prev = principal_log(st.z_prev)?.im;
        let p1_next = principal_log(z_next)?.im;
        let d1 = p1_next - p1_prev;
        if d1 > PI {
            st.m1 -= 1;
        } else if d1 <= -PI {
            st.m1 += 1;
        }
        let p2_prev = principal_log(st.w_prev)?.im;
        let p2_next = principal_log(w_next)?.im;
        let d2 = p2_next - p2_prev;
        if d2 > PI {
            st.m2 -= 1;
        } else if d2 <= -PI {
            st.m2 += 1;
        }

        let u1 = principal_log(z_next)? + Complex::new(0.0, TAU * st.m1 as f64);
        let u2 = principal_log(w_next)? + Complex::new(0.0, TAU * st.m2 as f64);
        let tol = CURVE_TOL * 1.0f64.max(z_next.norm() + w_next.norm());
        let p = CoverPoint::with_curve_tol(u1, u2, tol)?;
        st.samples.push((t_next, p));
        if st.samples.len() > MAX_LIFT_SAMPLES {
            return Err(Error::Refinement(format!(
                "lift exceeded {MAX_LIFT_SAMPLES} samples"
            )));
        }
        t_prev = t_next;
        st.z_prev = z_next;
        st.w_prev = w_next;
    }

    // For a closed base loop the shift is pinned by end = deck_act(n, start);
    // rounding the accumulated phase difference is immune to the boundary
    // flip a loop based exactly on a cut can produce in the crossing count.
    let end = st.samples.last().expect("non-empty lift").1;
    let deck_shift = if path.is_closed() {
        DeckElement::new(
            ((end.u1().im - start.u1().im) / TAU).round() as i64,
            ((end.u2().im - start.u2().im) / TAU).round() as i64,
        )
    } else {
        DeckElement::new(st.m1 - m1_0, st.m2 - m2_0)
    };
    Ok(LiftedPath {
        path: path.clone(),
        samples: st.samples,
        deck_shift,
    })
}
