//! Enhanced Rogers dilogarithm from the flat spin Chern-Simons line bundle.
//!
//! The library works on the Z²-cover of the thrice-punctured line: points are
//! pairs `(u1, u2)` of complex logarithms constrained by `e^{u1} + e^{u2} = 1`,
//! and the deck group acts by `u_k -> u_k + 2πi n_k`. On this cover it provides
//!
//! * [`cover`] — branch management, deck actions and continuous path lifting;
//! * [`mod@li2`] — the Spence dilogarithm `Li₂` on the cut plane;
//! * [`rogers`] — the enhanced Rogers dilogarithm `L` valued in `C/Z(2)`,
//!   through two independent evaluators (closed form and path integration);
//! * [`bundle`] — connection form, parallel transport, gauge transition
//!   factors and loop holonomy of the line bundle in the `τ̂₀` trivialization;
//! * [`identities`] — batch verification suites for the monodromy, reflection,
//!   five-term and holonomy identities;
//! * [`io`] — the JSON/CSV wire formats used by the command-line front end.
//!
//! All types are immutable values and all operations are pure functions, so
//! everything is safe to share across threads.

pub mod bundle;
pub mod cover;
pub mod error;
pub mod identities;
pub mod io;
pub mod li2;
pub mod quad;
pub mod rogers;
pub mod tate;

/// Complex scalar used throughout (double precision).
pub type Complex = num_complex::Complex64;

pub use bundle::{
    connection_form, curvature, loop_holonomy, parallel_transport, rectangle_holonomy_check,
    transition_factor, SpinForm, TransportResult,
};
pub use cover::{
    deck_act, deck_decompose, lift_path, lift_principal, principal_log, BasePoint, CoverPoint,
    DeckElement, LiftedPath, PathSpec,
};
pub use error::{Error, Result};
pub use identities::{
    five_term_sum, five_term_tuple, run_suite, run_suite_detailed, FiveTuple, SampleRow, SuiteKind,
    SuiteReport, SuiteTolerances, FIVE_TERM_REFERENCE,
};
pub use li2::{li2, li2_derivative, Li2Config};
pub use quad::QuadratureConfig;
pub use rogers::{
    eval_l_closed, eval_l_closed_with, eval_l_path, f_dilog, monodromy_delta, phi, phi_with,
    reflection_defect, Normalization,
};
pub use tate::TateValue;

/// Default numerical tolerances, shared across modules.
pub mod tol {
    /// τ_curve: admissible defect of the curve constraint `e^{u1} + e^{u2} = 1`.
    pub const CURVE_TOL: f64 = 1e-12;
    /// τ_excl: exclusion margin around the punctures z = 0 and z = 1 and
    /// around branch cuts, large enough to keep log derivatives bounded.
    pub const EXCL_MARGIN: f64 = 1e-6;
    /// Default absolute tolerance for adaptive quadrature.
    pub const QUAD_TOL: f64 = 1e-10;
    /// Distance to a principal cut below which the closed-form evaluator
    /// defers to path integration (the chart decomposition is ill-conditioned
    /// there).
    pub const NEAR_CUT_DEFER: f64 = 1e-3;
}
