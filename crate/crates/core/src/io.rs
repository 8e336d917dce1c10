//! Wire formats for the command-line front end.
//!
//! Readers are serde-based and accept anything serde_json parses; writers
//! emit numbers with 17 significant digits, which round-trips doubles
//! exactly and keeps output byte-identical across runs.

use crate::bundle::TransportResult;
use crate::cover::{CoverPoint, PathSpec};
use crate::error::{Error, Result};
use crate::identities::{SampleRow, SuiteReport};
use crate::tate::TateValue;
use crate::Complex;
use serde::Deserialize;

/// Format a double with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Complex as a JSON pair [re, im].
pub fn fmt_complex(z: Complex) -> String {
    format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im))
}

pub fn fmt_cover_point(p: &CoverPoint) -> String {
    format!(
        "{{\"u1\":{},\"u2\":{}}}",
        fmt_complex(p.u1()),
        fmt_complex(p.u2())
    )
}

pub fn fmt_tate(v: &TateValue) -> String {
    format!("{{\"rep\":{},\"lattice\":\"Z(2)\"}}", fmt_complex(v.rep()))
}

/// Holonomy result as `{"factor":[re,im],"deck":[n1,n2],"err":e}`.
pub fn fmt_holonomy(factor: Complex, deck: (i64, i64), err: f64) -> String {
    format!(
        "{{\"factor\":{},\"deck\":[{},{}],\"err\":{}}}",
        fmt_complex(factor),
        deck.0,
        deck.1,
        fmt_f64(err)
    )
}

pub fn fmt_transport(t: &TransportResult) -> String {
    format!(
        "{{\"factor\":{},\"deck\":[{},{}],\"gauge\":\"{}\",\"err\":{}}}",
        fmt_complex(t.factor),
        t.deck_shift.n1,
        t.deck_shift.n2,
        t.gauge,
        fmt_f64(t.err_estimate)
    )
}

pub fn fmt_suite_report(r: &SuiteReport) -> String {
    format!(
        "{{\"suite\":\"{}\",\"samples\":{},\"max_defect\":{},\"tolerance\":{},\"pass\":{},\"seed\":{}}}",
        r.suite,
        r.samples,
        fmt_f64(r.max_defect),
        fmt_f64(r.tolerance),
        r.pass,
        r.seed
    )
}

/// CSV header for suite sample dumps.
pub const SAMPLE_CSV_HEADER: &str = "suite,idx,x_re,x_im,y_re,y_im,defect";

pub fn fmt_sample_row(row: &SampleRow) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        row.suite,
        row.idx,
        fmt_f64(row.x.re),
        fmt_f64(row.x.im),
        fmt_f64(row.y.re),
        fmt_f64(row.y.im),
        fmt_f64(row.defect)
    )
}

#[derive(Deserialize)]
struct CoverPointJson {
    u1: [f64; 2],
    u2: [f64; 2],
}

/// Parse `{"u1":[re,im],"u2":[re,im]}`; the curve constraint is validated.
pub fn parse_cover_point(text: &str) -> Result<CoverPoint> {
    let raw: CoverPointJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
    CoverPoint::new(
        Complex::new(raw.u1[0], raw.u1[1]),
        Complex::new(raw.u2[0], raw.u2[1]),
    )
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum PathSpecJson {
    Polyline {
        points: Vec<[f64; 2]>,
    },
    Circle {
        center: [f64; 2],
        radius: f64,
        turns: i32,
    },
    GammaEps {
        eps: f64,
    },
}

/// Parse {"kind":"polyline"|"circle"|"gamma_eps", ...}.
pub fn parse_path_spec(text: &str) -> Result<PathSpec> {
    let raw: PathSpecJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
    let spec = match raw {
        PathSpecJson::Polyline { points } => {
            if points.is_empty() {
                return Err(Error::Domain("polyline needs at least one point".into()));
            }
            PathSpec::Polyline {
                points: points.iter().map(|p| Complex::new(p[0], p[1])).collect(),
            }
        }
        PathSpecJson::Circle {
            center,
            radius,
            turns,
        } => PathSpec::Circle {
            center: Complex::new(center[0], center[1]),
            radius,
            turns,
        },
        PathSpecJson::GammaEps { eps } => {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(Error::Domain(format!(
                    "gamma_eps needs 0 < eps < 1, got {eps}"
                )));
            }
            PathSpec::GammaEps { eps }
        }
    };
    Ok(spec)
}
