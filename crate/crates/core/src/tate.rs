//! Values in C/Z(2), the complex numbers modulo the Tate lattice 4π²Z.

use crate::Complex;
use std::f64::consts::PI;
use std::ops::{Add, Sub};

/// The lattice generator of Z(2) = (2πi)² Z = 4π² Z.
pub const Z2_LATTICE: f64 = 4.0 * PI * PI;

/// A complex number regarded modulo Z(2) = 4π²Z, with a chosen representative.
///
/// The raw representative is kept as-is and only reduced at comparison time,
/// which preserves continuity of representatives along paths. Two values are
/// equal when their difference, shifted by the best real multiple of 4π², is
/// within tolerance; the minimizing multiple is unique whenever the tolerance
/// is below 2π².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TateValue {
    rep: Complex,
}

impl TateValue {
    pub fn new(rep: Complex) -> Self {
        Self { rep }
    }

    pub fn rep(&self) -> Complex {
        self.rep
    }

    /// Representative with real part reduced to [−2π², 2π²).
    pub fn reduced(&self) -> Complex {
        let k = (self.rep.re / Z2_LATTICE).round();
        let mut r = self.rep - Complex::new(Z2_LATTICE * k, 0.0);
        if r.re >= Z2_LATTICE / 2.0 {
            r.re -= Z2_LATTICE;
        } else if r.re < -Z2_LATTICE / 2.0 {
            r.re += Z2_LATTICE;
        }
        r
    }

    /// Distance to `other` modulo Z(2): |self − other − 4π²k| minimized over
    /// integer k.
    pub fn defect(&self, other: &TateValue) -> f64 {
        let d = self.rep - other.rep;
        let k = (d.re / Z2_LATTICE).round();
        (d - Complex::new(Z2_LATTICE * k, 0.0)).norm()
    }

    pub fn approx_eq(&self, other: &TateValue, tol: f64) -> bool {
        self.defect(other) <= tol
    }
}

impl Add<Complex> for TateValue {
    type Output = TateValue;
    fn add(self, rhs: Complex) -> TateValue {
        TateValue::new(self.rep + rhs)
    }
}

impl Add for TateValue {
    type Output = TateValue;
    fn add(self, rhs: TateValue) -> TateValue {
        TateValue::new(self.rep + rhs.rep)
    }
}

impl Sub for TateValue {
    type Output = TateValue;
    fn sub(self, rhs: TateValue) -> TateValue {
        TateValue::new(self.rep - rhs.rep)
    }
}
