use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ConformalError;
use crate::algebra::Extended;
use crate::symmetry::Vec3;

/// Point of the unit sphere x0² + x1² + x2² = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
}

impl SpherePoint {
    pub fn new(x0: f64, x1: f64, x2: f64) -> Result<Self, ConformalError> {
        let p = Self { x0, x1, x2 };
        let err = (p.norm() - 1.0).abs();
        if err <= 1e-12 {
            Ok(p)
        } else {
            Err(ConformalError::NotOnSphere(p.norm()))
        }
    }

    /// The image of ∞.
    pub const POLE: Self = Self {
        x0: -1.0,
        x1: 0.0,
        x2: 0.0,
    };

    pub fn norm(&self) -> f64 {
        (self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2).sqrt()
    }

    pub fn to_array(self) -> Vec3 {
        [self.x0, self.x1, self.x2]
    }
}

/// (x0, x1, x2) = ((1 − |z|²), 2·Re z, 2·Im z) / (1 + |z|²).
pub fn stereographic(z: Complex64) -> SpherePoint {
    let r2 = z.norm_sqr();
    if !r2.is_finite() {
        return SpherePoint::POLE;
    }
    let d = 1.0 + r2;
    SpherePoint {
        x0: (1.0 - r2) / d,
        x1: 2.0 * z.re / d,
        x2: 2.0 * z.im / d,
    }
}

/// z = (x1 + i·x2)/(1 + x0) = (1 − x0)/(x1 − i·x2); the second form is used
/// on the hemisphere x0 < 0 where 1 + x0 loses precision.
pub fn inverse_stereographic(p: SpherePoint) -> Extended {
    if p.x0 >= 0.0 {
        return Extended::Finite(Complex64::new(p.x1, p.x2) / (1.0 + p.x0));
    }
    let den = Complex64::new(p.x1, -p.x2);
    if den.norm() == 0.0 {
        return Extended::Infinity;
    }
    Extended::Finite((1.0 - p.x0) / den)
}

/// Inversion in the sphere of `radius` about `center`:
/// p ↦ c + r²·(p − c)/|p − c|².
pub fn invert_sphere3d(p: Vec3, center: Vec3, radius: f64) -> Result<Vec3, ConformalError> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(ConformalError::BadRadius(radius));
    }
    let v = [p[0] - center[0], p[1] - center[1], p[2] - center[2]];
    let d2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    if d2 == 0.0 {
        return Err(ConformalError::AtCenter);
    }
    let s = radius * radius / d2;
    Ok([center[0] + s * v[0], center[1] + s * v[1], center[2] + s * v[2]])
}
