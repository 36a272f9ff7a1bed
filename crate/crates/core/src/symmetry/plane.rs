use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::SymmetryError;

/// Tolerance for classifying parameters (k = 1, φ = 0).
const PARAM_EPS: f64 = 1e-12;

/// Wrap an angle into (−π, π].
pub fn normalize_angle(a: f64) -> f64 {
    let x = a.rem_euclid(TAU);
    if x > PI {
        x - TAU
    } else {
        x
    }
}

/// Shubnikov operation type of a plane similarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimilarityKind {
    Identity,
    /// Homothety.
    K,
    /// Spiral motion (a pure rotation when k = 1).
    L,
    /// Homothetic reflection (a mirror when k = 1).
    M,
}

/// Plane similarity z ↦ O + k·e^{iφ}·R(z − O), where R is the identity or
/// the reflection in the line through O at angle `axis_angle`.
///
/// Homothety and the motion commute about a shared centre, so the order in
/// which they are applied is irrelevant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Similarity2D {
    k: f64,
    phi: f64,
    reflect: bool,
    axis_angle: f64,
    center: Complex64,
}

impl Similarity2D {
    pub fn new(k: f64, phi: f64, reflect: bool, axis_angle: f64, center: Complex64) -> Result<Self, SymmetryError> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(SymmetryError::NonPositiveCoefficient(k));
        }
        if !phi.is_finite() || !axis_angle.is_finite() || !center.re.is_finite() || !center.im.is_finite() {
            return Err(SymmetryError::NonFinite);
        }
        Ok(Self {
            k,
            phi: normalize_angle(phi),
            reflect,
            axis_angle: if reflect { normalize_angle(axis_angle) } else { 0.0 },
            center,
        })
    }

    pub fn identity(center: Complex64) -> Self {
        Self {
            k: 1.0,
            phi: 0.0,
            reflect: false,
            axis_angle: 0.0,
            center,
        }
    }

    /// K: homothety with coefficient k.
    pub fn homothety(k: f64, center: Complex64) -> Result<Self, SymmetryError> {
        Self::new(k, 0.0, false, 0.0, center)
    }

    /// L: rotation by φ combined with homothety k.
    pub fn spiral(k: f64, phi: f64, center: Complex64) -> Result<Self, SymmetryError> {
        Self::new(k, phi, false, 0.0, center)
    }

    pub fn rotation(phi: f64, center: Complex64) -> Self {
        Self::spiral(1.0, phi, center).expect("unit coefficient")
    }

    /// M: reflection in the line through O at `axis_angle`, with homothety k.
    pub fn homothetic_reflection(k: f64, axis_angle: f64, center: Complex64) -> Result<Self, SymmetryError> {
        Self::new(k, 0.0, true, axis_angle, center)
    }

    pub fn mirror(axis_angle: f64, center: Complex64) -> Self {
        Self::homothetic_reflection(1.0, axis_angle, center).expect("unit coefficient")
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn reflects(&self) -> bool {
        self.reflect
    }

    pub fn axis_angle(&self) -> f64 {
        self.axis_angle
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn kind(&self) -> SimilarityKind {
        if self.reflect {
            SimilarityKind::M
        } else if self.phi.abs() > PARAM_EPS {
            SimilarityKind::L
        } else if (self.k - 1.0).abs() > PARAM_EPS {
            SimilarityKind::K
        } else {
            SimilarityKind::Identity
        }
    }

    /// The map on w = z − O as w ↦ λ·w, or w ↦ λ·w̄ when reflecting.
    fn linear(&self) -> Complex64 {
        let theta = if self.reflect {
            self.phi + 2.0 * self.axis_angle
        } else {
            self.phi
        };
        Complex64::from_polar(self.k, theta)
    }

    /// Inverse of [`Self::linear`]. A reflecting map is stored with φ = 0
    /// and its whole rotation folded into the axis, λ = k·e^{2iα}.
    fn from_linear(lambda: Complex64, reflect: bool, center: Complex64) -> Self {
        let (k, theta) = lambda.to_polar();
        if reflect {
            Self {
                k,
                phi: 0.0,
                reflect,
                axis_angle: normalize_angle(theta / 2.0),
                center,
            }
        } else {
            Self {
                k,
                phi: normalize_angle(theta),
                reflect,
                axis_angle: 0.0,
                center,
            }
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        let w = z - self.center;
        let w = if self.reflect { w.conj() } else { w };
        self.center + self.linear() * w
    }

    /// `self ∘ inner` (apply `inner` first).
    ///
    /// Coefficients multiply, reflection flags XOR, and a reflection in
    /// `self` flips the sign of `inner`'s rotation angle.
    pub fn compose(&self, inner: &Self) -> Result<Self, SymmetryError> {
        if self.center != inner.center {
            return Err(SymmetryError::CentersDiffer);
        }
        let inner_lambda = if self.reflect {
            inner.linear().conj()
        } else {
            inner.linear()
        };
        Ok(Self::from_linear(
            self.linear() * inner_lambda,
            self.reflect ^ inner.reflect,
            self.center,
        ))
    }

    pub fn inverse(&self) -> Self {
        let lambda = self.linear();
        let inv = if self.reflect {
            // v = λ·w̄  ⇒  w = v̄ / λ̄
            Complex64::new(1.0, 0.0) / lambda.conj()
        } else {
            Complex64::new(1.0, 0.0) / lambda
        };
        Self::from_linear(inv, self.reflect, self.center)
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(self.center), |acc, _| {
            self.compose(&acc).expect("shared centre")
        })
    }

    /// Parameter equality: same centre and reflection flag, k and the
    /// linear part equal within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.reflect == other.reflect
            && (self.center - other.center).norm() <= tol
            && (self.k - other.k).abs() <= tol
            && (self.linear() - other.linear()).norm() <= tol * self.k.max(1.0)
    }
}

/// Apply `op` to `z`.
pub fn apply_similarity2d(op: &Similarity2D, z: Complex64) -> Complex64 {
    op.apply(z)
}

/// `op1 ∘ op2` in closed form.
pub fn compose_similarity2d(op1: &Similarity2D, op2: &Similarity2D) -> Result<Similarity2D, SymmetryError> {
    op1.compose(op2)
}
