use serde::{Deserialize, Serialize};

use super::plane::normalize_angle;
use super::SymmetryError;

pub type Vec3 = [f64; 3];

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn norm3(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn distance3(a: Vec3, b: Vec3) -> f64 {
    norm3(sub(a, b))
}

/// Shubnikov operation type of a spatial similarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimilarityKind3D {
    Identity,
    K,
    L,
    M,
    /// Spiral reflection: homothety with a rotatory reflection.
    LBar,
}

/// Space similarity: rotation by φ about the axis through O, optional
/// reflection in the plane through O normal to the axis, homothety k.
///
/// The rotation and the reflection commute, so L̄ = L·m = m·L.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Similarity3D {
    k: f64,
    axis: Vec3,
    phi: f64,
    reflect: bool,
    center: Vec3,
}

impl Similarity3D {
    pub fn new(k: f64, axis: Vec3, phi: f64, reflect: bool, center: Vec3) -> Result<Self, SymmetryError> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(SymmetryError::NonPositiveCoefficient(k));
        }
        if (norm3(axis) - 1.0).abs() > 1e-12 {
            return Err(SymmetryError::AxisNotUnit(norm3(axis)));
        }
        Ok(Self {
            k,
            axis,
            phi: normalize_angle(phi),
            reflect,
            center,
        })
    }

    pub fn homothety(k: f64, center: Vec3) -> Result<Self, SymmetryError> {
        Self::new(k, [0.0, 0.0, 1.0], 0.0, false, center)
    }

    pub fn spiral(k: f64, axis: Vec3, phi: f64, center: Vec3) -> Result<Self, SymmetryError> {
        Self::new(k, axis, phi, false, center)
    }

    pub fn homothetic_reflection(k: f64, normal: Vec3, center: Vec3) -> Result<Self, SymmetryError> {
        Self::new(k, normal, 0.0, true, center)
    }

    pub fn spiral_reflection(k: f64, axis: Vec3, phi: f64, center: Vec3) -> Result<Self, SymmetryError> {
        Self::new(k, axis, phi, true, center)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn reflects(&self) -> bool {
        self.reflect
    }

    pub fn center(&self) -> Vec3 {
        self.center
    }

    pub fn kind(&self) -> SimilarityKind3D {
        let turns = self.phi.abs() > 1e-12;
        match (self.reflect, turns) {
            (true, true) => SimilarityKind3D::LBar,
            (true, false) => SimilarityKind3D::M,
            (false, true) => SimilarityKind3D::L,
            (false, false) if (self.k - 1.0).abs() > 1e-12 => SimilarityKind3D::K,
            (false, false) => SimilarityKind3D::Identity,
        }
    }

    pub fn apply(&self, p: Vec3) -> Vec3 {
        let v = sub(p, self.center);
        let l = self.axis;
        let (s, c) = self.phi.sin_cos();
        // Rodrigues
        let along = dot(l, v);
        let mut r = add(add(scale(v, c), scale(cross(l, v), s)), scale(l, along * (1.0 - c)));
        if self.reflect {
            r = sub(r, scale(l, 2.0 * dot(r, l)));
        }
        add(self.center, scale(r, self.k))
    }

    /// `self ∘ inner` for operations sharing centre and axis line. An
    /// antiparallel axis is the same line with the rotation sense flipped.
    pub fn compose(&self, inner: &Self) -> Result<Self, SymmetryError> {
        if self.center != inner.center {
            return Err(SymmetryError::CentersDiffer);
        }
        let d = dot(self.axis, inner.axis);
        let inner_phi = if (d - 1.0).abs() <= 1e-12 {
            inner.phi
        } else if (d + 1.0).abs() <= 1e-12 {
            -inner.phi
        } else {
            return Err(SymmetryError::AxesDiffer);
        };
        Ok(Self {
            k: self.k * inner.k,
            axis: self.axis,
            phi: normalize_angle(self.phi + inner_phi),
            reflect: self.reflect ^ inner.reflect,
            center: self.center,
        })
    }

    /// The square: coefficient k², angle 2φ, and no reflection (m² = 1).
    pub fn squared(&self) -> Self {
        self.compose(self).expect("same axis and centre")
    }
}

pub fn apply_similarity3d(op: &Similarity3D, p: Vec3) -> Vec3 {
    op.apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const Z: Vec3 = [0.0, 0.0, 1.0];

    #[test]
    fn homothetic_reflection_in_xy_plane() {
        let m = Similarity3D::homothetic_reflection(2.0, Z, [0.0; 3]).unwrap();
        assert_eq!(m.apply([1.0, 1.0, 1.0]), [2.0, 2.0, -2.0]);
        assert_eq!(m.kind(), SimilarityKind3D::M);
        let m2 = m.squared();
        assert_eq!(m2.apply([1.0, 1.0, 1.0]), [4.0, 4.0, 4.0]);
        assert_eq!(m2.kind(), SimilarityKind3D::K);
        assert_eq!(m2.k(), 4.0);
    }

    #[test]
    fn quarter_turn() {
        let l = Similarity3D::spiral(1.0, Z, PI / 2.0, [0.0; 3]).unwrap();
        let p = l.apply([1.0, 0.0, 0.5]);
        assert!(distance3(p, [0.0, 1.0, 0.5]) < 1e-15);
    }

    #[test]
    fn spiral_reflection_square() {
        let axis = [1.0 / 3f64.sqrt(); 3];
        let c = [1.0, -1.0, 0.5];
        let lbar = Similarity3D::spiral_reflection(1.2, axis, 0.7, c).unwrap();
        assert_eq!(lbar.kind(), SimilarityKind3D::LBar);
        let sq = lbar.squared();
        let l = Similarity3D::spiral(1.2, axis, 0.7, c).unwrap().squared();
        assert_eq!(sq, l);
        assert!((sq.k() - 1.44).abs() < 1e-15);
        assert!((sq.phi() - 1.4).abs() < 1e-15);
        let p = [0.3, 2.0, -1.0];
        assert!(distance3(sq.apply(p), lbar.apply(lbar.apply(p))) < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Similarity3D::spiral(1.0, [1.0, 1.0, 0.0], 0.1, [0.0; 3]),
            Err(SymmetryError::AxisNotUnit(_))
        ));
        let a = Similarity3D::spiral(1.0, Z, 0.1, [0.0; 3]).unwrap();
        let b = Similarity3D::spiral(1.0, [1.0, 0.0, 0.0], 0.1, [0.0; 3]).unwrap();
        assert!(matches!(a.compose(&b), Err(SymmetryError::AxesDiffer)));
    }

    #[test]
    fn antiparallel_axis_flips_angle() {
        let a = Similarity3D::spiral(1.0, Z, 0.3, [0.0; 3]).unwrap();
        let b = Similarity3D::spiral(1.0, [0.0, 0.0, -1.0], 0.3, [0.0; 3]).unwrap();
        assert_eq!(a.compose(&b).unwrap().kind(), SimilarityKind3D::Identity);
    }
}
