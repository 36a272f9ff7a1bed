//! Conformal and anticonformal maps of point sets: z², 1/z, inversion in
//! the unit circle, Möbius maps and stereographic projection onto the unit
//! sphere.

mod special;
mod sphere;

use std::f64::consts::FRAC_PI_4;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Extended, MobiusMap};
#[cfg(feature = "parallel")]
use crate::par::*;
use crate::quasilattice::CrystalSet;

pub use special::{
    circle_image_check, special_points_of_inverted_polygon, special_points_of_inverted_square, CircleImageReport,
    FitMode, SpecialPoints,
};
pub use sphere::{inverse_stereographic, invert_sphere3d, stereographic, SpherePoint};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConformalError {
    #[error("point lies within {distance:e} of a singularity of the map")]
    Singular { distance: f64 },
    #[error("step must be positive and finite, got {0}")]
    BadStep(f64),
    #[error("map is not fractional-linear")]
    NotMobius,
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("not on the unit sphere: |p| = {0}")]
    NotOnSphere(f64),
    #[error("point coincides with the centre of inversion")]
    AtCenter,
    #[error("radius must be positive, got {0}")]
    BadRadius(f64),
    #[error("boundary row {row} has {points} points, need at least 3")]
    ShortBoundaryRow { row: usize, points: usize },
    #[error("set has no polygonal boundary")]
    NoBoundary,
    #[error("expected a square-lattice set, got {0}")]
    WrongKind(&'static str),
    #[error("circle fit failed for boundary row {0}")]
    FitFailed(usize),
}

/// A map of the plane (or of the plane onto the sphere).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapSpec {
    /// w = z²: Cartesian to parabolic coordinates.
    Square,
    /// w = 1/z.
    Reciprocal,
    /// w = 1/z̄, inversion in the unit circle.
    InversionUnitCircle,
    Mobius {
        map: MobiusMap,
    },
    /// Onto the unit sphere, z = 0 ↦ (1, 0, 0).
    Stereographic,
}

impl MapSpec {
    /// The map as a fractional-linear map, when it is one.
    pub fn as_mobius(&self) -> Option<MobiusMap> {
        match self {
            Self::Reciprocal => Some(MobiusMap::reciprocal()),
            Self::InversionUnitCircle => Some(MobiusMap::unit_circle_inversion()),
            Self::Mobius { map } => Some(*map),
            Self::Square | Self::Stereographic => None,
        }
    }

    pub fn is_anticonformal(&self) -> bool {
        self.as_mobius().is_some_and(|m| m.anticonformal)
    }

    /// Finite points where the map is singular: the pole of a Möbius map,
    /// and the critical point 0 of z².
    pub fn singularity(&self) -> Option<Complex64> {
        match self {
            Self::Square => Some(Complex64::new(0.0, 0.0)),
            Self::Stereographic => None,
            _ => self.as_mobius().and_then(|m| m.pole()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Square => "square",
            Self::Reciprocal => "reciprocal",
            Self::InversionUnitCircle => "inversion",
            Self::Mobius { .. } => "mobius",
            Self::Stereographic => "stereographic",
        }
    }
}

impl FromStr for MapSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "square" => Ok(Self::Square),
            "reciprocal" => Ok(Self::Reciprocal),
            "inversion" | "inversion_unit_circle" => Ok(Self::InversionUnitCircle),
            "stereographic" => Ok(Self::Stereographic),
            "identity" => Ok(Self::Mobius {
                map: MobiusMap::identity(),
            }),
            other => Err(format!("unknown map {other:?}")),
        }
    }
}

/// Image of a single point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MappedPoint {
    Plane(Extended),
    Sphere(SpherePoint),
}

impl MappedPoint {
    pub fn plane(self) -> Option<Complex64> {
        match self {
            Self::Plane(w) => w.finite(),
            Self::Sphere(_) => None,
        }
    }
}

pub fn map_point(spec: &MapSpec, z: Complex64) -> MappedPoint {
    match spec {
        MapSpec::Square => MappedPoint::Plane(Extended::Finite(z * z)),
        MapSpec::Stereographic => MappedPoint::Sphere(stereographic(z)),
        _ => {
            let m = spec.as_mobius().expect("remaining variants are Möbius");
            MappedPoint::Plane(m.apply(Extended::Finite(z)))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ImagePoints {
    Plane(Vec<Complex64>),
    Sphere(Vec<SpherePoint>),
}

impl ImagePoints {
    pub fn len(&self) -> usize {
        match self {
            Self::Plane(v) => v.len(),
            Self::Sphere(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn plane(&self) -> Option<&[Complex64]> {
        match self {
            Self::Plane(v) => Some(v),
            Self::Sphere(_) => None,
        }
    }

    pub fn sphere(&self) -> Option<&[SpherePoint]> {
        match self {
            Self::Sphere(v) => Some(v),
            Self::Plane(_) => None,
        }
    }
}

/// Image of a point sequence, in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageSet {
    pub points: ImagePoints,
    /// Input index of every image point.
    pub kept: Vec<usize>,
    /// Inputs sent to ∞ (within tolerance of the pole).
    pub dropped: usize,
}

/// Map every embedded point of `set`, dropping points within the set's
/// tolerance of the map's pole.
pub fn map_set(spec: &MapSpec, set: &CrystalSet) -> ImageSet {
    map_points(spec, set.embedded(), set.tolerance())
}

pub fn map_points(spec: &MapSpec, points: &[Complex64], tolerance: f64) -> ImageSet {
    let pole = match spec {
        MapSpec::Square | MapSpec::Stereographic => None,
        _ => spec.singularity(),
    };
    let images: Vec<Option<MappedPoint>> = par_iter!(points)
        .map(|&z| {
            if pole.is_some_and(|p| (z - p).norm() <= tolerance) {
                return None;
            }
            match map_point(spec, z) {
                MappedPoint::Plane(Extended::Infinity) => None,
                w => Some(w),
            }
        })
        .collect();
    let mut kept = Vec::with_capacity(points.len());
    let mut plane = Vec::new();
    let mut sphere = Vec::new();
    for (i, w) in images.into_iter().enumerate() {
        match w {
            Some(MappedPoint::Plane(w)) => plane.push(w.finite().expect("infinity filtered")),
            Some(MappedPoint::Sphere(p)) => sphere.push(p),
            None => continue,
        }
        kept.push(i);
    }
    let dropped = points.len() - kept.len();
    let points = if matches!(spec, MapSpec::Stereographic) {
        ImagePoints::Sphere(sphere)
    } else {
        ImagePoints::Plane(plane)
    };
    ImageSet { points, kept, dropped }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Preserved,
    Reversed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConformalityReport {
    /// | |θ| − π/4 | where θ is the signed angle between the two image
    /// tangents.
    pub deviation: f64,
    pub orientation: Orientation,
}

fn embed3(w: MappedPoint) -> [f64; 3] {
    match w {
        MappedPoint::Sphere(p) => p.to_array(),
        MappedPoint::Plane(w) => {
            let w = w.finite().expect("finite image");
            [w.re, w.im, 0.0]
        }
    }
}

/// Tangent of the image of the segment leaving z0 in direction `dir`, by
/// the one-sided difference (−3f(z0) + 4f(z0 + h·dir) − f(z0 + 2h·dir))/2h.
fn image_tangent(spec: &MapSpec, z0: Complex64, dir: Complex64, h: f64) -> [f64; 3] {
    let f0 = embed3(map_point(spec, z0));
    let f1 = embed3(map_point(spec, z0 + dir * h));
    let f2 = embed3(map_point(spec, z0 + dir * (2.0 * h)));
    std::array::from_fn(|k| (-3.0 * f0[k] + 4.0 * f1[k] - f2[k]) / (2.0 * h))
}

/// Angle between the images of the segments leaving z0 in directions 0
/// and π/4, measured between their tangents at the image of z0 with step
/// `h`. The error is O(h²).
///
/// On the sphere the orientation is taken with respect to the outward
/// normal at the image of z0.
pub fn conformality_check(spec: &MapSpec, z0: Complex64, h: f64) -> Result<ConformalityReport, ConformalError> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(ConformalError::BadStep(h));
    }
    if let Some(s) = spec.singularity() {
        let distance = (z0 - s).norm();
        if distance <= 10.0 * h {
            return Err(ConformalError::Singular { distance });
        }
    }
    let t1 = image_tangent(spec, z0, Complex64::new(1.0, 0.0), h);
    let t2 = image_tangent(spec, z0, Complex64::from_polar(1.0, FRAC_PI_4), h);
    let normal = match map_point(spec, z0) {
        MappedPoint::Sphere(p) => [p.x0, p.x1, p.x2],
        MappedPoint::Plane(_) => [0.0, 0.0, 1.0],
    };
    let cross = [
        t1[1] * t2[2] - t1[2] * t2[1],
        t1[2] * t2[0] - t1[0] * t2[2],
        t1[0] * t2[1] - t1[1] * t2[0],
    ];
    let sin = cross.iter().zip(normal).map(|(c, n)| c * n).sum::<f64>();
    let cos = t1.iter().zip(t2).map(|(a, b)| a * b).sum::<f64>();
    let theta = sin.atan2(cos);
    let orientation = if theta >= 0.0 {
        Orientation::Preserved
    } else {
        Orientation::Reversed
    };
    Ok(ConformalityReport {
        deviation: (theta.abs() - FRAC_PI_4).abs(),
        orientation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasilattice::{generate_periodic, LatticeKind};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_of_one_plus_i() {
        assert_eq!(map_point(&MapSpec::Square, c(1.0, 1.0)).plane(), Some(c(0.0, 2.0)));
    }

    #[test]
    fn reciprocal_and_inversion() {
        let z = c(3.0, 4.0);
        let r = map_point(&MapSpec::Reciprocal, z).plane().unwrap();
        assert!((r - c(3.0, -4.0) / 25.0).norm() < 1e-16);
        let w = map_point(&MapSpec::InversionUnitCircle, z).plane().unwrap();
        assert!((w - c(3.0, 4.0) / 25.0).norm() < 1e-16);
        assert_eq!(
            map_point(&MapSpec::Reciprocal, c(0.0, 0.0)),
            MappedPoint::Plane(Extended::Infinity)
        );
    }

    #[test]
    fn map_set_drops_the_pole() {
        let set = generate_periodic(LatticeKind::Square, 2.0).unwrap();
        let image = map_set(&MapSpec::InversionUnitCircle, &set);
        assert_eq!(image.dropped, 1);
        assert_eq!(image.points.len(), set.len() - 1);
        assert!(!image
            .kept
            .contains(&set.embedded().iter().position(|z| z.norm() == 0.0).unwrap()));
        let same = map_set(&"identity".parse().unwrap(), &set);
        assert_eq!(same.points.plane().unwrap(), set.embedded());
        assert_eq!(same.dropped, 0);
    }

    #[test]
    fn conformality_of_square_and_inversion() {
        let r = conformality_check(&MapSpec::Square, c(1.0, 0.0), 1e-5).unwrap();
        assert!(r.deviation < 1e-6);
        assert_eq!(r.orientation, Orientation::Preserved);
        let r = conformality_check(&MapSpec::InversionUnitCircle, c(2.0, 0.0), 1e-5).unwrap();
        assert_eq!(r.orientation, Orientation::Reversed);
        assert!(r.deviation < 1e-5);
        let id = MapSpec::Mobius {
            map: MobiusMap::identity(),
        };
        assert!(conformality_check(&id, c(0.3, 0.2), 1e-3).unwrap().deviation < 1e-12);
    }

    #[test]
    fn conformality_near_singularity_fails() {
        assert!(matches!(
            conformality_check(&MapSpec::Reciprocal, c(1e-5, 0.0), 1e-5),
            Err(ConformalError::Singular { .. })
        ));
        assert!(conformality_check(&MapSpec::Square, c(1.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn stereographic_conformality() {
        let r = conformality_check(&MapSpec::Stereographic, c(0.4, -0.7), 1e-5).unwrap();
        assert!(r.deviation < 1e-4, "{r:?}");
    }
}
