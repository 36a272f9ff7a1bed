use num_complex::Complex64;
use serde::Serialize;

use super::{map_point, stereographic, ConformalError, MapSpec, MappedPoint};
use crate::algebra::{CircleSpec, Extended, MobiusMap};
use crate::geom::{
    circle_intersections, convex_hull, distance_to_segment, fit_circle, fit_line, in_convex_polygon, plane_residual,
};
use crate::quasilattice::{CrystalSet, LatticeKind};
use crate::PointIndex;

/// Shape fitted to the image of a circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FitMode {
    Circle,
    /// The circle passes through the pole, so its image is a line.
    Line,
    /// Stereographic image: a circle on the sphere, checked for coplanarity.
    Plane,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleImageReport {
    /// Largest geometric distance of an image sample from the fitted curve
    /// (or plane).
    pub residual: f64,
    pub mode: FitMode,
    pub samples: usize,
}

/// Sample `samples` points on `circle`, map them and fit a circle, a line
/// or (for the stereographic map) a plane to the images.
pub fn circle_image_check(
    spec: &MapSpec,
    circle: &CircleSpec,
    samples: usize,
) -> Result<CircleImageReport, ConformalError> {
    if samples < 4 {
        return Err(ConformalError::TooFewSamples {
            needed: 4,
            got: samples,
        });
    }
    let pts = circle.sample(samples, 10.0);
    if let MapSpec::Stereographic = spec {
        let images: Vec<_> = pts.iter().map(|&z| stereographic(z).to_array()).collect();
        return Ok(CircleImageReport {
            residual: plane_residual(&images),
            mode: FitMode::Plane,
            samples,
        });
    }
    let m = spec.as_mobius().ok_or(ConformalError::NotMobius)?;
    let mode = if through_pole(&m, circle) {
        FitMode::Line
    } else {
        FitMode::Circle
    };
    let images: Vec<Complex64> = pts
        .iter()
        .filter_map(|&z| match map_point(spec, z) {
            MappedPoint::Plane(Extended::Finite(w)) => Some(w),
            _ => None,
        })
        .collect();
    if images.len() < 4 {
        return Err(ConformalError::TooFewSamples {
            needed: 4,
            got: images.len(),
        });
    }
    let residual = match mode {
        FitMode::Line => fit_line(&images).map(|f| f.residual),
        _ => fit_circle(&images).map(|f| f.residual),
    }
    .ok_or(ConformalError::FitFailed(0))?;
    Ok(CircleImageReport {
        residual,
        mode,
        samples,
    })
}

fn through_pole(m: &MobiusMap, circle: &CircleSpec) -> bool {
    match (m.pole(), circle.center(), circle.radius()) {
        (Some(p), Some(c), Some(r)) => ((p - c).norm() - r).abs() <= 1e-9 * r.max(1.0),
        (Some(p), _, _) => {
            let (_, b, cc) = circle.coefficients();
            (p.re + cc / (2.0 * b)).abs() <= 1e-9 * p.re.abs().max(1.0)
        }
        // an affine map sends the line's point at infinity to infinity
        (None, _, _) => circle.is_line(),
    }
}

/// Result of [`special_points_of_inverted_polygon`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialPoints {
    pub count: usize,
    pub points: Vec<Complex64>,
    /// Number of boundary rows (polygon sides).
    pub rows: usize,
}

/// Count the special points of the image of a polygon-bounded set under
/// inversion in the unit circle.
///
/// Each side of the convex hull is a row of points whose image lies on a
/// circle through 0. Adjacent fitted circles meet at 0 (the image of ∞,
/// excluded) and at one more point; those inside the image's convex hull
/// are counted.
pub fn special_points_of_inverted_polygon(
    points: &[Complex64],
    tolerance: f64,
) -> Result<SpecialPoints, ConformalError> {
    let hull = convex_hull(points);
    if hull.len() < 3 {
        return Err(ConformalError::NoBoundary);
    }
    let invert = |z: Complex64| Complex64::new(1.0, 0.0) / z.conj();
    let mut fits = Vec::with_capacity(hull.len());
    for i in 0..hull.len() {
        let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
        let row: Vec<Complex64> = points
            .iter()
            .copied()
            .filter(|&z| distance_to_segment(z, a, b) <= tolerance && z.norm() > tolerance)
            .collect();
        if row.len() < 3 {
            return Err(ConformalError::ShortBoundaryRow {
                row: i,
                points: row.len(),
            });
        }
        let image: Vec<Complex64> = row.into_iter().map(invert).collect();
        fits.push(fit_circle(&image).ok_or(ConformalError::FitFailed(i))?);
    }
    let image_all: Vec<Complex64> = points
        .iter()
        .filter(|z| z.norm() > tolerance)
        .map(|&z| invert(z))
        .collect();
    let image_hull = convex_hull(&image_all);
    let mut found = PointIndex::new(1e-6);
    for i in 0..fits.len() {
        let (f, g) = (&fits[i], &fits[(i + 1) % fits.len()]);
        let origin_slack = 1e-6 * f.radius.max(g.radius);
        for p in circle_intersections(f, g) {
            if p.norm() > origin_slack && in_convex_polygon(&image_hull, p, 1e-9) {
                found.insert_unique(p);
            }
        }
    }
    let points = found.points().to_vec();
    Ok(SpecialPoints {
        count: points.len(),
        points,
        rows: fits.len(),
    })
}

/// [`special_points_of_inverted_polygon`] for a square-lattice set.
pub fn special_points_of_inverted_square(set: &CrystalSet) -> Result<SpecialPoints, ConformalError> {
    if set.kind() != LatticeKind::Square {
        return Err(ConformalError::WrongKind(set.kind().as_str()));
    }
    special_points_of_inverted_polygon(set.embedded(), set.tolerance())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasilattice::{generate_periodic, generate_periodic_polygon, CyclotomicPoint};

    #[test]
    fn identity_keeps_unit_circle() {
        let id = MapSpec::Mobius {
            map: MobiusMap::identity(),
        };
        let r = circle_image_check(&id, &CircleSpec::unit(), 64).unwrap();
        assert_eq!(r.mode, FitMode::Circle);
        assert!(r.residual < 1e-15);
    }

    #[test]
    fn reciprocal_of_offset_circle() {
        let circle = CircleSpec::centered(3.0, 1.0).unwrap();
        let r = circle_image_check(&MapSpec::Reciprocal, &circle, 64).unwrap();
        assert!(r.residual < 1e-9);
    }

    #[test]
    fn circle_through_pole_becomes_line() {
        let circle = CircleSpec::centered(1.0, 1.0).unwrap();
        let r = circle_image_check(&MapSpec::InversionUnitCircle, &circle, 64).unwrap();
        assert_eq!(r.mode, FitMode::Line);
        assert!(r.residual < 1e-9);
    }

    #[test]
    fn stereographic_circle_is_planar() {
        let circle = CircleSpec::centered(-0.5, 2.0).unwrap();
        let r = circle_image_check(&MapSpec::Stereographic, &circle, 48).unwrap();
        assert_eq!(r.mode, FitMode::Plane);
        assert!(r.residual < 1e-9);
        assert!(circle_image_check(&MapSpec::Square, &circle, 48).is_err());
    }

    #[test]
    fn inverted_square_has_four_special_points() {
        let set = generate_periodic_polygon(LatticeKind::Square, 4).unwrap();
        let sp = special_points_of_inverted_square(&set).unwrap();
        assert_eq!(sp.rows, 4);
        assert_eq!(sp.count, 4);
        // images of the corners (±4 ± 4i)
        for p in &sp.points {
            assert!((p.norm() - 1.0 / 32f64.sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn inverted_hexagon_has_six() {
        let set = generate_periodic_polygon(LatticeKind::Hexagonal, 3).unwrap();
        let sp = special_points_of_inverted_polygon(set.embedded(), set.tolerance()).unwrap();
        assert_eq!(sp.count, 6);
        assert!(matches!(
            special_points_of_inverted_square(&set),
            Err(ConformalError::WrongKind("hexagonal"))
        ));
    }

    #[test]
    fn degenerate_sets_fail() {
        let one = CrystalSet::from_points(4, LatticeKind::Square, vec![CyclotomicPoint::basis(4, 0)], 1e-9).unwrap();
        assert_eq!(special_points_of_inverted_square(&one), Err(ConformalError::NoBoundary));
        // a disk cut leaves sides with fewer than 3 points
        let disk = generate_periodic(LatticeKind::Square, 2.5).unwrap();
        assert!(matches!(
            special_points_of_inverted_square(&disk),
            Err(ConformalError::ShortBoundaryRow { .. })
        ));
    }
}
