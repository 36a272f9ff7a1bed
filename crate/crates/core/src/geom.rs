//! Small planar and spatial geometry helpers: convex hulls, least-squares
//! circle, line and plane fits, circle intersections.

use num_complex::Complex64;

use crate::symmetry::Vec3;

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Strict convex hull vertices in counter-clockwise order (monotone chain).
/// Collinear boundary points are not vertices.
pub(crate) fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let scale = pts.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let eps = 1e-12 * scale * scale;
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Complex64>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if cross(b - a, p - a) <= eps {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Whether `p` lies in the closed convex polygon `hull` (counter-clockwise),
/// with slack `tol` in distance.
pub(crate) fn in_convex_polygon(hull: &[Complex64], p: Complex64, tol: f64) -> bool {
    if hull.len() < 3 {
        return false;
    }
    (0..hull.len()).all(|i| {
        let a = hull[i];
        let b = hull[(i + 1) % hull.len()];
        let edge = b - a;
        cross(edge, p - a) >= -tol * edge.norm()
    })
}

pub(crate) fn distance_to_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CircleFit {
    pub center: Complex64,
    pub radius: f64,
    /// Largest | |p − c| − r |.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct LineFit {
    pub point: Complex64,
    pub direction: Complex64,
    /// Largest perpendicular distance.
    pub residual: f64,
}

fn centroid(points: &[Complex64]) -> Complex64 {
    points.iter().sum::<Complex64>() / points.len() as f64
}

/// Algebraic (Kåsa) least-squares circle: minimise Σ (|p|² + D·x + E·y + F)²
/// on centred, scaled data. The residual is geometric.
pub(crate) fn fit_circle(points: &[Complex64]) -> Option<CircleFit> {
    if points.len() < 3 {
        return None;
    }
    let mean = centroid(points);
    let scale = points.iter().map(|p| (p - mean).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    let mut m = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for p in points {
        let q = (p - mean) / scale;
        let row = [q.re, q.im, 1.0];
        let target = -q.norm_sqr();
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += row[i] * row[j];
            }
            rhs[i] += row[i] * target;
        }
    }
    let [d, e, f] = solve3(m, rhs)?;
    let c = Complex64::new(-d / 2.0, -e / 2.0);
    let r2 = c.norm_sqr() - f;
    if !(r2 > 0.0) || !r2.is_finite() {
        return None;
    }
    let center = mean + c * scale;
    let radius = r2.sqrt() * scale;
    let residual = points
        .iter()
        .map(|p| ((p - center).norm() - radius).abs())
        .fold(0.0, f64::max);
    Some(CircleFit {
        center,
        radius,
        residual,
    })
}

/// Total least-squares line through the centroid.
pub(crate) fn fit_line(points: &[Complex64]) -> Option<LineFit> {
    if points.len() < 2 {
        return None;
    }
    let mean = centroid(points);
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for p in points {
        let q = p - mean;
        sxx += q.re * q.re;
        sxy += q.re * q.im;
        syy += q.im * q.im;
    }
    if sxx + syy == 0.0 {
        return None;
    }
    // principal axis of the scatter matrix
    let angle = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let direction = Complex64::from_polar(1.0, angle);
    let residual = points
        .iter()
        .map(|p| cross(direction, p - mean).abs())
        .fold(0.0, f64::max);
    Some(LineFit {
        point: mean,
        direction,
        residual,
    })
}

/// Intersection points of two circles (0, 1 or 2 of them).
pub(crate) fn circle_intersections(a: &CircleFit, b: &CircleFit) -> Vec<Complex64> {
    let d_vec = b.center - a.center;
    let d = d_vec.norm();
    if d == 0.0 || d > a.radius + b.radius || d < (a.radius - b.radius).abs() {
        return Vec::new();
    }
    let along = (a.radius * a.radius - b.radius * b.radius + d * d) / (2.0 * d);
    let h2 = a.radius * a.radius - along * along;
    let u = d_vec / d;
    let base = a.center + u * along;
    if h2 <= 0.0 {
        return vec![base];
    }
    let off = u * Complex64::i() * h2.sqrt();
    vec![base + off, base - off]
}

/// Gaussian elimination with partial pivoting.
pub(crate) fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let factor = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= factor * m[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| m[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / m[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Eigenvector of the smallest eigenvalue of a symmetric 3×3 matrix
/// (cyclic Jacobi rotations).
fn smallest_eigenvector(mut a: [[f64; 3]; 3]) -> Vec3 {
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for _ in 0..64 {
        let off = a[0][1].abs() + a[0][2].abs() + a[1][2].abs();
        if off < 1e-300 {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            if a[p][q].abs() < 1e-300 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let t = if theta == 0.0 { 1.0 } else { t };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            for k in 0..3 {
                let (akp, akq) = (a[k][p], a[k][q]);
                a[k][p] = c * akp - s * akq;
                a[k][q] = s * akp + c * akq;
            }
            for k in 0..3 {
                let (apk, aqk) = (a[p][k], a[q][k]);
                a[p][k] = c * apk - s * aqk;
                a[q][k] = s * apk + c * aqk;
            }
            for row in v.iter_mut() {
                let (vp, vq) = (row[p], row[q]);
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
    }
    let i = (0..3).min_by(|&i, &j| a[i][i].total_cmp(&a[j][j])).unwrap_or(0);
    [v[0][i], v[1][i], v[2][i]]
}

/// Least-squares plane through `points`; returns the largest distance of a
/// point from it.
pub(crate) fn plane_residual(points: &[Vec3]) -> f64 {
    if points.len() < 4 {
        return 0.0;
    }
    let n = points.len() as f64;
    let mut mean = [0.0; 3];
    for p in points {
        for k in 0..3 {
            mean[k] += p[k] / n;
        }
    }
    let mut cov = [[0.0; 3]; 3];
    for p in points {
        let q = [p[0] - mean[0], p[1] - mean[1], p[2] - mean[2]];
        for i in 0..3 {
            for j in 0..3 {
                cov[i][j] += q[i] * q[j];
            }
        }
    }
    let normal = smallest_eigenvector(cov);
    points
        .iter()
        .map(|p| ((0..3).map(|k| (p[k] - mean[k]) * normal[k]).sum::<f64>()).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_hull_skips_edge_midpoints() {
        let pts: Vec<_> = (-1..=1)
            .flat_map(|x| (-1..=1).map(move |y| c(x as f64, y as f64)))
            .collect();
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
        assert!(in_convex_polygon(&hull, c(0.5, 0.5), 1e-12));
        assert!(in_convex_polygon(&hull, c(1.0, 0.0), 1e-12));
        assert!(!in_convex_polygon(&hull, c(1.1, 0.0), 1e-12));
    }

    #[test]
    fn circle_fit_recovers_circle() {
        let center = c(3.0, -2.0);
        let pts: Vec<_> = (0..12)
            .map(|j| center + Complex64::from_polar(0.25, j as f64 * 0.4))
            .collect();
        let fit = fit_circle(&pts).unwrap();
        assert!((fit.center - center).norm() < 1e-12);
        assert!((fit.radius - 0.25).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn line_fit() {
        let pts: Vec<_> = (0..5).map(|j| c(j as f64, 2.0 * j as f64 + 1.0)).collect();
        let fit = fit_line(&pts).unwrap();
        assert!(fit.residual < 1e-12);
        assert!(fit_circle(&pts).is_none_or(|f| f.radius > 1e6));
    }

    #[test]
    fn intersections_of_unit_circles() {
        let a = CircleFit {
            center: c(0.0, 0.0),
            radius: 1.0,
            residual: 0.0,
        };
        let b = CircleFit {
            center: c(1.0, 0.0),
            radius: 1.0,
            residual: 0.0,
        };
        let pts = circle_intersections(&a, &b);
        assert_eq!(pts.len(), 2);
        for p in pts {
            assert!((p.norm() - 1.0).abs() < 1e-15);
            assert!((p.re - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn plane_residual_of_tilted_circle() {
        let pts: Vec<Vec3> = (0..20)
            .map(|j| {
                let t = j as f64 * 0.3;
                [t.cos(), t.sin(), 0.5 * t.cos() + 2.0]
            })
            .collect();
        assert!(plane_residual(&pts) < 1e-12);
        let mut bent = pts.clone();
        bent[3][2] += 0.1;
        assert!(plane_residual(&bent) > 1e-3);
    }

    #[test]
    fn solve_identity() {
        let m = [[2.0, 0.0, 0.0], [0.0, 0.0, 3.0], [0.0, 1.0, 0.0]];
        assert_eq!(solve3(m, [2.0, 3.0, 4.0]), Some([1.0, 4.0, 1.0]));
    }
}
