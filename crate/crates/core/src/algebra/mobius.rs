use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// A point of the extended complex plane ℂ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Extended {
    Finite(Complex64),
    Infinity,
}

impl Extended {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            Self::Finite(z) => Some(z),
            Self::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Self::Infinity)
    }

    pub fn conj(self) -> Self {
        match self {
            Self::Finite(z) => Self::Finite(z.conj()),
            Self::Infinity => Self::Infinity,
        }
    }

    /// Distance between two extended points; ∞ is at distance 0 from
    /// itself and infinitely far from every finite point.
    pub fn distance(self, other: Self) -> f64 {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => (a - b).norm(),
            (Self::Infinity, Self::Infinity) => 0.0,
            _ => f64::INFINITY,
        }
    }
}

impl From<Complex64> for Extended {
    fn from(z: Complex64) -> Self {
        Self::Finite(z)
    }
}

/// Fractional-linear map w = (a·u + b)/(c·u + d) with u = z, or u = z̄ when
/// the map is anticonformal.
///
/// The coefficients are never normalised: any nonzero multiple of
/// (a, b, c, d) denotes the same map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub anticonformal: bool,
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl MobiusMap {
    pub fn new(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        anticonformal: bool,
    ) -> Result<Self, AlgebraError> {
        let m = Self {
            a,
            b,
            c,
            d,
            anticonformal,
        };
        let det = m.determinant();
        let scale = [a, b, c, d].iter().map(|x| x.norm()).fold(0.0, f64::max);
        if !det.is_finite() || det.norm() <= f64::EPSILON * scale * scale {
            return Err(AlgebraError::SingularMobius);
        }
        Ok(m)
    }

    /// Real-coefficient shorthand.
    pub fn real(a: f64, b: f64, c: f64, d: f64, anticonformal: bool) -> Result<Self, AlgebraError> {
        Self::new(a.into(), b.into(), c.into(), d.into(), anticonformal)
    }

    pub fn identity() -> Self {
        Self {
            a: ONE,
            b: ZERO,
            c: ZERO,
            d: ONE,
            anticonformal: false,
        }
    }

    /// z ↦ 1/z.
    pub fn reciprocal() -> Self {
        Self {
            a: ZERO,
            b: ONE,
            c: ONE,
            d: ZERO,
            anticonformal: false,
        }
    }

    /// z ↦ 1/z̄, inversion in the unit circle.
    pub fn unit_circle_inversion() -> Self {
        Self {
            anticonformal: true,
            ..Self::reciprocal()
        }
    }

    pub fn translation(t: Complex64) -> Self {
        Self {
            b: t,
            ..Self::identity()
        }
    }

    /// z ↦ λ·z.
    pub fn scaling(lambda: Complex64) -> Self {
        Self {
            a: lambda,
            ..Self::identity()
        }
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// The point sent to ∞, if finite.
    pub fn pole(&self) -> Option<Complex64> {
        if self.c == ZERO {
            return None;
        }
        let p = -self.d / self.c;
        // The map acts on z̄, so the pole in z is the conjugate.
        Some(if self.anticonformal { p.conj() } else { p })
    }

    /// Image of ∞.
    pub fn image_of_infinity(&self) -> Extended {
        if self.c == ZERO {
            Extended::Infinity
        } else {
            let w = self.a / self.c;
            Extended::Finite(w)
        }
    }

    pub fn apply(&self, z: Extended) -> Extended {
        let u = match z {
            Extended::Infinity => return self.image_of_infinity(),
            Extended::Finite(z) if self.anticonformal => z.conj(),
            Extended::Finite(z) => z,
        };
        let den = self.c * u + self.d;
        let den_scale = (self.c * u).norm() + self.d.norm();
        if den.norm() <= 4.0 * f64::EPSILON * den_scale {
            return Extended::Infinity;
        }
        Extended::Finite((self.a * u + self.b) / den)
    }

    /// Apply to a finite point; `None` if it lands on ∞.
    pub fn apply_finite(&self, z: Complex64) -> Option<Complex64> {
        self.apply(Extended::Finite(z)).finite()
    }

    /// `self ∘ inner`: apply `inner` first, then `self`.
    ///
    /// If `self` is anticonformal it conjugates the output of `inner`, which
    /// is the same as conjugating `inner`'s coefficients and its input. Two
    /// anticonformal maps therefore compose to a conformal one.
    pub fn compose(&self, inner: &Self) -> Self {
        let (a2, b2, c2, d2) = if self.anticonformal {
            (inner.a.conj(), inner.b.conj(), inner.c.conj(), inner.d.conj())
        } else {
            (inner.a, inner.b, inner.c, inner.d)
        };
        Self {
            a: self.a * a2 + self.b * c2,
            b: self.a * b2 + self.b * d2,
            c: self.c * a2 + self.d * c2,
            d: self.c * b2 + self.d * d2,
            anticonformal: self.anticonformal ^ inner.anticonformal,
        }
    }

    pub fn inverse(&self) -> Self {
        // For w = M(z̄) the inverse is z = conj(M⁻¹(w)) = conj(M⁻¹)(w̄).
        let (a, b, c, d) = (self.d, -self.b, -self.c, self.a);
        if self.anticonformal {
            Self {
                a: a.conj(),
                b: b.conj(),
                c: c.conj(),
                d: d.conj(),
                anticonformal: true,
            }
        } else {
            Self {
                a,
                b,
                c,
                d,
                anticonformal: false,
            }
        }
    }

    /// Equality up to a nonzero scalar factor, entries compared after
    /// dividing both maps by their entry at the position where `self` is
    /// largest.
    pub fn projectively_eq(&self, other: &Self, tol: f64) -> bool {
        if self.anticonformal != other.anticonformal {
            return false;
        }
        let lhs = [self.a, self.b, self.c, self.d];
        let rhs = [other.a, other.b, other.c, other.d];
        let pivot = (0..4)
            .max_by(|&i, &j| lhs[i].norm().total_cmp(&lhs[j].norm()))
            .unwrap_or(0);
        if rhs[pivot].norm() <= tol * lhs[pivot].norm() {
            return false;
        }
        lhs.iter()
            .zip(rhs.iter())
            .all(|(l, r)| (l / lhs[pivot] - r / rhs[pivot]).norm() <= tol)
    }

    /// Split a conformal map with c ≠ 0 into translation, reciprocal,
    /// rotation-dilation and translation, so that
    /// `w₄ ∘ w₃ ∘ w₂ ∘ w₁` equals the map.
    pub fn decompose(&self) -> Result<[MobiusMap; 4], AlgebraError> {
        if self.anticonformal {
            return Err(AlgebraError::Anticonformal);
        }
        if self.c == ZERO {
            return Err(AlgebraError::AffineMap);
        }
        let c = self.c;
        Ok([
            Self::translation(self.d / c),
            Self::reciprocal(),
            Self::scaling(-self.determinant() / (c * c)),
            Self::translation(self.a / c),
        ])
    }
}

/// Compose a chain of maps, applied first to last.
pub fn compose_chain(maps: &[MobiusMap]) -> MobiusMap {
    maps.iter().fold(MobiusMap::identity(), |acc, m| m.compose(&acc))
}

/// Circle (or line) A(x² + y²) + 2Bx + C = 0 centred on the real axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleSpec {
    a: f64,
    b: f64,
    c: f64,
}

impl CircleSpec {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, AlgebraError> {
        let ok =
            [a, b, c].iter().all(|v| v.is_finite()) && a >= 0.0 && if a > 0.0 { b * b - a * c > 0.0 } else { b != 0.0 };
        if ok {
            Ok(Self { a, b, c })
        } else {
            Err(AlgebraError::DegenerateCircle { a, b, c })
        }
    }

    /// Circle with the given real centre and radius.
    pub fn centered(center: f64, radius: f64) -> Result<Self, AlgebraError> {
        Self::new(1.0, -center, center * center - radius * radius)
    }

    pub fn unit() -> Self {
        Self {
            a: 1.0,
            b: 0.0,
            c: -1.0,
        }
    }

    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn is_line(&self) -> bool {
        self.a == 0.0
    }

    /// Centre (−B/A, 0), or `None` for a line.
    pub fn center(&self) -> Option<Complex64> {
        (!self.is_line()).then(|| Complex64::new(-self.b / self.a, 0.0))
    }

    pub fn radius(&self) -> Option<f64> {
        (!self.is_line()).then(|| (self.b * self.b - self.a * self.c).sqrt() / self.a)
    }

    /// Value of A|z|² + 2B·Re z + C, zero on the curve.
    pub fn residual(&self, z: Complex64) -> f64 {
        self.a * z.norm_sqr() + 2.0 * self.b * z.re + self.c
    }

    /// `count` points on the curve. Circles are sampled at angles
    /// 2π(j + ½)/count; lines x = −C/(2B) at y ∈ [−span, span].
    pub fn sample(&self, count: usize, span: f64) -> Vec<Complex64> {
        match (self.center(), self.radius()) {
            (Some(c), Some(r)) => (0..count)
                .map(|j| {
                    let t = std::f64::consts::TAU * (j as f64 + 0.5) / count as f64;
                    c + Complex64::from_polar(r, t)
                })
                .collect(),
            _ => {
                let x = -self.c / (2.0 * self.b);
                let step = if count > 1 {
                    2.0 * span / (count - 1) as f64
                } else {
                    0.0
                };
                (0..count).map(|j| Complex64::new(x, -span + step * j as f64)).collect()
            }
        }
    }
}

/// Inversion in the circle: w = −(B·z̄ + C)/(A·z̄ + B).
///
/// For a line (A = 0) the same coefficients give the reflection
/// w = −z̄ − C/B in x = −C/(2B).
pub fn circle_inversion(spec: &CircleSpec) -> Result<MobiusMap, AlgebraError> {
    let (a, b, c) = spec.coefficients();
    if a == 0.0 && b == 0.0 {
        return Err(AlgebraError::DegenerateCircle { a, b, c });
    }
    MobiusMap::real(-b, -c, a, b, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_fixes_points() {
        let z = c(3.0, 4.0);
        assert_eq!(MobiusMap::identity().apply(z.into()), Extended::Finite(z));
    }

    #[test]
    fn reciprocal_and_pole() {
        let m = MobiusMap::reciprocal();
        assert_eq!(m.apply_finite(c(2.0, 0.0)), Some(c(0.5, 0.0)));
        assert_eq!(m.apply(c(0.0, 0.0).into()), Extended::Infinity);
        assert_eq!(m.apply(Extended::Infinity), Extended::Finite(c(0.0, 0.0)));
    }

    #[test]
    fn anticonformal_reciprocal_is_inverse_radius() {
        let m = MobiusMap::unit_circle_inversion();
        let (x, y) = (0.3, -1.7);
        let w = m.apply_finite(c(x, y)).unwrap();
        let r2 = x * x + y * y;
        assert!((w - c(x / r2, y / r2)).norm() < 1e-15);
    }

    #[test]
    fn composition_rules() {
        let m = MobiusMap::real(1.0, 2.0, -1.0, 3.0, false).unwrap();
        assert!(m.compose(&MobiusMap::identity()).projectively_eq(&m, 1e-15));
        let inv = MobiusMap::unit_circle_inversion();
        let twice = inv.compose(&inv);
        assert!(!twice.anticonformal);
        assert!(twice.projectively_eq(&MobiusMap::identity(), 1e-15));
        let r = MobiusMap::reciprocal();
        assert!(r.compose(&r).projectively_eq(&MobiusMap::identity(), 1e-15));
    }

    #[test]
    fn inverse_undoes_map() {
        let m = MobiusMap::new(c(1.0, 2.0), c(0.5, -1.0), c(2.0, 0.3), c(-1.0, 1.0), true).unwrap();
        let id = m.compose(&m.inverse());
        assert!(id.projectively_eq(&MobiusMap::identity(), 1e-12));
        let z = c(0.7, 0.2);
        let back = m.inverse().apply(m.apply(z.into())).finite().unwrap();
        assert!((back - z).norm() < 1e-12);
    }

    #[test]
    fn anticonformal_pole_is_conjugated() {
        let m = MobiusMap::new(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, -1.0), true).unwrap();
        // c·z̄ + d = 0 ⇔ z̄ = i ⇔ z = −i
        assert_eq!(m.pole(), Some(c(0.0, -1.0)));
        assert!(m.apply(c(0.0, -1.0).into()).is_infinite());
    }

    #[test]
    fn decomposition_substitutions() {
        let parts = MobiusMap::real(0.0, 1.0, 1.0, 0.0, false).unwrap().decompose().unwrap();
        assert_eq!(parts[0], MobiusMap::translation(c(0.0, 0.0)));
        assert_eq!(parts[1], MobiusMap::reciprocal());
        assert_eq!(parts[2], MobiusMap::scaling(c(1.0, 0.0)));
        assert_eq!(parts[3], MobiusMap::translation(c(0.0, 0.0)));

        let parts = MobiusMap::real(1.0, 1.0, 1.0, 0.0, false).unwrap().decompose().unwrap();
        assert_eq!(parts[2], MobiusMap::scaling(c(1.0, 0.0)));
        assert_eq!(parts[3], MobiusMap::translation(c(1.0, 0.0)));
    }

    #[test]
    fn decomposition_errors() {
        let affine = MobiusMap::real(2.0, 1.0, 0.0, 1.0, false).unwrap();
        assert!(matches!(affine.decompose(), Err(AlgebraError::AffineMap)));
        assert!(matches!(
            MobiusMap::unit_circle_inversion().decompose(),
            Err(AlgebraError::Anticonformal)
        ));
    }

    #[test]
    fn singular_maps_are_rejected() {
        assert!(MobiusMap::real(1.0, 2.0, 2.0, 4.0, false).is_err());
    }

    #[test]
    fn unit_circle_inversion_from_spec() {
        let m = circle_inversion(&CircleSpec::new(1.0, 0.0, -1.0).unwrap()).unwrap();
        assert!(m.projectively_eq(&MobiusMap::unit_circle_inversion(), 0.0));
        assert!((m.apply_finite(c(2.0, 0.0)).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        let on_circle = Complex64::from_polar(1.0, 0.9);
        assert!((m.apply_finite(on_circle).unwrap() - on_circle).norm() < 1e-15);
    }

    #[test]
    fn general_circle_inversion_fixes_its_circle() {
        let spec = CircleSpec::centered(-2.0, 1.5).unwrap();
        assert_eq!(spec.center(), Some(c(-2.0, 0.0)));
        assert!((spec.radius().unwrap() - 1.5).abs() < 1e-15);
        let m = circle_inversion(&spec).unwrap();
        for z in spec.sample(16, 1.0) {
            assert!((m.apply_finite(z).unwrap() - z).norm() < 1e-12);
        }
        // the centre goes to infinity
        assert!(m.apply(c(-2.0, 0.0).into()).is_infinite());
    }

    #[test]
    fn line_case_reflects() {
        // A = 0, B = −1, C = 2: the line x = 1, w = −z̄ + 2
        let spec = CircleSpec::new(0.0, -1.0, 2.0).unwrap();
        let m = circle_inversion(&spec).unwrap();
        let w = m.apply_finite(c(3.0, 1.0)).unwrap();
        assert!((w - c(-1.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn degenerate_circles() {
        assert!(CircleSpec::new(0.0, 0.0, 1.0).is_err());
        assert!(CircleSpec::new(1.0, 0.0, 1.0).is_err());
        assert!(CircleSpec::new(-1.0, 0.0, 1.0).is_err());
    }
}
