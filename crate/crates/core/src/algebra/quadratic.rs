use std::fmt;

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// The quadratic rings the metallic means live in.
///
/// Each ring is ℤ[ω] for a generator ω with ω² = p·ω + q. For d = 2 and
/// d = 3 the generator is √d; for d = 5 it is the golden ratio τ, so that
/// golden-ratio tables are read off in the basis {τ, 1} directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuadraticRing {
    Sqrt2,
    Sqrt3,
    Golden,
}

impl QuadraticRing {
    pub fn from_discriminant(d: i64) -> Result<Self, AlgebraError> {
        match d {
            2 => Ok(Self::Sqrt2),
            3 => Ok(Self::Sqrt3),
            5 => Ok(Self::Golden),
            _ => Err(AlgebraError::UnsupportedDiscriminant(d)),
        }
    }

    pub fn discriminant(self) -> i64 {
        match self {
            Self::Sqrt2 => 2,
            Self::Sqrt3 => 3,
            Self::Golden => 5,
        }
    }

    /// `(p, q)` with ω² = p·ω + q.
    fn generator_poly(self) -> (i64, i64) {
        match self {
            Self::Sqrt2 => (0, 2),
            Self::Sqrt3 => (0, 3),
            Self::Golden => (1, 1),
        }
    }

    /// Numeric value of the generator ω.
    pub fn generator_value(self) -> f64 {
        match self {
            Self::Sqrt2 => std::f64::consts::SQRT_2,
            Self::Sqrt3 => 3f64.sqrt(),
            Self::Golden => (1.0 + 5f64.sqrt()) / 2.0,
        }
    }
}

/// Exact element `rational + radical·ω` of a [`QuadraticRing`].
///
/// For the √2 and √3 rings ω = √d; for d = 5 it is τ = (1+√5)/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticInteger {
    pub rational: i64,
    pub radical: i64,
    ring: QuadraticRing,
}

impl QuadraticInteger {
    pub fn new(rational: i64, radical: i64, d: i64) -> Result<Self, AlgebraError> {
        Ok(Self {
            rational,
            radical,
            ring: QuadraticRing::from_discriminant(d)?,
        })
    }

    pub const fn in_ring(rational: i64, radical: i64, ring: QuadraticRing) -> Self {
        Self {
            rational,
            radical,
            ring,
        }
    }

    pub const fn one(ring: QuadraticRing) -> Self {
        Self::in_ring(1, 0, ring)
    }

    pub fn ring(&self) -> QuadraticRing {
        self.ring
    }

    pub fn discriminant(&self) -> i64 {
        self.ring.discriminant()
    }

    /// Real embedding `rational + radical·ω`.
    pub fn embed(&self) -> f64 {
        self.rational as f64 + self.radical as f64 * self.ring.generator_value()
    }

    /// Galois conjugate (ω ↦ p − ω).
    pub fn conjugate(&self) -> Result<Self, AlgebraError> {
        let (p, _) = self.ring.generator_poly();
        let rational = self
            .radical
            .checked_mul(p)
            .and_then(|v| v.checked_add(self.rational))
            .ok_or(AlgebraError::Overflow)?;
        Ok(Self::in_ring(rational, -self.radical, self.ring))
    }

    /// Field norm x·x̄, an ordinary integer.
    pub fn norm(&self) -> Result<i64, AlgebraError> {
        let prod = self.checked_mul(&self.conjugate()?)?;
        debug_assert_eq!(prod.radical, 0);
        Ok(prod.rational)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_ring(other)?;
        Ok(Self::in_ring(
            self.rational
                .checked_add(other.rational)
                .ok_or(AlgebraError::Overflow)?,
            self.radical.checked_add(other.radical).ok_or(AlgebraError::Overflow)?,
            self.ring,
        ))
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self, AlgebraError> {
        Ok(Self::in_ring(
            self.rational.checked_mul(k).ok_or(AlgebraError::Overflow)?,
            self.radical.checked_mul(k).ok_or(AlgebraError::Overflow)?,
            self.ring,
        ))
    }

    /// Exact product in the ring.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_ring(other)?;
        let (p, q) = self.ring.generator_poly();
        let m = |x: i64, y: i64| x.checked_mul(y).ok_or(AlgebraError::Overflow);
        let a = |x: i64, y: i64| x.checked_add(y).ok_or(AlgebraError::Overflow);
        // (b1 + a1ω)(b2 + a2ω) = b1b2 + q·a1a2 + (a1b2 + a2b1 + p·a1a2)ω
        let rr = m(self.radical, other.radical)?;
        let rational = a(m(self.rational, other.rational)?, m(q, rr)?)?;
        let radical = a(
            a(m(self.radical, other.rational)?, m(other.radical, self.rational)?)?,
            m(p, rr)?,
        )?;
        Ok(Self::in_ring(rational, radical, self.ring))
    }

    /// Coordinates `(c, e)` of this element in the basis {mean, 1}, i.e.
    /// `self = c·mean + e`. This is how power tables are usually printed.
    pub fn in_mean_basis(&self, mean: MetallicMean) -> Result<(i64, i64), AlgebraError> {
        let m = mean.as_quadratic();
        self.same_ring(&m)?;
        // Every metallic mean here has radical part 1.
        debug_assert_eq!(m.radical, 1);
        let c = self.radical;
        let e = c
            .checked_mul(m.rational)
            .and_then(|v| self.rational.checked_sub(v))
            .ok_or(AlgebraError::Overflow)?;
        Ok((c, e))
    }

    fn same_ring(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch {
                left: self.discriminant(),
                right: other.discriminant(),
            })
        }
    }
}

/// Exact product; errors on mismatched rings or overflow.
pub fn quad_mul(x: &QuadraticInteger, y: &QuadraticInteger) -> Result<QuadraticInteger, AlgebraError> {
    x.checked_mul(y)
}

impl fmt::Display for QuadraticInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gen = match self.ring {
            QuadraticRing::Sqrt2 => "√2",
            QuadraticRing::Sqrt3 => "√3",
            QuadraticRing::Golden => "τ",
        };
        match (self.rational, self.radical) {
            (r, 0) => write!(f, "{r}"),
            (0, a) => write!(f, "{a}{gen}"),
            (r, a) if a < 0 => write!(f, "{r}-{}{gen}", -a),
            (r, a) => write!(f, "{r}+{a}{gen}"),
        }
    }
}

/// The three metallic means used as inflation factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetallicMean {
    /// Silver mean ρ = 1 + √2, root of x² − 2x − 1.
    Rho,
    /// Golden mean τ = (1 + √5)/2, root of x² − x − 1.
    Tau,
    /// Bronze mean η = 1 + √3 as used for 12-fold sets, root of x² − 2x − 2.
    Eta,
}

impl MetallicMean {
    pub const ALL: [MetallicMean; 3] = [Self::Rho, Self::Tau, Self::Eta];

    /// `(p, q)` with mean² = p·mean + q.
    pub fn minimal_poly(self) -> (i64, i64) {
        match self {
            Self::Rho => (2, 1),
            Self::Tau => (1, 1),
            Self::Eta => (2, 2),
        }
    }

    pub fn ring(self) -> QuadraticRing {
        match self {
            Self::Rho => QuadraticRing::Sqrt2,
            Self::Tau => QuadraticRing::Golden,
            Self::Eta => QuadraticRing::Sqrt3,
        }
    }

    pub fn as_quadratic(self) -> QuadraticInteger {
        match self {
            Self::Rho => QuadraticInteger::in_ring(1, 1, QuadraticRing::Sqrt2),
            Self::Tau => QuadraticInteger::in_ring(0, 1, QuadraticRing::Golden),
            Self::Eta => QuadraticInteger::in_ring(1, 1, QuadraticRing::Sqrt3),
        }
    }

    pub fn value(self) -> f64 {
        self.as_quadratic().embed()
    }

    /// A unit has an inverse inside the ring; η has norm −2 and does not.
    pub fn is_unit(self) -> bool {
        !matches!(self, Self::Eta)
    }

    /// The mean bound to a rotation order: τ for 5 and 10, ρ for 8, η for 12.
    pub fn for_order(n: usize) -> Option<Self> {
        match n {
            5 | 10 => Some(Self::Tau),
            8 => Some(Self::Rho),
            12 => Some(Self::Eta),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Self::Rho => "ρ",
            Self::Tau => "τ",
            Self::Eta => "η",
        }
    }
}

impl std::str::FromStr for MetallicMean {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rho" | "ρ" => Ok(Self::Rho),
            "tau" | "τ" => Ok(Self::Tau),
            "eta" | "η" => Ok(Self::Eta),
            other => Err(AlgebraError::UnknownMean(other.to_string())),
        }
    }
}

/// `meanⁿ` as an exact ring element.
///
/// Non-negative powers come from the recurrence mean·(c·mean + e) =
/// (p·c + e)·mean + q·c. Negative powers are powers of the inverse unit,
/// which only exists for ρ and τ.
pub fn metallic_power(mean: MetallicMean, n: i64) -> Result<QuadraticInteger, AlgebraError> {
    let base = mean.as_quadratic();
    if n >= 0 {
        let (p, q) = mean.minimal_poly();
        let (mut c, mut e) = (0i64, 1i64);
        for _ in 0..n {
            let next_c = p
                .checked_mul(c)
                .and_then(|v| v.checked_add(e))
                .ok_or(AlgebraError::Overflow)?;
            e = q.checked_mul(c).ok_or(AlgebraError::Overflow)?;
            c = next_c;
        }
        return base
            .checked_scale(c)?
            .checked_add(&QuadraticInteger::in_ring(e, 0, mean.ring()));
    }
    if !mean.is_unit() {
        return Err(AlgebraError::NotAUnit(mean));
    }
    // x⁻¹ = x̄ / N(x) with N(x) = ±1.
    let norm = base.norm()?;
    let inverse = base.conjugate()?.checked_scale(norm)?;
    let mut acc = QuadraticInteger::one(mean.ring());
    for _ in 0..n.unsigned_abs() {
        acc = acc.checked_mul(&inverse)?;
    }
    Ok(acc)
}

/// First `len` coefficients of the mean in its successive powers:
/// 0, 1, p, p² + q, … (Fibonacci for τ, Pell for ρ).
pub fn recurrence_sequence(mean: MetallicMean, len: usize) -> Result<Vec<i64>, AlgebraError> {
    let (p, q) = mean.minimal_poly();
    let mut out = Vec::with_capacity(len);
    let (mut prev, mut cur) = (0i64, 1i64);
    for _ in 0..len {
        out.push(prev);
        let next = p
            .checked_mul(cur)
            .and_then(|a| q.checked_mul(prev).and_then(|b| a.checked_add(b)))
            .ok_or(AlgebraError::Overflow);
        prev = cur;
        // The overflow only matters if another term is requested.
        cur = match next {
            Ok(v) => v,
            Err(e) if out.len() + 1 < len => return Err(e),
            Err(_) => 0,
        };
    }
    Ok(out)
}

/// Euler's totient by trial factorisation.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi is defined for n >= 1");
    let mut result = n;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_basis(mean: MetallicMean, n: i64) -> (i64, i64) {
        metallic_power(mean, n).unwrap().in_mean_basis(mean).unwrap()
    }

    #[test]
    fn tau_sixth_power() {
        assert_eq!(mean_basis(MetallicMean::Tau, 6), (8, 5));
    }

    #[test]
    fn rho_cubed() {
        assert_eq!(mean_basis(MetallicMean::Rho, 3), (5, 2));
        // 5ρ + 2 = 7 + 5√2
        let x = metallic_power(MetallicMean::Rho, 3).unwrap();
        assert_eq!((x.rational, x.radical), (7, 5));
    }

    #[test]
    fn zeroth_power_is_one() {
        for mean in MetallicMean::ALL {
            assert_eq!(metallic_power(mean, 0).unwrap(), QuadraticInteger::one(mean.ring()));
        }
    }

    #[test]
    fn tau_inverse_is_tau_minus_one() {
        assert_eq!(mean_basis(MetallicMean::Tau, -1), (1, -1));
    }

    #[test]
    fn eta_has_no_inverse() {
        assert!(matches!(
            metallic_power(MetallicMean::Eta, -1),
            Err(AlgebraError::NotAUnit(MetallicMean::Eta))
        ));
        assert_eq!(MetallicMean::Eta.as_quadratic().norm().unwrap(), -2);
    }

    #[test]
    fn squares_from_the_tables() {
        let rho = MetallicMean::Rho.as_quadratic();
        let sq = quad_mul(&rho, &rho).unwrap();
        assert_eq!((sq.rational, sq.radical), (3, 2));
        let eta = MetallicMean::Eta.as_quadratic();
        let sq = quad_mul(&eta, &eta).unwrap();
        assert_eq!((sq.rational, sq.radical), (4, 2));
        let one = QuadraticInteger::one(QuadraticRing::Sqrt2);
        assert_eq!(quad_mul(&rho, &one).unwrap(), rho);
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let a = QuadraticInteger::new(1, 1, 2).unwrap();
        let b = QuadraticInteger::new(1, 1, 3).unwrap();
        assert!(matches!(
            quad_mul(&a, &b),
            Err(AlgebraError::RingMismatch { left: 2, right: 3 })
        ));
        assert!(QuadraticInteger::new(0, 1, 7).is_err());
    }

    #[test]
    fn sequences() {
        assert_eq!(
            recurrence_sequence(MetallicMean::Tau, 8).unwrap(),
            [0, 1, 1, 2, 3, 5, 8, 13]
        );
        assert_eq!(recurrence_sequence(MetallicMean::Rho, 6).unwrap(), [0, 1, 2, 5, 12, 29]);
        assert_eq!(recurrence_sequence(MetallicMean::Eta, 6).unwrap(), [0, 1, 2, 6, 16, 44]);
        assert!(recurrence_sequence(MetallicMean::Eta, 0).unwrap().is_empty());
    }

    #[test]
    fn power_overflow_is_reported() {
        assert!(matches!(
            metallic_power(MetallicMean::Eta, 200),
            Err(AlgebraError::Overflow)
        ));
    }

    #[test]
    fn totients() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(14), 6);
        assert_eq!(euler_phi(16), 8);
        assert_eq!(euler_phi(18), 6);
        assert_eq!(euler_phi(97), 96);
    }

    #[test]
    fn display() {
        assert_eq!(metallic_power(MetallicMean::Tau, 6).unwrap().to_string(), "5+8τ");
        assert_eq!(QuadraticInteger::new(-1, -2, 2).unwrap().to_string(), "-1-2√2");
    }
}
