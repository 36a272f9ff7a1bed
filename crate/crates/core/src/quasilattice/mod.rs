//! Periodic lattices and n-fold quasilattices in cyclotomic coordinates.
//!
//! A quasilattice of order n is the set of points Σ cᵢ ζₙⁱ with every cᵢ in
//! a bounded integer range, cut to a disk. The set is closed under
//! multiplication by ζₙ (a cyclic shift of coefficients) and under complex
//! conjugation (index reversal), so its point group contains Dₙ.

mod point;

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use crate::par::*;
use crate::PointIndex;

pub use point::{roots_of_unity, CyclotomicPoint, HomothetyKernel};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("symmetry order must be at least 3, got {0}")]
    OrderTooSmall(usize),
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientLength { expected: usize, found: usize },
    #[error("orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("no homothety coefficient is assigned to order {0}")]
    NoHomothety(usize),
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("integer overflow in coefficient arithmetic")]
    Overflow,
    #[error("set carries no generation parameters to rebuild a reference from")]
    NoGenerationParameters,
    #[error("vertex classes need a prime order, got {0}")]
    VertexClassNeedsPrime(usize),
    #[error("point {index} lies within tolerance of an earlier point")]
    DuplicatePoint { index: usize },
}

/// Rotation orders with a well-studied quasilattice; others are accepted but
/// flagged.
pub const STANDARD_ORDERS: [usize; 7] = [5, 8, 10, 12, 14, 16, 18];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Square,
    Hexagonal,
    Quasilattice,
}

impl LatticeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Square => "square",
            Self::Hexagonal => "hexagonal",
            Self::Quasilattice => "quasilattice",
        }
    }
}

impl std::str::FromStr for LatticeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "square" => Ok(Self::Square),
            "hexagonal" => Ok(Self::Hexagonal),
            "quasilattice" => Ok(Self::Quasilattice),
            other => Err(format!("unknown lattice kind {other:?}")),
        }
    }
}

/// How a set was produced, kept so a scaled reference can be rebuilt.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Generation {
    /// Periodic lattice cut to a disk.
    Disk { radius: f64 },
    /// Periodic lattice cut to its own polygon (square or hexagon) of the
    /// given integer half-width.
    Polygon { half_width: i64 },
    /// Coefficients in [−bound, bound], optionally one vertex class.
    Quasilattice {
        bound: i64,
        radius: f64,
        vertex_class: Option<i64>,
        unite_negation: bool,
    },
    /// Loaded from points without generation parameters.
    Explicit,
}

/// Finite point set with exact coordinates and a tolerance-deduplicated
/// embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct CrystalSet {
    n: usize,
    kind: LatticeKind,
    points: Vec<CyclotomicPoint>,
    embedded: Vec<Complex64>,
    tolerance: f64,
    radius: f64,
    generation: Generation,
    nonstandard_order: bool,
}

impl CrystalSet {
    /// Build a set from explicit exact points. Fails if two points embed
    /// within `tolerance` of each other.
    pub fn from_points(
        n: usize,
        kind: LatticeKind,
        points: Vec<CyclotomicPoint>,
        tolerance: f64,
    ) -> Result<Self, LatticeError> {
        if tolerance <= 0.0 {
            return Err(LatticeError::NonPositive("tolerance"));
        }
        let roots = roots_of_unity(n);
        let mut index = PointIndex::new(tolerance);
        for (i, p) in points.iter().enumerate() {
            if p.order() != n {
                return Err(LatticeError::OrderMismatch(n, p.order()));
            }
            if !index.insert_unique(p.embed_with(&roots)).1 {
                return Err(LatticeError::DuplicatePoint { index: i });
            }
        }
        let embedded = index.points().to_vec();
        let radius = embedded.iter().map(|z| z.norm()).fold(0.0, f64::max);
        Ok(Self {
            n,
            kind,
            points,
            embedded,
            tolerance,
            radius,
            generation: Generation::Explicit,
            nonstandard_order: kind == LatticeKind::Quasilattice && !STANDARD_ORDERS.contains(&n),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn points(&self) -> &[CyclotomicPoint] {
        &self.points
    }

    pub fn embedded(&self) -> &[Complex64] {
        &self.embedded
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Generation cutoff radius (for explicit sets, the largest modulus).
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn generation(&self) -> Generation {
        self.generation
    }

    /// Set when a quasilattice order outside [`STANDARD_ORDERS`] was used.
    pub fn nonstandard_order(&self) -> bool {
        self.nonstandard_order
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Tolerance index over the embedded points.
    pub fn index(&self) -> PointIndex {
        PointIndex::from_points(&self.embedded, self.tolerance)
    }

    pub fn with_generation(mut self, generation: Generation) -> Self {
        self.generation = generation;
        if let Generation::Disk { radius } | Generation::Quasilattice { radius, .. } = generation {
            self.radius = radius;
        }
        self
    }

    /// Largest m ≤ 24 whose rotation maps the set onto itself.
    pub fn point_group_order(&self) -> usize {
        point_group_order(&self.embedded, self.tolerance)
    }
}

fn inside(norm_sqr: f64, radius: f64) -> bool {
    // relative slack keeps points exactly on the cutoff circle in every
    // rotated copy
    norm_sqr <= radius * radius * (1.0 + 1e-12)
}

/// Square or hexagonal lattice points within `radius` of the origin.
///
/// Square points are x + y·i (n = 4 coordinates), hexagonal points
/// a + b·ζ₆ (n = 6 coordinates).
pub fn generate_periodic(kind: LatticeKind, radius: f64) -> Result<CrystalSet, LatticeError> {
    if !(radius > 0.0) {
        return Err(LatticeError::NonPositive("radius"));
    }
    let reach = (2.0 * radius).ceil() as i64;
    let mut points = Vec::new();
    let (n, norm): (usize, fn(i64, i64) -> i64) = match kind {
        LatticeKind::Square => (4, |x, y| x * x + y * y),
        LatticeKind::Hexagonal => (6, |a, b| a * a + a * b + b * b),
        LatticeKind::Quasilattice => {
            return Err(LatticeError::NoGenerationParameters);
        }
    };
    for a in -reach..=reach {
        for b in -reach..=reach {
            if inside(norm(a, b) as f64, radius) {
                points.push(lattice_point(n, a, b));
            }
        }
    }
    Ok(
        CrystalSet::from_points(n, kind, points, crate::DEFAULT_TOLERANCE)?
            .with_generation(Generation::Disk { radius }),
    )
}

/// Square lattice with |x|, |y| ≤ `half_width`, or hexagonal lattice
/// a + b·ζ₆ with max(|a|, |b|, |a + b|) ≤ `half_width`: the lattice cut to
/// its own polygon so that each polygon side is a full row of points.
pub fn generate_periodic_polygon(kind: LatticeKind, half_width: i64) -> Result<CrystalSet, LatticeError> {
    if half_width < 1 {
        return Err(LatticeError::NonPositive("half_width"));
    }
    let h = half_width;
    let mut points = Vec::new();
    let n = match kind {
        LatticeKind::Square => 4,
        LatticeKind::Hexagonal => 6,
        LatticeKind::Quasilattice => return Err(LatticeError::NoGenerationParameters),
    };
    for a in -h..=h {
        for b in -h..=h {
            if n == 4 || (a + b).abs() <= h {
                points.push(lattice_point(n, a, b));
            }
        }
    }
    Ok(CrystalSet::from_points(n, kind, points, crate::DEFAULT_TOLERANCE)?
        .with_generation(Generation::Polygon { half_width }))
}

fn lattice_point(n: usize, a: i64, b: i64) -> CyclotomicPoint {
    let mut coeffs = vec![0; n];
    coeffs[0] = a;
    coeffs[1] = b;
    CyclotomicPoint::new(n, coeffs).expect("n >= 4")
}

/// Parameters for [`generate_quasilattice_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasilatticeConfig {
    pub n: usize,
    pub bound: i64,
    pub radius: f64,
    pub tolerance: f64,
    /// Keep only points whose coefficient sum is ≡ r (mod n). Only defined
    /// for prime n, where the sum mod n does not depend on the
    /// representative (the relations are multiples of (1, 1, …, 1)). Such a
    /// class is not closed under negation, so for odd n it has an n-fold
    /// rather than 2n-fold point group.
    pub vertex_class: Option<i64>,
    /// With a vertex class, also keep the class −r (the negated points).
    /// The unrestricted set is closed under negation already.
    pub unite_negation: bool,
}

impl QuasilatticeConfig {
    pub fn new(n: usize, bound: i64, radius: f64) -> Self {
        Self {
            n,
            bound,
            radius,
            tolerance: crate::DEFAULT_TOLERANCE,
            vertex_class: None,
            unite_negation: true,
        }
    }
}

/// All points Σ cᵢ ζₙⁱ with cᵢ ∈ [−bound, bound] inside `radius`,
/// deduplicated at `tolerance`.
pub fn generate_quasilattice(n: usize, bound: i64, radius: f64, tolerance: f64) -> Result<CrystalSet, LatticeError> {
    generate_quasilattice_with(&QuasilatticeConfig {
        tolerance,
        ..QuasilatticeConfig::new(n, bound, radius)
    })
}

/// Quasilattice generation as an iterated Minkowski sum.
///
/// Terms are added one root at a time. After each step partial sums that
/// coincide are merged (their continuations are identical), and partial
/// sums farther than `radius` plus the reach of the remaining terms are
/// dropped. This visits far fewer states than the (2B+1)ⁿ coefficient cube
/// because ℤ[ζₙ] has rank φ(n) < n.
pub fn generate_quasilattice_with(cfg: &QuasilatticeConfig) -> Result<CrystalSet, LatticeError> {
    let n = cfg.n;
    if n < 3 {
        return Err(LatticeError::OrderTooSmall(n));
    }
    if cfg.bound < 1 {
        return Err(LatticeError::NonPositive("coefficient bound"));
    }
    if !(cfg.radius > 0.0) {
        return Err(LatticeError::NonPositive("radius"));
    }
    if !(cfg.tolerance > 0.0) {
        return Err(LatticeError::NonPositive("tolerance"));
    }
    if cfg.vertex_class.is_some() && !is_prime(n) {
        return Err(LatticeError::VertexClassNeedsPrime(n));
    }
    let (lo, hi) = (-cfg.bound, cfg.bound);
    let roots = roots_of_unity(n);
    let slack = 1e-9 * cfg.radius.max(1.0);

    let mut states: Vec<(Vec<i64>, Complex64)> = vec![(vec![0; n], Complex64::new(0.0, 0.0))];
    for (i, &root) in roots.iter().enumerate() {
        let reach = cfg.bound as f64 * (n - 1 - i) as f64;
        let limit = cfg.radius + reach + slack;
        let expanded: Vec<Vec<(Vec<i64>, Complex64)>> = par_iter!(states)
            .map(|(coeffs, z)| {
                (lo..=hi)
                    .filter_map(|c| {
                        let w = z + root * c as f64;
                        (w.norm() <= limit).then(|| {
                            let mut next = coeffs.clone();
                            next[i] = c;
                            (next, w)
                        })
                    })
                    .collect()
            })
            .collect();
        let mut index = PointIndex::new(cfg.tolerance);
        states = expanded
            .into_iter()
            .flatten()
            .filter(|(_, w)| index.insert_unique(*w).1)
            .collect();
    }

    let (points, embedded): (Vec<_>, Vec<_>) = states
        .into_iter()
        .filter(|(_, z)| inside(z.norm_sqr(), cfg.radius))
        .filter(|(coeffs, _)| match cfg.vertex_class {
            None => true,
            Some(r) => {
                let class = coeffs.iter().sum::<i64>().rem_euclid(n as i64);
                class == r.rem_euclid(n as i64) || (cfg.unite_negation && class == (-r).rem_euclid(n as i64))
            }
        })
        .map(|(coeffs, z)| (CyclotomicPoint::new(n, coeffs).expect("length n"), z))
        .unzip();
    Ok(CrystalSet {
        n,
        kind: LatticeKind::Quasilattice,
        points,
        embedded,
        tolerance: cfg.tolerance,
        radius: cfg.radius,
        generation: Generation::Quasilattice {
            bound: cfg.bound,
            radius: cfg.radius,
            vertex_class: cfg.vertex_class,
            unite_negation: cfg.unite_negation,
        },
        nonstandard_order: !STANDARD_ORDERS.contains(&n),
    })
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Largest m ≤ 24 such that rotation about the origin by 2π/m maps the
/// points onto themselves within `tolerance`. A set fixed by every rotation
/// (empty, or only the origin) reports 24.
pub fn point_group_order(points: &[Complex64], tolerance: f64) -> usize {
    let index = PointIndex::from_points(points, tolerance);
    (2..=24usize)
        .rev()
        .find(|&m| {
            let rot = Complex64::from_polar(1.0, TAU / m as f64);
            par_iter!(points).all(|z| index.contains(rot * z))
        })
        .unwrap_or(1)
}

/// Result of [`verify_self_similarity`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelfSimilarityReport {
    pub checked: usize,
    pub contained: usize,
    /// Homothety coefficient used for the inflation.
    pub coefficient: f64,
    pub reference_points: usize,
    /// Largest |embed(inflate(p)) − k·embed(p)|.
    pub max_scale_error: f64,
}

impl SelfSimilarityReport {
    pub fn all_contained(&self) -> bool {
        self.checked == self.contained
    }
}

/// Inflate every point by the order's homothety coefficient and count how
/// many land on a point of the reference set rebuilt with radius k·r and,
/// for quasilattices, coefficient bound B·‖kernel‖₁.
pub fn verify_self_similarity(set: &CrystalSet) -> Result<SelfSimilarityReport, LatticeError> {
    if set.is_empty() {
        return Ok(SelfSimilarityReport {
            checked: 0,
            contained: 0,
            coefficient: HomothetyKernel::for_order(set.n).map_or(1.0, |k| k.coefficient),
            reference_points: 0,
            max_scale_error: 0.0,
        });
    }
    let kernel = HomothetyKernel::for_order(set.n)?;
    let k = kernel.coefficient;
    let reference = match set.generation {
        Generation::Disk { radius } => generate_periodic(set.kind, radius * k)?,
        Generation::Polygon { half_width } => generate_periodic_polygon(set.kind, half_width * 2)?,
        Generation::Quasilattice { bound, radius, .. } => {
            let bound = bound.checked_mul(kernel.l1_norm()).ok_or(LatticeError::Overflow)?;
            generate_quasilattice(set.n, bound, radius * k, set.tolerance)?
        }
        Generation::Explicit => return Err(LatticeError::NoGenerationParameters),
    };
    let index = reference.index();
    let roots = roots_of_unity(set.n);
    let results: Vec<Result<(bool, f64), LatticeError>> = par_range!(0..set.len())
        .map(|i| {
            let image = set.points[i].mul(&kernel.element)?.embed_with(&roots);
            Ok((index.contains(image), (image - set.embedded[i] * k).norm()))
        })
        .collect();
    let mut contained = 0;
    let mut max_scale_error: f64 = 0.0;
    for r in results {
        let (hit, err) = r?;
        contained += hit as usize;
        max_scale_error = max_scale_error.max(err);
    }
    Ok(SelfSimilarityReport {
        checked: set.len(),
        contained,
        coefficient: k,
        reference_points: reference.len(),
        max_scale_error,
    })
}
