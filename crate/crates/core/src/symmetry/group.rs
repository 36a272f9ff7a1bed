use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::{Similarity2D, SymmetryError};
#[cfg(feature = "parallel")]
use crate::par::*;
use crate::PointIndex;

/// Points kept before an orbit is declared non-discrete.
pub const ORBIT_BUDGET: usize = 1_000_000;

/// BFS levels smaller than this are expanded on the calling thread.
const PARALLEL_LEVEL: usize = 256;

/// Dedup tolerance for orbit points.
pub const ORBIT_TOLERANCE: f64 = 1e-9;

/// Finite model of a discrete similarity-symmetry group: generators with a
/// common special point, acting on the annulus r_min ≤ |z − O| ≤ r_max.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimilarityGroup {
    generators: Vec<Similarity2D>,
    symbol: String,
    center: Complex64,
    annulus: (f64, f64),
}

impl SimilarityGroup {
    pub fn new(
        generators: Vec<Similarity2D>,
        symbol: impl Into<String>,
        annulus: (f64, f64),
    ) -> Result<Self, SymmetryError> {
        let center = generators
            .first()
            .map(Similarity2D::center)
            .ok_or(SymmetryError::EmptyGroup)?;
        if generators.iter().any(|g| g.center() != center) {
            return Err(SymmetryError::CentersDiffer);
        }
        check_annulus(annulus)?;
        Ok(Self {
            generators,
            symbol: symbol.into(),
            center,
            annulus,
        })
    }

    pub fn generators(&self) -> &[Similarity2D] {
        &self.generators
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    /// The special point O shared by every generator.
    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn annulus(&self) -> (f64, f64) {
        self.annulus
    }

    pub fn with_annulus(mut self, annulus: (f64, f64)) -> Result<Self, SymmetryError> {
        check_annulus(annulus)?;
        self.annulus = annulus;
        Ok(self)
    }

    /// Move every generator to a new special point.
    pub fn with_center(mut self, center: Complex64) -> Self {
        self.generators = self
            .generators
            .iter()
            .map(|g| {
                Similarity2D::new(g.k(), g.phi(), g.reflects(), g.axis_angle(), center)
                    .expect("parameters already validated")
            })
            .collect();
        self.center = center;
        self
    }

    fn in_annulus(&self, z: Complex64) -> bool {
        let r = (z - self.center).norm();
        let (lo, hi) = self.annulus;
        r >= lo * (1.0 - 1e-12) && r <= hi * (1.0 + 1e-12)
    }

    /// Generators followed by their inverses.
    fn operations(&self) -> Vec<Similarity2D> {
        self.generators
            .iter()
            .copied()
            .chain(self.generators.iter().map(Similarity2D::inverse))
            .collect()
    }

    /// Evaluate a word at `z`, rightmost letter first.
    pub fn apply_word(&self, word: &GroupWord, z: Complex64) -> Complex64 {
        word.letters.iter().rev().fold(z, |acc, letter| {
            let g = &self.generators[letter.generator];
            if letter.inverse {
                g.inverse().apply(acc)
            } else {
                g.apply(acc)
            }
        })
    }
}

fn check_annulus((lo, hi): (f64, f64)) -> Result<(), SymmetryError> {
    if lo > 0.0 && lo < hi && hi.is_finite() {
        Ok(())
    } else {
        Err(SymmetryError::BadAnnulus(lo, hi))
    }
}

/// Breadth-first closure of `seed` under the generators and their inverses,
/// restricted to the group's annulus and deduplicated at
/// [`ORBIT_TOLERANCE`]. Output is in discovery order.
///
/// Each BFS level is mapped in parallel; deduplication is a single-owner
/// pass over the level in order, so the result does not depend on the
/// thread count.
pub fn orbit(group: &SimilarityGroup, seed: &[Complex64]) -> Result<Vec<Complex64>, SymmetryError> {
    orbit_with_budget(group, seed, ORBIT_BUDGET)
}

/// [`orbit`] with a custom point budget.
pub fn orbit_with_budget(
    group: &SimilarityGroup,
    seed: &[Complex64],
    budget: usize,
) -> Result<Vec<Complex64>, SymmetryError> {
    if seed.iter().any(|&z| (z - group.center).norm() <= ORBIT_TOLERANCE) {
        return Err(SymmetryError::SeedAtCenter);
    }
    let ops = group.operations();
    let mut index = PointIndex::new(ORBIT_TOLERANCE);
    let mut frontier: Vec<Complex64> = seed
        .iter()
        .copied()
        .filter(|&z| group.in_annulus(z) && index.insert_unique(z).1)
        .collect();
    while !frontier.is_empty() {
        let expand = |z: &Complex64| -> Vec<Complex64> {
            ops.iter()
                .map(|op| op.apply(*z))
                .filter(|&w| group.in_annulus(w))
                .collect()
        };
        let images: Vec<Vec<Complex64>> = if frontier.len() >= PARALLEL_LEVEL {
            par_iter!(frontier).map(expand).collect()
        } else {
            frontier.iter().map(expand).collect()
        };
        let mut next = Vec::new();
        for w in images.into_iter().flatten() {
            if index.insert_unique(w).1 {
                if index.len() > budget {
                    return Err(SymmetryError::NotDiscrete(budget));
                }
                next.push(w);
            }
        }
        frontier = next;
    }
    Ok(index.points().to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// Product of generators and inverses, applied right to left.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupWord {
    pub letters: Vec<Letter>,
}

impl GroupWord {
    pub fn random<R: Rng + ?Sized>(rng: &mut R, generators: usize, max_len: usize) -> Self {
        let len = rng.gen_range(0..=max_len);
        Self {
            letters: (0..len)
                .map(|_| Letter {
                    generator: rng.gen_range(0..generators),
                    inverse: rng.gen_bool(0.5),
                })
                .collect(),
        }
    }
}

/// `count` random words of length ≤ `max_len`.
pub fn random_words<R: Rng + ?Sized>(
    group: &SimilarityGroup,
    rng: &mut R,
    count: usize,
    max_len: usize,
) -> Vec<GroupWord> {
    (0..count)
        .map(|_| GroupWord::random(rng, group.generators.len(), max_len))
        .collect()
}

/// Largest displacement of the special point O over the given words. Every
/// element of the group fixes O, so this is zero up to rounding.
pub fn fixed_point_check(group: &SimilarityGroup, words: &[GroupWord]) -> f64 {
    let o = group.center;
    words
        .iter()
        .map(|w| (group.apply_word(w, o) - o).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use std::f64::consts::PI;

    const ORIGIN: Complex64 = Complex64::new(0.0, 0.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    fn tau() -> f64 {
        (1.0 + 5f64.sqrt()) / 2.0
    }

    #[test]
    fn single_spiral_orbit() {
        let t = tau();
        let l = Similarity2D::spiral(t, PI / 5.0, ORIGIN).unwrap();
        let g = SimilarityGroup::new(vec![l], "L", (t.powi(-3), t.powi(3))).unwrap();
        let pts = orbit(&g, &[ONE]).unwrap();
        assert_eq!(pts.len(), 7);
        for n in -3..=3 {
            let expected = Complex64::from_polar(t.powi(n), n as f64 * PI / 5.0);
            assert!(pts.iter().any(|z| (z - expected).norm() < 1e-9), "n = {n}");
        }
    }

    #[test]
    fn empty_seed() {
        let g = SimilarityGroup::new(vec![Similarity2D::homothety(2.0, ORIGIN).unwrap()], "1K", (0.5, 2.0)).unwrap();
        assert!(orbit(&g, &[]).unwrap().is_empty());
        assert!(matches!(orbit(&g, &[ORIGIN]), Err(SymmetryError::SeedAtCenter)));
    }

    #[test]
    fn irrational_rotation_exhausts_budget() {
        let g = SimilarityGroup::new(vec![Similarity2D::rotation(1.0, ORIGIN)], "irr", (0.5, 2.0)).unwrap();
        assert_eq!(
            orbit_with_budget(&g, &[ONE], 5000),
            Err(SymmetryError::NotDiscrete(5000))
        );
    }

    #[test]
    fn construction_checks() {
        let a = Similarity2D::rotation(1.0, ORIGIN);
        let b = Similarity2D::rotation(1.0, ONE);
        assert!(matches!(
            SimilarityGroup::new(vec![a, b], "x", (0.5, 2.0)),
            Err(SymmetryError::CentersDiffer)
        ));
        assert!(SimilarityGroup::new(vec![a], "x", (2.0, 1.0)).is_err());
        assert!(SimilarityGroup::new(vec![], "x", (0.5, 1.0)).is_err());
    }

    #[test]
    fn words_fix_center() {
        let o = Complex64::new(3.0, 4.0);
        let g = SimilarityGroup::new(
            vec![
                Similarity2D::rotation(PI / 5.0, o),
                Similarity2D::spiral(tau(), -PI / 5.0, o).unwrap(),
                Similarity2D::mirror(0.3, o),
            ],
            "test",
            (0.1, 10.0),
        )
        .unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let words = random_words(&g, &mut rng, 100, 8);
        assert!(fixed_point_check(&g, &words) < 1e-12);
        assert_eq!(fixed_point_check(&g, &[]), 0.0);
    }
}
