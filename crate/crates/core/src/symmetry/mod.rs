//! Similarity operations, discrete similarity-symmetry groups and orbits.

mod group;
mod plane;
mod space;
mod symbol;

pub use group::{
    fixed_point_check, orbit, orbit_with_budget, random_words, GroupWord, Letter, SimilarityGroup, ORBIT_BUDGET,
    ORBIT_TOLERANCE,
};
pub use plane::{apply_similarity2d, compose_similarity2d, normalize_angle, Similarity2D, SimilarityKind};
pub use space::{apply_similarity3d, distance3, norm3, Similarity3D, SimilarityKind3D, Vec3};
pub use symbol::{default_coefficient, parse_symbol};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymmetryError {
    #[error("homothety coefficient must be positive and finite, got {0}")]
    NonPositiveCoefficient(f64),
    #[error("non-finite parameter")]
    NonFinite,
    #[error("special points differ")]
    CentersDiffer,
    #[error("axis must be a unit vector, |l| = {0}")]
    AxisNotUnit(f64),
    #[error("operations act about different axes")]
    AxesDiffer,
    #[error("group has no generators")]
    EmptyGroup,
    #[error("invalid annulus [{0}, {1}]")]
    BadAnnulus(f64, f64),
    #[error("seed point coincides with the special point")]
    SeedAtCenter,
    #[error("orbit not discrete in annulus: more than {0} points")]
    NotDiscrete(usize),
    #[error("symbol error at {position}: {message}")]
    Symbol { position: usize, message: String },
}
