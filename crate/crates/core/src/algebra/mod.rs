//! Exact quadratic integers, Möbius maps and generator matrices.

mod generators;
mod mobius;
mod quadratic;

pub use generators::{check_generator_relations, modular_reflections, GeneratorMatrix, Matrix2, RelationReport, Word};
pub use mobius::{circle_inversion, compose_chain, CircleSpec, Extended, MobiusMap};
pub use quadratic::{
    euler_phi, metallic_power, quad_mul, recurrence_sequence, MetallicMean, QuadraticInteger, QuadraticRing,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("unsupported discriminant {0}: expected 2, 3 or 5")]
    UnsupportedDiscriminant(i64),
    #[error("ring mismatch: d = {left} vs d = {right}")]
    RingMismatch { left: i64, right: i64 },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("{} is not a unit: negative powers are not quadratic integers", .0.symbol())]
    NotAUnit(MetallicMean),
    #[error("unknown metallic mean {0:?}")]
    UnknownMean(String),
    #[error("Möbius map has zero determinant")]
    SingularMobius,
    #[error("affine map, no inversion factor")]
    AffineMap,
    #[error("anticonformal map cannot be decomposed into conformal factors")]
    Anticonformal,
    #[error("degenerate circle A={a}, B={b}, C={c}")]
    DegenerateCircle { a: f64, b: f64, c: f64 },
    #[error("generator determinant must be ±1, got {0}")]
    GeneratorDeterminant(i64),
    #[error("relation references unknown generator R{0}")]
    UnknownGenerator(usize),
    #[error("bad relation word at position {position}: {message}")]
    WordSyntax { position: usize, message: String },
}
