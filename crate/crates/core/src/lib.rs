//! Similarity-symmetry tooling for crystal sets and quasilattices.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: exact quadratic integers (metallic means), Möbius maps,
//!   circle inversions and integer generator matrices.
//! * [`quasilattice`]: periodic lattices and n-fold quasilattices in exact
//!   cyclotomic coordinates, with metallic-mean inflation.
//! * [`symmetry`]: the similarity operations K, L, M (plane) and K, L, M, L̄
//!   (space), orbits under discrete groups and group-symbol parsing.
//! * [`conformal`]: z², reciprocal, circle inversion, Möbius and
//!   stereographic images of point sets.
//! * [`tiling`]: nearest-neighbour edges, sector/shell cells and colourings.
//! * [`io`]: the JSON point-set and tiling documents and SVG rendering.
//!
//! With the default `parallel` feature the data-parallel loops run on rayon;
//! without it every loop runs sequentially with identical results.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

#[macro_use]
mod par;

pub mod algebra;
pub mod conformal;
pub mod io;
pub mod quasilattice;
pub mod symmetry;
pub mod tiling;

mod geom;
mod index;

pub use index::PointIndex;
pub use par::is_parallel;

pub use num_complex::Complex64;

/// Default embedding tolerance for deduplication and point matching.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Umbrella error for callers that mix modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Lattice(#[from] quasilattice::LatticeError),
    #[error(transparent)]
    Symmetry(#[from] symmetry::SymmetryError),
    #[error(transparent)]
    Conformal(#[from] conformal::ConformalError),
    #[error(transparent)]
    Tiling(#[from] tiling::TilingError),
    #[error(transparent)]
    Io(#[from] io::DocumentError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
