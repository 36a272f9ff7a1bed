//! JSON point-set and tiling documents, SVG rendering.
//!
//! Both documents carry `format_version: 1`. Floats are written in
//! shortest round-trip form and parsed exactly, so `read(write(doc))`
//! reproduces every field bit for bit.

mod points;
mod svg;
mod tiling_doc;

use std::path::{Path, PathBuf};

pub use points::{PointRecord, PointSetDocument};
pub use svg::{write_svg, RenderOptions, DEFAULT_PALETTE};
pub use tiling_doc::{TilingDocument, XY};

use crate::quasilattice::LatticeError;
use crate::tiling::TilingError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("unsupported format_version {0}, expected {FORMAT_VERSION}")]
    FormatVersion(u32),
    #[error("point {index}: {expected} coefficients expected, found {found}")]
    CoeffLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("point {index}: coefficients embed {distance:e} away from (x, y)")]
    CoeffMismatch { index: usize, distance: f64 },
    #[error("point {index}: non-finite coordinate")]
    NonFinite { index: usize },
    #[error("point {0} has no exact coefficients")]
    MissingCoeffs(usize),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("metadata {key}: {message}")]
    Metadata { key: String, message: String },
    #[error("render options: {0}")]
    Render(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

pub(crate) fn read_text(path: &Path) -> Result<String, DocumentError> {
    std::fs::read_to_string(path).map_err(|source| DocumentError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<(), DocumentError> {
    std::fs::write(path, text).map_err(|source| DocumentError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialise");
    s.push('\n');
    s
}
