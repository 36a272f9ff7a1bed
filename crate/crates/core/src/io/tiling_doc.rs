use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{read_text, to_json, write_text, DocumentError, FORMAT_VERSION};
use crate::tiling::Tiling;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XY {
    pub x: f64,
    pub y: f64,
}

impl From<Complex64> for XY {
    fn from(z: Complex64) -> Self {
        Self { x: z.re, y: z.im }
    }
}

impl From<XY> for Complex64 {
    fn from(p: XY) -> Self {
        Complex64::new(p.x, p.y)
    }
}

/// A tiling on disk: vertices, undirected edges, per-vertex sector, shell
/// and colour.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TilingDocument {
    pub format_version: u32,
    pub n_sectors: usize,
    pub tolerance: f64,
    pub origin: XY,
    pub vertices: Vec<XY>,
    pub edges: Vec<[usize; 2]>,
    pub sectors: Vec<usize>,
    pub shells: Vec<usize>,
    #[serde(default)]
    pub colors: Vec<usize>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

impl TilingDocument {
    pub fn from_tiling(t: &Tiling) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            n_sectors: t.n_sectors,
            tolerance: t.tolerance,
            origin: t.origin.into(),
            vertices: t.vertices.iter().map(|&z| z.into()).collect(),
            edges: t.edges.iter().map(|&(a, b)| [a, b]).collect(),
            sectors: t.sectors.clone(),
            shells: t.shells.clone(),
            colors: t.colors.clone(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn to_tiling(&self) -> Result<Tiling, DocumentError> {
        if self.format_version != FORMAT_VERSION {
            return Err(DocumentError::FormatVersion(self.format_version));
        }
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return Err(DocumentError::BadTolerance(self.tolerance));
        }
        if let Some(index) = self.vertices.iter().position(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(DocumentError::NonFinite { index });
        }
        let t = Tiling {
            vertices: self.vertices.iter().map(|&p| p.into()).collect(),
            edges: self.edges.iter().map(|&[a, b]| (a, b)).collect(),
            sectors: self.sectors.clone(),
            shells: self.shells.clone(),
            colors: self.colors.clone(),
            n_sectors: self.n_sectors,
            origin: self.origin.into(),
            tolerance: self.tolerance,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let doc: Self = serde_json::from_str(text)?;
        doc.to_tiling()?;
        Ok(doc)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self, DocumentError> {
        Self::from_json(&read_text(path.as_ref())?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<(), DocumentError> {
        write_text(path.as_ref(), &self.to_json())
    }
}
