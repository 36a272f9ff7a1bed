use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{read_text, to_json, write_text, DocumentError, FORMAT_VERSION};
use crate::conformal::SpherePoint;
use crate::quasilattice::{roots_of_unity, CrystalSet, CyclotomicPoint, Generation, LatticeKind};

/// Largest allowed distance between a point's coefficient embedding and its
/// stored coordinates.
const COEFF_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<i64>>,
    pub x: f64,
    pub y: f64,
    /// Third coordinate of a sphere point (x, y, z) = (x0, x1, x2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
}

impl PointRecord {
    pub fn plane(w: Complex64) -> Self {
        Self {
            coeffs: None,
            x: w.re,
            y: w.im,
            z: None,
        }
    }
}

/// A point set on disk.
///
/// ```json
/// {
///   "format_version": 1,
///   "n": 8,
///   "tolerance": 1e-9,
///   "points": [{ "coeffs": [1, 0, 0, 0, 0, 0, 0, 0], "x": 1.0, "y": 0.0 }],
///   "metadata": { "kind": "quasilattice" }
/// }
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSetDocument {
    pub format_version: u32,
    pub n: usize,
    pub tolerance: f64,
    pub points: Vec<PointRecord>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

impl PointSetDocument {
    /// Plane points without exact coordinates.
    pub fn from_plane(n: usize, tolerance: f64, points: &[Complex64]) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            n,
            tolerance,
            points: points.iter().map(|&w| PointRecord::plane(w)).collect(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn from_sphere(n: usize, tolerance: f64, points: &[SpherePoint]) -> Self {
        let mut doc = Self {
            format_version: FORMAT_VERSION,
            n,
            tolerance,
            points: points
                .iter()
                .map(|p| PointRecord {
                    coeffs: None,
                    x: p.x0,
                    y: p.x1,
                    z: Some(p.x2),
                })
                .collect(),
            metadata: BTreeMap::new(),
        };
        doc.metadata.insert("space".into(), "sphere".into());
        doc
    }

    /// Exact points with their embeddings; the lattice kind and the
    /// generation parameters go into the metadata.
    pub fn from_crystal_set(set: &CrystalSet) -> Self {
        let points = set
            .points()
            .iter()
            .zip(set.embedded())
            .map(|(p, w)| PointRecord {
                coeffs: Some(p.coeffs().to_vec()),
                x: w.re,
                y: w.im,
                z: None,
            })
            .collect();
        let mut metadata = BTreeMap::new();
        metadata.insert("kind".into(), set.kind().as_str().into());
        metadata.insert(
            "generation".into(),
            serde_json::to_string(&set.generation()).expect("generation serialises"),
        );
        Self {
            format_version: FORMAT_VERSION,
            n: set.order(),
            tolerance: set.tolerance(),
            points,
            metadata,
        }
    }

    /// Rebuild the exact set. Every point needs coefficients.
    pub fn to_crystal_set(&self) -> Result<CrystalSet, DocumentError> {
        self.validate()?;
        let kind: LatticeKind = match self.metadata.get("kind") {
            Some(k) => k.parse().map_err(|message| DocumentError::Metadata {
                key: "kind".into(),
                message,
            })?,
            None => LatticeKind::Quasilattice,
        };
        let generation: Generation = match self.metadata.get("generation") {
            Some(g) => serde_json::from_str(g).map_err(|e| DocumentError::Metadata {
                key: "generation".into(),
                message: e.to_string(),
            })?,
            None => Generation::Explicit,
        };
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let coeffs = p.coeffs.clone().ok_or(DocumentError::MissingCoeffs(i))?;
                Ok(CyclotomicPoint::new(self.n, coeffs)?)
            })
            .collect::<Result<Vec<_>, DocumentError>>()?;
        Ok(CrystalSet::from_points(self.n, kind, points, self.tolerance)?.with_generation(generation))
    }

    pub fn is_sphere(&self) -> bool {
        self.metadata.get("space").is_some_and(|s| s == "sphere")
    }

    /// (x, y) of every point.
    pub fn plane_points(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| Complex64::new(p.x, p.y)).collect()
    }

    pub fn validate(&self) -> Result<(), DocumentError> {
        if self.format_version != FORMAT_VERSION {
            return Err(DocumentError::FormatVersion(self.format_version));
        }
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return Err(DocumentError::BadTolerance(self.tolerance));
        }
        let roots = roots_of_unity(self.n);
        for (index, p) in self.points.iter().enumerate() {
            if !p.x.is_finite() || !p.y.is_finite() || p.z.is_some_and(|z| !z.is_finite()) {
                return Err(DocumentError::NonFinite { index });
            }
            let Some(coeffs) = &p.coeffs else { continue };
            if coeffs.len() != self.n {
                return Err(DocumentError::CoeffLength {
                    index,
                    expected: self.n,
                    found: coeffs.len(),
                });
            }
            let e: Complex64 = coeffs.iter().zip(&roots).map(|(&c, &r)| r * c as f64).sum();
            let distance = (e - Complex64::new(p.x, p.y)).norm();
            if distance > COEFF_TOLERANCE {
                return Err(DocumentError::CoeffMismatch { index, distance });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let doc: Self = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self, DocumentError> {
        Self::from_json(&read_text(path.as_ref())?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<(), DocumentError> {
        write_text(path.as_ref(), &self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasilattice::{generate_periodic, generate_quasilattice};

    #[test]
    fn crystal_set_round_trip() {
        let set = generate_quasilattice(8, 1, 3.0, 1e-9).unwrap();
        let doc = PointSetDocument::from_crystal_set(&set);
        let text = doc.to_json();
        let back = PointSetDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
        let rebuilt = back.to_crystal_set().unwrap();
        assert_eq!(rebuilt.points(), set.points());
        assert_eq!(rebuilt.generation(), set.generation());
    }

    #[test]
    fn mismatched_coefficients_are_rejected() {
        let set = generate_periodic(LatticeKind::Square, 1.0).unwrap();
        let mut doc = PointSetDocument::from_crystal_set(&set);
        doc.points[1].x += 1e-6;
        assert!(matches!(
            PointSetDocument::from_json(&doc.to_json()),
            Err(DocumentError::CoeffMismatch { index: 1, .. })
        ));
    }

    #[test]
    fn version_and_shape_checks() {
        let mut doc = PointSetDocument::from_plane(4, 1e-9, &[Complex64::new(0.5, 0.25)]);
        assert!(matches!(doc.to_crystal_set(), Err(DocumentError::MissingCoeffs(0))));
        doc.format_version = 2;
        assert!(matches!(doc.validate(), Err(DocumentError::FormatVersion(2))));
        assert!(PointSetDocument::from_json("{\"format_version\": 1}").is_err());
    }

    #[test]
    fn sphere_points_keep_three_coordinates() {
        let p = crate::conformal::stereographic(Complex64::new(0.3, -0.4));
        let doc = PointSetDocument::from_sphere(4, 1e-9, &[p]);
        let back = PointSetDocument::from_json(&doc.to_json()).unwrap();
        assert!(back.is_sphere());
        assert_eq!(back.points[0].z, Some(p.x2));
    }
}
