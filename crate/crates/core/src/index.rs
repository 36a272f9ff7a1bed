use std::collections::HashMap;

use num_complex::Complex64;

/// Uniform grid of buckets for tolerance lookups in the plane.
///
/// The cell side is four times the tolerance, so a query only inspects the
/// 3×3 block of cells around it.
#[derive(Debug, Clone)]
pub struct PointIndex {
    tolerance: f64,
    cell: f64,
    points: Vec<Complex64>,
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

impl PointIndex {
    pub fn new(tolerance: f64) -> Self {
        assert!(tolerance > 0.0, "tolerance must be positive");
        Self {
            tolerance,
            cell: 4.0 * tolerance,
            points: Vec::new(),
            buckets: HashMap::new(),
        }
    }

    /// Index every point, duplicates included.
    pub fn from_points(points: &[Complex64], tolerance: f64) -> Self {
        let mut index = Self::new(tolerance);
        index.points.reserve(points.len());
        for &z in points {
            index.insert(z);
        }
        index
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    fn key(&self, z: Complex64) -> (i64, i64) {
        ((z.re / self.cell).floor() as i64, (z.im / self.cell).floor() as i64)
    }

    pub fn insert(&mut self, z: Complex64) -> usize {
        let id = self.points.len();
        self.points.push(z);
        let key = self.key(z);
        self.buckets.entry(key).or_default().push(id);
        id
    }

    /// Insert unless a point within tolerance exists. Returns the index of
    /// the stored point and whether it was new.
    pub fn insert_unique(&mut self, z: Complex64) -> (usize, bool) {
        match self.find(z) {
            Some(id) => (id, false),
            None => (self.insert(z), true),
        }
    }

    /// Nearest stored point within tolerance.
    pub fn find(&self, z: Complex64) -> Option<usize> {
        let (kx, ky) = self.key(z);
        let mut best: Option<(usize, f64)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(bucket) = self.buckets.get(&(kx + dx, ky + dy)) else {
                    continue;
                };
                for &id in bucket {
                    let d = (self.points[id] - z).norm();
                    if d <= self.tolerance && best.is_none_or(|(_, bd)| d < bd) {
                        best = Some((id, d));
                    }
                }
            }
        }
        best.map(|(id, _)| id)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.find(z).is_some()
    }
}
