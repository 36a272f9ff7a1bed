//! Nearest-neighbour edges, sector/shell cells and cell colourings.
//!
//! A cell is a (sector, shell) pair: the sector is the angular wedge of
//! width 2π/n about the origin, the shell the rank of |z − origin| among
//! the distinct radii. Colourings assign a colour to every vertex through
//! its cell.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use crate::par::*;
use crate::symmetry::Similarity2D;
use crate::PointIndex;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TilingError {
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("neighbour factor must be at least 1, got {0}")]
    BadFactor(f64),
    #[error("all points coincide")]
    Coincident,
    #[error("number of sectors must be positive")]
    ZeroSectors,
    #[error("sector_alternate needs an even number of sectors, got {0}")]
    OddSectors(usize),
    #[error("edge ({0}, {1}) is out of range, a self-loop or a duplicate")]
    BadEdge(usize, usize),
    #[error("sector {sector} of vertex {vertex} is not below {n_sectors}")]
    SectorOutOfRange {
        vertex: usize,
        sector: usize,
        n_sectors: usize,
    },
    #[error("{field} has {found} entries for {expected} vertices")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorScheme {
    /// (sector + shell) mod 2.
    TwoChecker,
    /// sector mod 2.
    SectorAlternate,
    /// 2·(shell mod 2) + (sector mod 2).
    FourByShellAndParity,
}

impl ColorScheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::TwoChecker => "two_checker",
            Self::SectorAlternate => "sector_alternate",
            Self::FourByShellAndParity => "four_by_shell_and_parity",
        }
    }
}

impl FromStr for ColorScheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "two_checker" => Ok(Self::TwoChecker),
            "sector_alternate" => Ok(Self::SectorAlternate),
            "four_by_shell_and_parity" => Ok(Self::FourByShellAndParity),
            _ => Err(format!("unknown colour scheme {s:?}")),
        }
    }
}

/// Vertices with edges, cells and optional colours.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tiling {
    pub vertices: Vec<Complex64>,
    pub edges: Vec<(usize, usize)>,
    pub sectors: Vec<usize>,
    pub shells: Vec<usize>,
    /// Per-vertex colour, empty when uncoloured.
    pub colors: Vec<usize>,
    pub n_sectors: usize,
    pub origin: Complex64,
    pub tolerance: f64,
}

impl Tiling {
    /// Cells for `vertices` about `origin`; edges from
    /// [`edges_by_nearest_neighbors`] when `factor` is given.
    pub fn new(
        vertices: Vec<Complex64>,
        n_sectors: usize,
        origin: Complex64,
        factor: Option<f64>,
        tolerance: f64,
    ) -> Result<Self, TilingError> {
        if n_sectors == 0 {
            return Err(TilingError::ZeroSectors);
        }
        let edges = match factor {
            Some(f) => edges_by_nearest_neighbors(&vertices, f)?,
            None => Vec::new(),
        };
        let sectors = sector_partition(&vertices, n_sectors, origin);
        let shells = radial_shells(&vertices, origin, tolerance);
        Ok(Self {
            vertices,
            edges,
            sectors,
            shells,
            colors: Vec::new(),
            n_sectors,
            origin,
            tolerance,
        })
    }

    pub fn n_shells(&self) -> usize {
        self.shells.iter().max().map_or(0, |m| m + 1)
    }

    pub fn with_colors(mut self, scheme: ColorScheme) -> Result<Self, TilingError> {
        self.colors = color_partition(&self, scheme)?;
        Ok(self)
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == vertex || b == vertex).count()
    }

    /// Check index ranges, edge uniqueness and field lengths.
    pub fn validate(&self) -> Result<(), TilingError> {
        let n = self.vertices.len();
        if self.n_sectors == 0 {
            return Err(TilingError::ZeroSectors);
        }
        for (field, len) in [("sectors", self.sectors.len()), ("shells", self.shells.len())] {
            if len != n {
                return Err(TilingError::LengthMismatch {
                    field,
                    expected: n,
                    found: len,
                });
            }
        }
        if !self.colors.is_empty() && self.colors.len() != n {
            return Err(TilingError::LengthMismatch {
                field: "colors",
                expected: n,
                found: self.colors.len(),
            });
        }
        if let Some((vertex, &sector)) = self.sectors.iter().enumerate().find(|(_, &s)| s >= self.n_sectors) {
            return Err(TilingError::SectorOutOfRange {
                vertex,
                sector,
                n_sectors: self.n_sectors,
            });
        }
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &self.edges {
            if a >= n || b >= n || a == b || !seen.insert((a.min(b), a.max(b))) {
                return Err(TilingError::BadEdge(a, b));
            }
        }
        Ok(())
    }
}

/// Smallest positive pairwise distance, by a sweep over x-sorted points.
fn min_positive_distance(points: &[Complex64]) -> Option<f64> {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re));
    let mut best = f64::INFINITY;
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            if sorted[j].re - sorted[i].re >= best {
                break;
            }
            let d = (sorted[j] - sorted[i]).norm();
            if d > 0.0 && d < best {
                best = d;
            }
        }
    }
    best.is_finite().then_some(best)
}

/// Connect every pair of points at distance ≤ `factor` × the smallest
/// positive pairwise distance. Edges are (i, j) with i < j, sorted.
pub fn edges_by_nearest_neighbors(points: &[Complex64], factor: f64) -> Result<Vec<(usize, usize)>, TilingError> {
    if points.len() < 2 {
        return Err(TilingError::TooFewPoints(points.len()));
    }
    if !(factor >= 1.0) || !factor.is_finite() {
        return Err(TilingError::BadFactor(factor));
    }
    let dmin = min_positive_distance(points).ok_or(TilingError::Coincident)?;
    let reach = factor * dmin * (1.0 + 1e-9);
    let cell = |z: Complex64| ((z.re / reach).floor() as i64, (z.im / reach).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, &z) in points.iter().enumerate() {
        grid.entry(cell(z)).or_default().push(i);
    }
    let per_point: Vec<Vec<(usize, usize)>> = par_range!(0..points.len())
        .map(|i| {
            let z = points[i];
            let (cx, cy) = cell(z);
            let mut out = Vec::new();
            for dx in -1..=1 {
                for dy in -1..=1 {
                    for &j in grid.get(&(cx + dx, cy + dy)).into_iter().flatten() {
                        let d = (points[j] - z).norm();
                        if j > i && d > 0.0 && d <= reach {
                            out.push((i, j));
                        }
                    }
                }
            }
            out.sort_unstable();
            out
        })
        .collect();
    Ok(per_point.into_iter().flatten().collect())
}

/// Sector ⌊θ·n/2π⌋ of every point, θ ∈ [0, 2π) the polar angle about
/// `origin`. A point on a ray (within 1e−9 in units of the sector width)
/// belongs to the sector that ray opens; the origin is in sector 0.
pub fn sector_partition(points: &[Complex64], n: usize, origin: Complex64) -> Vec<usize> {
    let n = n.max(1);
    points
        .iter()
        .map(|&z| {
            let w = z - origin;
            if w.norm() == 0.0 {
                return 0;
            }
            let t = w.arg().rem_euclid(TAU) * n as f64 / TAU;
            let snapped = if (t - t.round()).abs() <= 1e-9 {
                t.round()
            } else {
                t.floor()
            };
            (snapped as usize) % n
        })
        .collect()
}

/// Rank of |z − origin| among the distinct radii; radii within `tolerance`
/// of their predecessor join its shell.
pub fn radial_shells(points: &[Complex64], origin: Complex64, tolerance: f64) -> Vec<usize> {
    let radii: Vec<f64> = points.iter().map(|z| (z - origin).norm()).collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| radii[a].total_cmp(&radii[b]));
    let mut shells = vec![0; points.len()];
    let mut shell = 0;
    for w in 0..order.len() {
        if w > 0 && radii[order[w]] - radii[order[w - 1]] > tolerance {
            shell += 1;
        }
        shells[order[w]] = shell;
    }
    shells
}

/// Colour of every vertex under `scheme`.
pub fn color_partition(tiling: &Tiling, scheme: ColorScheme) -> Result<Vec<usize>, TilingError> {
    if scheme == ColorScheme::SectorAlternate && tiling.n_sectors % 2 == 1 {
        return Err(TilingError::OddSectors(tiling.n_sectors));
    }
    Ok(tiling
        .sectors
        .iter()
        .zip(&tiling.shells)
        .map(|(&sector, &shell)| match scheme {
            ColorScheme::TwoChecker => (sector + shell) % 2,
            ColorScheme::SectorAlternate => sector % 2,
            ColorScheme::FourByShellAndParity => 2 * (shell % 2) + sector % 2,
        })
        .collect())
}

/// Whether `op` carries every coloured vertex onto a vertex of colour
/// `permutation[c]`. Images falling outside the radial range of the tiling
/// are not checked. An uncoloured tiling, a colour without an entry in
/// `permutation` or an `op` moving the origin gives `false`.
pub fn color_symmetry_check(tiling: &Tiling, op: &Similarity2D, permutation: &[usize]) -> bool {
    if tiling.colors.len() != tiling.vertices.len() || tiling.colors.is_empty() {
        return false;
    }
    if (op.apply(tiling.origin) - tiling.origin).norm() > tiling.tolerance {
        return false;
    }
    let index = PointIndex::from_points(&tiling.vertices, tiling.tolerance);
    let radius = |z: Complex64| (z - tiling.origin).norm();
    let (r_min, r_max) = tiling
        .vertices
        .iter()
        .map(|&z| radius(z))
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
    let tol = tiling.tolerance;
    par_range!(0..tiling.vertices.len()).all(|i| {
        let w = op.apply(tiling.vertices[i]);
        let r = radius(w);
        if r < r_min - tol || r > r_max + tol {
            return true;
        }
        let Some(&target) = permutation.get(tiling.colors[i]) else {
            return false;
        };
        index.find(w).is_some_and(|j| tiling.colors[j] == target)
    })
}

/// One point per cell of an `n_sectors` × `n_shells` wheel: radius
/// 1, 2, …, `n_shells` at the mid-angle of each sector.
pub fn wheel_points(n_sectors: usize, n_shells: usize) -> Vec<Complex64> {
    (1..=n_shells)
        .flat_map(|r| {
            (0..n_sectors).map(move |s| Complex64::from_polar(r as f64, TAU * (s as f64 + 0.5) / n_sectors as f64))
        })
        .collect()
}
