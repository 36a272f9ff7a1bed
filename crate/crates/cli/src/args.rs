use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use similattice::quasilattice::LatticeKind;
use similattice::symmetry::ORBIT_BUDGET;
use similattice::tiling::ColorScheme;

use crate::suites::Suite;

#[derive(Debug, Parser)]
#[command(
    name = "similattice",
    version,
    about = "Quasilattices, similarity symmetry and conformal images"
)]
pub struct Cli {
    /// Seed for every random choice (orbit seeds, random maps and words).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a square, hexagonal or n-fold quasilattice point set.
    Generate(GenerateArgs),
    /// Apply a conformal or anticonformal map to a point set.
    Transform(TransformArgs),
    /// Orbit of seed points under a group given by its symbol.
    Orbit(OrbitArgs),
    /// Edges, sectors and shells of a point set.
    Tile(TileArgs),
    /// Colour a tiling.
    Color(ColorArgs),
    /// Run a named check suite and print a pass/fail table.
    Verify(VerifyArgs),
    /// Render a point set or tiling to SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub kind: LatticeKind,
    /// Rotation order of a quasilattice.
    #[arg(long)]
    pub n: Option<usize>,
    /// Coefficient bound of a quasilattice.
    #[arg(long, default_value_t = 1)]
    pub bound: i64,
    #[arg(long, default_value_t = 5.0)]
    pub radius: f64,
    /// Cut a periodic lattice to its own polygon instead of a disk.
    #[arg(long)]
    pub half_width: Option<i64>,
    /// Keep one vertex class (prime n only).
    #[arg(long, allow_hyphen_values = true)]
    pub vertex_class: Option<i64>,
    /// With --vertex-class, do not add the negated class.
    #[arg(long)]
    pub single_class: bool,
    #[arg(long, default_value_t = similattice::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// square, reciprocal, inversion, stereographic, identity or mobius.
    #[arg(long, default_value = "inversion")]
    pub map: String,
    /// Möbius coefficients a,b,c,d (real) or 8 numbers (re, im pairs).
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    #[arg(long)]
    pub anticonformal: bool,
    /// Invert in the circle center,radius (centre on the real axis).
    #[arg(long, allow_hyphen_values = true)]
    pub circle: Option<String>,
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    /// Group symbol, e.g. "10L(φ=−π/5)".
    #[arg(long, allow_hyphen_values = true)]
    pub symbol: String,
    /// Seed point x,y; repeatable. Without one, random seeds are drawn.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Vec<String>,
    /// Number of random seed points.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// r_min,r_max about the special point.
    #[arg(long)]
    pub annulus: Option<String>,
    #[arg(long, default_value_t = ORBIT_BUDGET)]
    pub budget: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TileArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    /// Number of sectors (default: the document's n).
    #[arg(long)]
    pub sectors: Option<usize>,
    /// Edge length limit as a multiple of the nearest-neighbour distance.
    #[arg(long, default_value_t = 1.05)]
    pub factor: f64,
    #[arg(long)]
    pub no_edges: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub origin: Option<String>,
    #[arg(long)]
    pub scheme: Option<ColorScheme>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long, default_value = "two_checker")]
    pub scheme: ColorScheme,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    /// Expected value for rotation-order and special-points.
    #[arg(long)]
    pub expect: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub tiling: Option<PathBuf>,
    #[arg(long, default_value_t = 800)]
    pub width: u32,
    #[arg(long, default_value_t = 800)]
    pub height: u32,
    #[arg(long, default_value_t = 3.0)]
    pub radius: f64,
    /// Comma-separated fill colours.
    #[arg(long)]
    pub palette: Option<String>,
    #[arg(long)]
    pub no_edges: bool,
    #[arg(long)]
    pub rays: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}
