//! `similattice` command line.
//!
//! Exit codes: 0 success, 1 validation failure (bad input file, failed
//! check, library error), 2 usage error. Relative output paths are resolved
//! against `SIMILATTICE_OUT_DIR` when it is set.

mod args;
mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use similattice::algebra::{circle_inversion, CircleSpec, MobiusMap};
use similattice::conformal::{map_points, ImagePoints, MapSpec};
use similattice::io::{write_svg, PointSetDocument, RenderOptions, TilingDocument};
use similattice::quasilattice::{
    generate_periodic, generate_periodic_polygon, generate_quasilattice_with, CrystalSet, LatticeKind,
    QuasilatticeConfig,
};
use similattice::symmetry::{orbit_with_budget, parse_symbol};
use similattice::tiling::{color_partition, Tiling};

pub use args::{Cli, Command};
pub use suites::{Check, Suite};

/// Environment variable that relocates relative output paths.
pub const OUT_DIR_ENV: &str = "SIMILATTICE_OUT_DIR";

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::Failed(_) => 1,
        }
    }
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

/// Run with process stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Run with the given output and diagnostic streams; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let (prefix, msg) = match &e {
                CliError::Usage(m) => ("usage error", m),
                CliError::Failed(m) => ("error", m),
            };
            let _ = writeln!(err, "{prefix}: {msg}");
            e.code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::Generate(a) => generate(a, out),
        Command::Transform(a) => transform(a, out),
        Command::Orbit(a) => orbit(a, &mut rng, out),
        Command::Tile(a) => tile(a, out),
        Command::Color(a) => color(a, out),
        Command::Verify(a) => verify(a, &mut rng, out),
        Command::Render(a) => render(a, out),
    }
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() && !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Write `text` to the output path, or to `out` without one.
fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write, summary: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let p = resolve(p);
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| failed(format!("{}: {e}", parent.display())))?;
            }
            std::fs::write(&p, text).map_err(|e| failed(format!("{}: {e}", p.display())))?;
            writeln!(out, "{summary} -> {}", p.display()).map_err(failed)
        }
        None => out.write_all(text.as_bytes()).map_err(failed),
    }
}

fn parse_pair(text: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [x, y] => match (x.parse::<f64>(), y.parse::<f64>()) {
            (Ok(x), Ok(y)) => Ok(Complex64::new(x, y)),
            _ => Err(CliError::Usage(format!("expected two numbers x,y, got {text:?}"))),
        },
        _ => Err(CliError::Usage(format!("expected x,y, got {text:?}"))),
    }
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad {what} entry {s:?}")))
        })
        .collect()
}

fn build_set(a: &args::GenerateArgs) -> Result<CrystalSet, CliError> {
    let set = match a.kind {
        LatticeKind::Quasilattice => {
            let n =
                a.n.ok_or_else(|| CliError::Usage("--n is required for a quasilattice".into()))?;
            generate_quasilattice_with(&QuasilatticeConfig {
                vertex_class: a.vertex_class,
                unite_negation: !a.single_class,
                tolerance: a.tolerance,
                ..QuasilatticeConfig::new(n, a.bound, a.radius)
            })
        }
        kind => match a.half_width {
            Some(h) => generate_periodic_polygon(kind, h),
            None => generate_periodic(kind, a.radius),
        },
    };
    set.map_err(failed)
}

fn generate(a: &args::GenerateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let set = build_set(a)?;
    let doc = PointSetDocument::from_crystal_set(&set);
    let summary = format!(
        "generated {} {} points (n = {})",
        set.len(),
        set.kind().as_str(),
        set.order()
    );
    emit(a.output.as_deref(), &doc.to_json(), out, &summary)?;
    Ok(0)
}

fn read_points(path: &Path) -> Result<PointSetDocument, CliError> {
    PointSetDocument::read(path).map_err(failed)
}

fn map_spec(a: &args::TransformArgs) -> Result<MapSpec, CliError> {
    if let Some(circle) = &a.circle {
        let c = parse_list::<f64>(circle, "circle")?;
        let [center, radius] = c.as_slice() else {
            return Err(CliError::Usage("--circle takes center,radius".into()));
        };
        let spec = CircleSpec::centered(*center, *radius).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(MapSpec::Mobius {
            map: circle_inversion(&spec).map_err(failed)?,
        });
    }
    if a.map == "mobius" {
        let text = a
            .coeffs
            .as_deref()
            .ok_or_else(|| CliError::Usage("--map mobius needs --coeffs".into()))?;
        let v = parse_list::<f64>(text, "coefficient")?;
        let c: Vec<Complex64> = match v.len() {
            4 => v.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            8 => v.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect(),
            _ => return Err(CliError::Usage("--coeffs takes 4 real or 8 (re, im) numbers".into())),
        };
        let map = MobiusMap::new(c[0], c[1], c[2], c[3], a.anticonformal).map_err(failed)?;
        return Ok(MapSpec::Mobius { map });
    }
    a.map.parse().map_err(CliError::Usage)
}

fn transform(a: &args::TransformArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let spec = map_spec(a)?;
    let doc = read_points(&a.input)?;
    let image = map_points(&spec, &doc.plane_points(), doc.tolerance);
    let mut result = match &image.points {
        ImagePoints::Plane(p) => PointSetDocument::from_plane(doc.n, doc.tolerance, p),
        ImagePoints::Sphere(p) => PointSetDocument::from_sphere(doc.n, doc.tolerance, p),
    };
    result.metadata.insert("map".into(), spec.name().into());
    result.metadata.insert("dropped".into(), image.dropped.to_string());
    if let Some(kind) = doc.metadata.get("kind") {
        result.metadata.insert("source_kind".into(), kind.clone());
    }
    let summary = format!(
        "mapped {} points by {} ({} dropped)",
        image.points.len(),
        spec.name(),
        image.dropped
    );
    emit(a.output.as_deref(), &result.to_json(), out, &summary)?;
    Ok(0)
}

fn orbit(a: &args::OrbitArgs, rng: &mut ChaCha8Rng, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut group = parse_symbol(&a.symbol).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(text) = &a.annulus {
        let v = parse_list::<f64>(text, "annulus")?;
        let [lo, hi] = v.as_slice() else {
            return Err(CliError::Usage("--annulus takes r_min,r_max".into()));
        };
        group = group
            .with_annulus((*lo, *hi))
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let mut seeds = a.point.iter().map(|p| parse_pair(p)).collect::<Result<Vec<_>, _>>()?;
    if seeds.is_empty() {
        // random seeds in the annulus, by the --seed stream
        let (lo, hi) = group.annulus();
        for _ in 0..a.count {
            let r = lo * (hi / lo).powf(rng.gen::<f64>());
            let t = rng.gen::<f64>() * std::f64::consts::TAU;
            seeds.push(group.center() + Complex64::from_polar(r, t));
        }
    }
    let points = orbit_with_budget(&group, &seeds, a.budget).map_err(failed)?;
    let order = a.symbol.chars().take_while(char::is_ascii_digit).collect::<String>();
    let mut doc = PointSetDocument::from_plane(order.parse().unwrap_or(1), 1e-9, &points);
    doc.metadata.insert("symbol".into(), group.symbol().into());
    let (lo, hi) = group.annulus();
    doc.metadata.insert("annulus".into(), format!("{lo},{hi}"));
    let summary = format!("orbit of {} seed(s): {} points", seeds.len(), points.len());
    emit(a.output.as_deref(), &doc.to_json(), out, &summary)?;
    Ok(0)
}

fn tile(a: &args::TileArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let doc = read_points(&a.input)?;
    let origin = match &a.origin {
        Some(o) => parse_pair(o)?,
        None => Complex64::new(0.0, 0.0),
    };
    let sectors = a.sectors.unwrap_or(doc.n.max(1));
    let factor = (!a.no_edges).then_some(a.factor);
    let mut t = Tiling::new(doc.plane_points(), sectors, origin, factor, doc.tolerance).map_err(failed)?;
    if let Some(scheme) = a.scheme {
        t.colors = color_partition(&t, scheme).map_err(failed)?;
    }
    let summary = format!(
        "tiling: {} vertices, {} edges, {} sectors, {} shells",
        t.vertices.len(),
        t.edges.len(),
        t.n_sectors,
        t.n_shells()
    );
    emit(
        a.output.as_deref(),
        &TilingDocument::from_tiling(&t).to_json(),
        out,
        &summary,
    )?;
    Ok(0)
}

fn color(a: &args::ColorArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let doc = TilingDocument::read(&a.input).map_err(failed)?;
    let mut t = doc.to_tiling().map_err(failed)?;
    t.colors = color_partition(&t, a.scheme).map_err(failed)?;
    let classes = t.colors.iter().collect::<std::collections::BTreeSet<_>>().len();
    let mut result = TilingDocument::from_tiling(&t);
    result.metadata = doc.metadata;
    result.metadata.insert("scheme".into(), a.scheme.as_str().into());
    let summary = format!("coloured {} vertices with {} colours", t.vertices.len(), classes);
    emit(a.output.as_deref(), &result.to_json(), out, &summary)?;
    Ok(0)
}

fn verify(a: &args::VerifyArgs, rng: &mut ChaCha8Rng, out: &mut dyn Write) -> Result<i32, CliError> {
    let input = a.input.as_deref().map(read_points).transpose()?;
    let checks = suites::run_suite(a.suite, input.as_ref(), a.expect, rng).map_err(|e| match e {
        suites::SuiteError::Usage(m) => CliError::Usage(m),
        suites::SuiteError::Failed(m) => CliError::Failed(m),
    })?;
    suites::print_table(&checks, out).map_err(failed)?;
    Ok(if checks.iter().all(|c| c.pass) { 0 } else { 1 })
}

fn render(a: &args::RenderArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut opts = RenderOptions {
        width_px: a.width,
        height_px: a.height,
        point_radius_px: a.radius,
        draw_edges: !a.no_edges,
        draw_rays: a.rays,
        ..RenderOptions::default()
    };
    if let Some(p) = &a.palette {
        opts.palette = p.split(',').map(|s| s.trim().to_string()).collect();
    }
    let (points, tiling) = match (&a.input, &a.tiling) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --input or --tiling".into())),
        (Some(p), None) => (read_points(p)?.plane_points(), None),
        (None, Some(t)) => {
            let t = TilingDocument::read(t).and_then(|d| d.to_tiling()).map_err(failed)?;
            (t.vertices.clone(), Some(t))
        }
        (None, None) => return Err(CliError::Usage("render needs --input or --tiling".into())),
    };
    let svg = write_svg(&points, tiling.as_ref(), &opts).map_err(|e| CliError::Usage(e.to_string()))?;
    let summary = format!("rendered {} points", points.len());
    emit(a.output.as_deref(), &svg, out, &summary)?;
    Ok(0)
}
