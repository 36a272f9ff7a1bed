use std::f64::consts::TAU;
use std::fmt::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::DocumentError;
use crate::tiling::Tiling;

pub const DEFAULT_PALETTE: [&str; 6] = ["#1f4e79", "#c0392b", "#27ae60", "#f39c12", "#8e44ad", "#16a085"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderOptions {
    pub width_px: u32,
    pub height_px: u32,
    pub point_radius_px: f64,
    pub palette: Vec<String>,
    pub draw_edges: bool,
    /// Sector rays from the tiling's origin.
    pub draw_rays: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            width_px: 800,
            height_px: 800,
            point_radius_px: 3.0,
            palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect(),
            draw_edges: true,
            draw_rays: false,
        }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<(), DocumentError> {
        if self.width_px == 0 || self.height_px == 0 {
            return Err(DocumentError::Render("dimensions must be positive".into()));
        }
        if !(self.point_radius_px > 0.0) || !self.point_radius_px.is_finite() {
            return Err(DocumentError::Render("point radius must be positive".into()));
        }
        if self.palette.is_empty() {
            return Err(DocumentError::Render("palette is empty".into()));
        }
        Ok(())
    }
}

/// Render points as circles, and the tiling's edges as lines, into an SVG
/// 1.1 document. The tiling, if given, must have `points` as its vertices.
///
/// Colours come from the tiling's colour indices through the palette, or
/// the first palette entry when uncoloured. Coordinates are written with
/// three decimals and elements in index order, so the output depends only
/// on the input.
pub fn write_svg(points: &[Complex64], tiling: Option<&Tiling>, opts: &RenderOptions) -> Result<String, DocumentError> {
    opts.validate()?;
    if let Some(t) = tiling {
        if t.vertices.len() != points.len() {
            return Err(DocumentError::Render(format!(
                "tiling has {} vertices for {} points",
                t.vertices.len(),
                points.len()
            )));
        }
    }
    let (w, h) = (opts.width_px as f64, opts.height_px as f64);
    let margin = 2.0 * opts.point_radius_px + 4.0;
    let rays = opts.draw_rays.then_some(tiling).flatten();

    let mut lo = Complex64::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut extend = |z: Complex64| {
        lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
        hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
    };
    points.iter().copied().for_each(&mut extend);
    if let Some(t) = rays {
        extend(t.origin);
    }
    if points.is_empty() && rays.is_none() {
        extend(Complex64::new(0.0, 0.0));
    }
    let span = (hi.re - lo.re).max(hi.im - lo.im);
    let scale = if span > 0.0 {
        ((w - 2.0 * margin).min(h - 2.0 * margin) / span).max(f64::MIN_POSITIVE)
    } else {
        1.0
    };
    let mid = (lo + hi) / 2.0;
    let to_px = |z: Complex64| (w / 2.0 + (z.re - mid.re) * scale, h / 2.0 - (z.im - mid.im) * scale);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        opts.width_px, opts.height_px, opts.width_px, opts.height_px
    );
    if let Some(t) = rays {
        let reach = points.iter().map(|z| (z - t.origin).norm()).fold(0.0, f64::max);
        out.push_str("<g id=\"rays\" stroke=\"#999999\" stroke-width=\"0.5\" stroke-dasharray=\"4 3\">\n");
        let (x1, y1) = to_px(t.origin);
        for k in 0..t.n_sectors {
            let end = t.origin + Complex64::from_polar(reach, TAU * k as f64 / t.n_sectors as f64);
            let (x2, y2) = to_px(end);
            let _ = writeln!(
                out,
                "<line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\"/>"
            );
        }
        out.push_str("</g>\n");
    }
    if let Some(t) = tiling.filter(|_| opts.draw_edges) {
        out.push_str("<g id=\"edges\" stroke=\"#555555\" stroke-width=\"1\">\n");
        for &(a, b) in &t.edges {
            let (x1, y1) = to_px(points[a]);
            let (x2, y2) = to_px(points[b]);
            let _ = writeln!(
                out,
                "<line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\"/>"
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("<g id=\"points\">\n");
    let colors = tiling.map(|t| t.colors.as_slice()).unwrap_or(&[]);
    for (i, &z) in points.iter().enumerate() {
        let (cx, cy) = to_px(z);
        let fill = &opts.palette[colors.get(i).copied().unwrap_or(0) % opts.palette.len()];
        let _ = writeln!(
            out,
            "<circle cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"{:.3}\" fill=\"{fill}\"/>",
            opts.point_radius_px
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::{wheel_points, ColorScheme};

    const ORIGIN: Complex64 = Complex64::new(0.0, 0.0);

    #[test]
    fn one_point_one_circle() {
        let svg = write_svg(&[Complex64::new(2.0, -1.0)], None, &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains("cx=\"400.000\" cy=\"400.000\""));
        assert!(svg.contains("version=\"1.1\""));
    }

    #[test]
    fn rays_and_edges() {
        let t = Tiling::new(wheel_points(8, 2), 8, ORIGIN, Some(1.05), 1e-9).unwrap();
        let opts = RenderOptions {
            draw_rays: true,
            ..RenderOptions::default()
        };
        let svg = write_svg(&t.vertices, Some(&t), &opts).unwrap();
        assert_eq!(svg.matches("<line").count(), t.edges.len() + 8);
        assert_eq!(svg.matches("<circle").count(), t.vertices.len());
    }

    #[test]
    fn palette_follows_colours() {
        let t = Tiling::new(wheel_points(8, 3), 8, ORIGIN, None, 1e-9)
            .unwrap()
            .with_colors(ColorScheme::FourByShellAndParity)
            .unwrap();
        let svg = write_svg(&t.vertices, Some(&t), &RenderOptions::default()).unwrap();
        for c in &DEFAULT_PALETTE[..4] {
            assert!(svg.contains(&format!("fill=\"{c}\"")));
        }
        assert!(!svg.contains(&format!("fill=\"{}\"", DEFAULT_PALETTE[4])));
    }

    #[test]
    fn bad_options() {
        let opts = RenderOptions {
            palette: vec![],
            ..RenderOptions::default()
        };
        assert!(write_svg(&[ORIGIN], None, &opts).is_err());
        let t = Tiling::new(wheel_points(4, 1), 4, ORIGIN, None, 1e-9).unwrap();
        assert!(write_svg(&[ORIGIN], Some(&t), &RenderOptions::default()).is_err());
    }
}
