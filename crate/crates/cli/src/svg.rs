//! Scatter plots as SVG.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use ulam_core::{Bound, UlamSet};

/// How points are placed in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Projection {
    /// First two coordinates.
    Xy,
    /// Orthogonal projection onto the plane perpendicular to (1,1,1).
    Complement,
}

#[derive(Debug, Clone, Copy)]
pub struct SvgOptions {
    pub projection: Projection,
    pub radius: f64,
    /// Width and height of the drawing area in pixels.
    pub viewport: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { projection: Projection::Xy, radius: 2.0, viewport: 600.0 }
    }
}

const MARGIN: f64 = 40.0;

fn project(p: &[u64], proj: Projection) -> (f64, f64) {
    let f = |i: usize| p.get(i).copied().unwrap_or(0) as f64;
    match proj {
        Projection::Xy => (f(0), f(1)),
        Projection::Complement => {
            let (x, y, z) = (f(0), f(1), f(2));
            ((x - y) / 2f64.sqrt(), (x + y - 2.0 * z) / 6f64.sqrt())
        }
    }
}

/// Corners of the bound's enclosing region, used to fix the axes so that
/// an empty set still gets a meaningful frame.
fn frame_corners(bound: &Bound, dim: usize) -> Vec<Vec<u64>> {
    let caps: Vec<u64> = match bound {
        Bound::Box(l) => l.clone(),
        Bound::Level(l) => vec![*l; dim],
    };
    let mut out = Vec::new();
    for mask in 0..(1u32 << dim.min(16)) {
        out.push((0..dim).map(|i| if mask >> i & 1 == 1 { caps[i] } else { 0 }).collect());
    }
    out
}

/// Renders the set; identical inputs give identical bytes.
pub fn render_svg(set: &UlamSet, opts: &SvgOptions) -> Result<String> {
    if opts.projection == Projection::Complement && set.dim() != 3 {
        bail!("the (1,1,1)-complement projection needs a 3-dimensional set");
    }
    if set.dim() < 2 {
        bail!("plots need at least two dimensions");
    }
    let corners: Vec<(f64, f64)> =
        frame_corners(set.bound(), set.dim()).iter().map(|c| project(c, opts.projection)).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &corners {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1.0);
    let scale = opts.viewport / span;
    let size = opts.viewport + 2.0 * MARGIN;
    // Screen y grows downwards.
    let sx = |x: f64| MARGIN + (x - x0) * scale;
    let sy = |y: f64| MARGIN + opts.viewport - (y - y0) * scale;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.0} {size:.0}">"#
    )?;
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    writeln!(s, r#"<g stroke="black" stroke-width="1">"#)?;
    match opts.projection {
        Projection::Xy => {
            writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, sx(x0), sy(0.0), sx(x1), sy(0.0))?;
            writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, sx(0.0), sy(y0), sx(0.0), sy(y1))?;
        }
        Projection::Complement => {
            for axis in 0..3 {
                let mut e = [0u64; 3];
                e[axis] = 1;
                let (ux, uy) = project(&e, Projection::Complement);
                let reach = span;
                writeln!(
                    s,
                    r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke-dasharray="4 4"/>"#,
                    sx(0.0),
                    sy(0.0),
                    sx(ux * reach),
                    sy(uy * reach)
                )?;
            }
        }
    }
    writeln!(s, "</g>")?;
    let labels: Vec<(f64, f64, String)> = match opts.projection {
        Projection::Xy => vec![
            (sx(x1), sy(0.0) + 16.0, format!("x={}", x1)),
            (sx(0.0) - 4.0, sy(y1) - 6.0, format!("y={}", y1)),
            (sx(0.0) - 4.0, sy(0.0) + 16.0, "0".to_string()),
        ],
        Projection::Complement => ["x", "y", "z"]
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let mut e = [0u64; 3];
                e[i] = 1;
                let (ux, uy) = project(&e, Projection::Complement);
                (sx(ux * span * 0.5), sy(uy * span * 0.5), name.to_string())
            })
            .collect(),
    };
    writeln!(s, r#"<g font-family="monospace" font-size="12" fill="black">"#)?;
    for (x, y, t) in labels {
        writeln!(s, r#"<text x="{x:.2}" y="{y:.2}">{t}</text>"#)?;
    }
    writeln!(s, "</g>")?;
    writeln!(s, r#"<g fill="black">"#)?;
    for p in set.points() {
        let (x, y) = project(p.coords(), opts.projection);
        writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}"/>"#, sx(x), sy(y), opts.radius)?;
    }
    writeln!(s, "</g>")?;
    writeln!(s, "</svg>")?;
    Ok(s)
}

pub fn export_svg(set: &UlamSet, path: &Path, opts: &SvgOptions) -> Result<()> {
    let svg = render_svg(set, opts)?;
    std::fs::write(path, svg).with_context(|| format!("writing {}", path.display()))
}
