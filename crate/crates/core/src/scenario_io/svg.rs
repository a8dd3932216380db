//! Deterministic SVG rendering of 2D worlds, graphs and paths.
//!
//! Drawing happens in world coordinates inside a group that flips the y axis,
//! so element attributes carry the scenario's own numbers.

use std::fmt::Write;

use crate::cost_oracle::PolylinePath;
use crate::error::{Error, Result};
use crate::geometry::{Obstacle, World};
use crate::planner::GeometricGraph;

const WIDTH_PX: f64 = 800.0;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RenderOptions {
    /// Draw a disc of radius δ around every path waypoint.
    pub clearance_discs: bool,
}

#[derive(Debug, Clone, Copy)]
struct Viewport {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
}

impl Viewport {
    fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    fn corners(&self) -> Vec<[f64; 2]> {
        vec![
            [self.x0, self.y0],
            [self.x1, self.y0],
            [self.x1, self.y1],
            [self.x0, self.y1],
        ]
    }
}

fn viewport(
    world: &World,
    graph: Option<&GeometricGraph>,
    path: Option<&PolylinePath>,
) -> Viewport {
    if let Some(b) = world.bounds() {
        let (lo, hi) = (b.min().coords(), b.max().coords());
        return Viewport {
            x0: lo[0],
            y0: lo[1],
            x1: hi[0],
            y1: hi[1],
        };
    }
    let mut pts: Vec<[f64; 2]> = Vec::new();
    for o in world.obstacles() {
        match o {
            Obstacle::Hypersphere { center, radius } => {
                let c = center.coords();
                pts.push([c[0] - radius, c[1] - radius]);
                pts.push([c[0] + radius, c[1] + radius]);
            }
            Obstacle::AxisAlignedBox(b) => {
                pts.push([b.min().coords()[0], b.min().coords()[1]]);
                pts.push([b.max().coords()[0], b.max().coords()[1]]);
            }
            Obstacle::HalfSpace { .. } => {}
        }
    }
    if let Some(g) = graph {
        pts.extend(g.vertices().iter().map(|v| [v.coords()[0], v.coords()[1]]));
    }
    if let Some(p) = path {
        pts.extend(p.waypoints().iter().map(|v| [v.coords()[0], v.coords()[1]]));
    }
    if pts.is_empty() {
        return Viewport {
            x0: 0.0,
            y0: 0.0,
            x1: 1.0,
            y1: 1.0,
        };
    }
    let fold = |i: usize, f: fn(f64, f64) -> f64, init: f64| pts.iter().map(|p| p[i]).fold(init, f);
    let (x0, x1) = (
        fold(0, f64::min, f64::INFINITY),
        fold(0, f64::max, f64::NEG_INFINITY),
    );
    let (y0, y1) = (
        fold(1, f64::min, f64::INFINITY),
        fold(1, f64::max, f64::NEG_INFINITY),
    );
    let span = (x1 - x0).max(y1 - y0);
    let pad = if span > 0.0 { 0.1 * span } else { 1.0 };
    Viewport {
        x0: x0 - pad,
        y0: y0 - pad,
        x1: x1 + pad,
        y1: y1 + pad,
    }
}

/// Clips a convex polygon to `{x : normal · x <= offset}`.
fn clip_half_plane(poly: &[[f64; 2]], normal: &[f64], offset: f64) -> Vec<[f64; 2]> {
    let side = |p: &[f64; 2]| normal[0] * p[0] + normal[1] * p[1] - offset;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let (sa, sb) = (side(&a), side(&b));
        if sa <= 0.0 {
            out.push(a);
        }
        if (sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0) {
            let u = sa / (sa - sb);
            out.push([a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1])]);
        }
    }
    out
}

fn num(v: f64) -> String {
    format!("{v}")
}

/// Renders a 2D world with an optional graph and path as an SVG document.
pub fn render_svg(
    world: &World,
    graph: Option<&GeometricGraph>,
    path: Option<&PolylinePath>,
    options: &RenderOptions,
) -> Result<String> {
    if world.dimension() != 2 {
        return Err(Error::UnsupportedRender(format!(
            "only 2D scenes can be drawn, this world has dimension {}",
            world.dimension()
        )));
    }
    let vp = viewport(world, graph, path);
    let span = vp.width().max(vp.height());
    let thin = span * 0.001;
    let thick = span * 0.004;
    let marker = span * 0.008;
    let height_px = WIDTH_PX * vp.height() / vp.width();

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num(WIDTH_PX),
        num(height_px),
        num(vp.x0),
        num(vp.y0),
        num(vp.width()),
        num(vp.height())
    );
    let _ = writeln!(
        svg,
        r#"<g transform="matrix(1 0 0 -1 0 {})">"#,
        num(vp.y0 + vp.y1)
    );
    let _ = writeln!(
        svg,
        r#"<rect class="bounds" x="{}" y="{}" width="{}" height="{}" fill="white" stroke="black" stroke-width="{}"/>"#,
        num(vp.x0),
        num(vp.y0),
        num(vp.width()),
        num(vp.height()),
        num(thin)
    );

    for o in world.obstacles() {
        match o {
            Obstacle::Hypersphere { center, radius } => {
                let c = center.coords();
                let _ = writeln!(
                    svg,
                    r#"<circle class="obstacle" cx="{}" cy="{}" r="{}" fill="dimgray"/>"#,
                    num(c[0]),
                    num(c[1]),
                    num(*radius)
                );
            }
            Obstacle::AxisAlignedBox(b) => {
                let (lo, hi) = (b.min().coords(), b.max().coords());
                let _ = writeln!(
                    svg,
                    r#"<rect class="obstacle" x="{}" y="{}" width="{}" height="{}" fill="dimgray"/>"#,
                    num(lo[0]),
                    num(lo[1]),
                    num(hi[0] - lo[0]),
                    num(hi[1] - lo[1])
                );
            }
            Obstacle::HalfSpace { normal, offset } => {
                let poly = clip_half_plane(&vp.corners(), normal, *offset);
                if poly.len() >= 3 {
                    let points: Vec<String> = poly
                        .iter()
                        .map(|p| format!("{},{}", num(p[0]), num(p[1])))
                        .collect();
                    let _ = writeln!(
                        svg,
                        r#"<polygon class="obstacle" points="{}" fill="dimgray"/>"#,
                        points.join(" ")
                    );
                }
            }
        }
    }

    if let Some(g) = graph {
        let _ = writeln!(
            svg,
            r#"<g class="graph" stroke="lightsteelblue" stroke-width="{}">"#,
            num(thin)
        );
        for (i, j, _) in g.edges() {
            let (a, b) = (g.vertex(i).coords(), g.vertex(j).coords());
            let _ = writeln!(
                svg,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                num(a[0]),
                num(a[1]),
                num(b[0]),
                num(b[1])
            );
        }
        let _ = writeln!(svg, "</g>");
        let _ = writeln!(svg, r#"<g class="vertices" fill="steelblue">"#);
        for v in g.vertices() {
            let c = v.coords();
            let _ = writeln!(
                svg,
                r#"<circle cx="{}" cy="{}" r="{}"/>"#,
                num(c[0]),
                num(c[1]),
                num(marker * 0.4)
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    if let Some(p) = path {
        if options.clearance_discs {
            for w in p.waypoints() {
                let d = world.clearance(w)?;
                if d.is_finite() {
                    let c = w.coords();
                    let _ = writeln!(
                        svg,
                        r#"<circle class="clearance" cx="{}" cy="{}" r="{}" fill="gray" fill-opacity="0.2"/>"#,
                        num(c[0]),
                        num(c[1]),
                        num(d)
                    );
                }
            }
        }
        let mut d = String::new();
        for (i, w) in p.waypoints().iter().enumerate() {
            let c = w.coords();
            let _ = write!(
                d,
                "{}{} {}",
                if i == 0 { "M" } else { " L" },
                num(c[0]),
                num(c[1])
            );
        }
        let _ = writeln!(
            svg,
            r#"<path class="solution" d="{d}" fill="none" stroke="crimson" stroke-width="{}"/>"#,
            num(thick)
        );
    }

    let ends = match (graph, path) {
        (Some(g), _) => Some((g.vertex(0).coords().to_vec(), g.vertex(1).coords().to_vec())),
        (None, Some(p)) => Some((
            p.waypoints()[0].coords().to_vec(),
            p.waypoints().last().unwrap().coords().to_vec(),
        )),
        _ => None,
    };
    if let Some((s, g)) = ends {
        for (class, c, fill) in [("start", s, "seagreen"), ("goal", g, "darkorange")] {
            let _ = writeln!(
                svg,
                r#"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
                num(c[0]),
                num(c[1]),
                num(marker)
            );
        }
    }

    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}
