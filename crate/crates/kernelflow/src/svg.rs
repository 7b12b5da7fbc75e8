//! Standalone SVG for a portrait scene. Coordinates are printed with a fixed
//! number of decimals so identical scenes give identical bytes.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use kernelflow_core::portrait::{Point, PortraitScene, Trajectory};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 20.0;

struct Viewport {
    hx: f64,
    hy: f64,
}

impl Viewport {
    fn map(&self, p: Point) -> (f64, f64) {
        let span = SIZE - 2.0 * MARGIN;
        let sx = MARGIN + (p[0] + self.hx) / (2.0 * self.hx) * span;
        let sy = MARGIN + (self.hy - p[1]) / (2.0 * self.hy) * span;
        (sx, sy)
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

/// Screen points, dropping those within half a pixel of the last kept one.
/// The final point is always kept.
fn thin(view: &Viewport, pts: impl Iterator<Item = Point>) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut pending = None;
    for p in pts {
        let q = view.map(p);
        match out.last() {
            Some(&(x, y)) if (q.0 - x).hypot(q.1 - y) < 0.5 => pending = Some(q),
            _ => {
                out.push(q);
                pending = None;
            }
        }
    }
    out.extend(pending);
    out
}

fn points_attr(view: &Viewport, pts: impl Iterator<Item = Point>) -> String {
    let mut out = String::new();
    for (i, (x, y)) in thin(view, pts).into_iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{},{}", num(x), num(y));
    }
    out
}

/// Arrowhead at the middle sample, pointing along increasing time.
fn arrowhead(view: &Viewport, t: &Trajectory) -> Option<String> {
    let pts = thin(view, t.points());
    if pts.len() < 3 {
        return None;
    }
    let mid = pts.len() / 2;
    let (x0, y0) = pts[mid - 1];
    let (x1, y1) = pts[mid + 1];
    let (dx, dy) = (x1 - x0, y1 - y0);
    let len = (dx * dx + dy * dy).sqrt();
    if len < 1e-9 {
        return None;
    }
    let (ux, uy) = (dx / len, dy / len);
    let (tx, ty) = pts[mid];
    let size = 5.0;
    let back = (tx - ux * size, ty - uy * size);
    let left = (back.0 - uy * size * 0.5, back.1 + ux * size * 0.5);
    let right = (back.0 + uy * size * 0.5, back.1 - ux * size * 0.5);
    Some(format!(
        "<polygon class=\"arrow\" points=\"{},{} {},{} {},{}\"/>",
        num(tx),
        num(ty),
        num(left.0),
        num(left.1),
        num(right.0),
        num(right.1)
    ))
}

pub fn render(scene: &PortraitScene, title: &str) -> String {
    let w = scene.window;
    let view = Viewport { hx: w.hx, hy: w.hy };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    s.push_str(
        "<style>\n\
         .frame{fill:none;stroke:#999;stroke-width:1}\n\
         .axis{stroke:#ccc;stroke-width:1}\n\
         .orbit{fill:none;stroke:#222;stroke-width:1}\n\
         .arrow{fill:#222}\n\
         .equilibria{fill:none;stroke:#c00;stroke-width:2;stroke-dasharray:2 3}\n\
         .singular{fill:none;stroke:#06c;stroke-width:2;stroke-dasharray:6 3 1 3}\n\
         .rest{fill:#06c}\n\
         </style>\n",
    );
    let (x0, y0) = view.map([-w.hx, w.hy]);
    let (x1, y1) = view.map([w.hx, -w.hy]);
    let (ox, oy) = view.map([0.0, 0.0]);
    let _ = writeln!(
        s,
        "<rect class=\"frame\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
        num(x0),
        num(y0),
        num(x1 - x0),
        num(y1 - y0)
    );
    let _ = writeln!(
        s,
        "<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
        num(x0),
        num(oy),
        num(x1),
        num(oy)
    );
    let _ = writeln!(
        s,
        "<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
        num(ox),
        num(y0),
        num(ox),
        num(y1)
    );
    for t in &scene.trajectories {
        if t.is_stationary() {
            continue;
        }
        let _ = writeln!(s, "<polyline class=\"orbit\" points=\"{}\"/>", points_attr(&view, t.points()));
        if let Some(a) = arrowhead(&view, t) {
            s.push_str(&a);
            s.push('\n');
        }
    }
    for line in &scene.equilibria {
        let _ = writeln!(
            s,
            "<polyline class=\"equilibria\" points=\"{}\"/>",
            points_attr(&view, line.iter().copied())
        );
    }
    for line in &scene.singular {
        if line.len() == 1 {
            let (x, y) = view.map(line[0]);
            let _ = writeln!(s, "<circle class=\"rest\" cx=\"{}\" cy=\"{}\" r=\"3\"/>", num(x), num(y));
        } else {
            let _ = writeln!(
                s,
                "<polyline class=\"singular\" points=\"{}\"/>",
                points_attr(&view, line.iter().copied())
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn write(scene: &PortraitScene, title: &str, path: &Path) -> io::Result<()> {
    std::fs::write(path, render(scene, title))
}
