use std::fmt::Write;

use super::ScenarioFile;
use crate::geometry::Obstacle;
use crate::mrmp::CompositePath;

const SIZE: f64 = 600.0;
const COLORS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

fn sx(x: f64) -> f64 {
    x * SIZE
}

fn sy(y: f64) -> f64 {
    (1.0 - y) * SIZE
}

/// Static SVG of a planar scene: obstacles, start discs (filled), goal discs
/// (dashed) and, when given, each robot's trajectory.
pub fn render_svg(s: &ScenarioFile, path: Option<&CompositePath>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white" stroke="black"/>"##);
    if s.workspace.dim() == 2 {
        for o in s.workspace.obstacles() {
            match o {
                Obstacle::Disc { center, radius } | Obstacle::HyperSphere { center, radius } => {
                    let _ = writeln!(
                        out,
                        r##"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#888"/>"##,
                        sx(center[0]),
                        sy(center[1]),
                        radius * SIZE
                    );
                }
                Obstacle::ConvexPolygon { vertices } => {
                    let pts: Vec<String> =
                        vertices.iter().map(|v| format!("{:.3},{:.3}", sx(v[0]), sy(v[1]))).collect();
                    let _ = writeln!(out, r##"<polygon points="{}" fill="#888"/>"##, pts.join(" "));
                }
                Obstacle::HyperBox { lo, hi } => {
                    let _ = writeln!(
                        out,
                        r##"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="#888"/>"##,
                        sx(lo[0]),
                        sy(hi[1]),
                        (hi[0] - lo[0]) * SIZE,
                        (hi[1] - lo[1]) * SIZE
                    );
                }
            }
        }
    }
    for (i, r) in s.robots.iter().enumerate() {
        let c = COLORS[i % COLORS.len()];
        if let Some(p) = path.and_then(|p| p.trajectories.get(i)) {
            let pts: Vec<String> = p.iter().map(|v| format!("{:.3},{:.3}", sx(v[0]), sy(v[1]))).collect();
            let _ =
                writeln!(out, r#"<polyline points="{}" fill="none" stroke="{c}" stroke-width="2"/>"#, pts.join(" "));
        }
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="{c}" fill-opacity="0.35" stroke="{c}"/>"#,
            sx(r.start[0]),
            sy(r.start[1]),
            r.radius * SIZE
        );
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="{c}" stroke-dasharray="6 4"/>"#,
            sx(r.goal[0]),
            sy(r.goal[1]),
            r.radius * SIZE
        );
    }
    out.push_str("</svg>\n");
    out
}
