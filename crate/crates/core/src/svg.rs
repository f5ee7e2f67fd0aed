//! SVG rendering of planar subpavings.

use std::fmt::Write as _;

use crate::paver::BoxClass;
use crate::subpaving::SubPaving;

pub const INSIDE_FILL: &str = "#4d4d4d";
pub const OUTSIDE_FILL: &str = "#c8c8c8";
pub const BOUNDARY_FILL: &str = "#ffffff";
pub const OUTLINE: &str = "#000000";
pub const OUTLINE_WIDTH: f64 = 0.5;
pub const MARKER_FILL: &str = "#d62728";

/// Target drawing width in pixels; height follows the domain aspect ratio.
pub const CANVAS_WIDTH: f64 = 800.0;

fn fill(class: BoxClass) -> &'static str {
    match class {
        BoxClass::Inside => INSIDE_FILL,
        BoxClass::Outside => OUTSIDE_FILL,
        BoxClass::Boundary => BOUNDARY_FILL,
    }
}

/// Renders the first two coordinates of `sp`, y axis pointing up. `markers`
/// are drawn as small crosses (e.g. a true robot pose).
pub fn render(sp: &SubPaving, markers: &[[f64; 2]]) -> String {
    let d = sp.domain();
    let (x0, w) = (d[0].lo(), d[0].width());
    let (y1, h) = if sp.dim() > 1 { (d[1].hi(), d[1].width()) } else { (1.0, 1.0) };
    let scale = if w > 0.0 { CANVAS_WIDTH / w } else { 1.0 };
    let (cw, ch) = (w * scale, h * scale);
    let px = |x: f64| (x - x0) * scale;
    let py = |y: f64| (y1 - y) * scale;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{cw:.1}" height="{ch:.1}" viewBox="0 0 {cw:.3} {ch:.3}">"#
    );
    for (b, c) in sp.boxes() {
        let (bx, by) = (b[0], if sp.dim() > 1 { b[1] } else { d[1.min(sp.dim() - 1)] });
        let stroke = if *c == BoxClass::Boundary {
            format!(r#" stroke="{OUTLINE}" stroke-width="{OUTLINE_WIDTH}""#)
        } else {
            String::new()
        };
        let _ = writeln!(
            s,
            r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{}"{stroke}/>"#,
            px(bx.lo()),
            py(by.hi()),
            bx.width() * scale,
            by.width() * scale,
            fill(*c),
        );
    }
    for m in markers {
        let (cx, cy) = (px(m[0]), py(m[1]));
        let _ = writeln!(
            s,
            r#"<path d="M{:.3} {:.3}L{:.3} {:.3}M{:.3} {:.3}L{:.3} {:.3}" stroke="{MARKER_FILL}" stroke-width="2"/>"#,
            cx - 5.0,
            cy - 5.0,
            cx + 5.0,
            cy + 5.0,
            cx - 5.0,
            cy + 5.0,
            cx + 5.0,
            cy - 5.0,
        );
    }
    s.push_str("</svg>\n");
    s
}
