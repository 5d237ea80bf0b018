//! SVG rendering of a solution: unit circle, arc boundaries as ticks, anchor
//! rays, zeros, and optionally the annulus `|z| ≥ R`.

use std::fmt::Write;

use blaschke_core::Angle;

use crate::output::ResultFile;

const SIZE: f64 = 400.0;
const CENTRE: f64 = SIZE / 2.0;
const SCALE: f64 = 180.0;

fn xy(radius: f64, angle: f64) -> (f64, f64) {
    (
        CENTRE + SCALE * radius * angle.cos(),
        CENTRE - SCALE * radius * angle.sin(),
    )
}

/// `boundaries` are the arc endpoints; pass none for a single full arc.
pub fn render(result: &ResultFile, boundaries: &[Angle], annulus: Option<f64>) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#
    );
    if let Some(r) = annulus {
        // even-odd ring between radius r and the circle
        let inner = SCALE * r;
        let _ = writeln!(
            svg,
            r##"<path class="annulus" fill="#dde6f0" fill-rule="evenodd" d="M {:.3} {CENTRE:.3} a {SCALE:.3} {SCALE:.3} 0 1 0 {:.3} 0 a {SCALE:.3} {SCALE:.3} 0 1 0 {:.3} 0 Z M {:.3} {CENTRE:.3} a {inner:.3} {inner:.3} 0 1 0 {:.3} 0 a {inner:.3} {inner:.3} 0 1 0 {:.3} 0 Z"/>"##,
            CENTRE - SCALE,
            2.0 * SCALE,
            -2.0 * SCALE,
            CENTRE - inner,
            2.0 * inner,
            -2.0 * inner,
        );
    }
    let _ = writeln!(
        svg,
        r#"<circle class="circle" cx="{CENTRE:.3}" cy="{CENTRE:.3}" r="{SCALE:.3}" fill="none" stroke="black" stroke-width="1.5"/>"#
    );
    for b in boundaries {
        let (x1, y1) = xy(0.94, b.radians());
        let (x2, y2) = xy(1.06, b.radians());
        let _ = writeln!(
            svg,
            r#"<line class="tick" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="black" stroke-width="2"/>"#
        );
    }
    for z in &result.zeros {
        let (x, y) = xy(1.0, z.angle);
        let _ = writeln!(
            svg,
            r#"<line class="ray" x1="{CENTRE:.3}" y1="{CENTRE:.3}" x2="{x:.3}" y2="{y:.3}" stroke="gray" stroke-width="0.75" stroke-dasharray="4 3"/>"#
        );
    }
    for z in &result.zeros {
        let (x, y) = xy(z.radius, z.angle);
        let _ = writeln!(
            svg,
            r#"<circle class="zero" cx="{x:.3}" cy="{y:.3}" r="3.5" fill="crimson"/>"#
        );
    }
    svg.push_str("</svg>\n");
    svg
}
