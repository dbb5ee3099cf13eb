//! Development figure: the unrolled sector, the copies of `q` on each
//! admissible sheet, one chord per classical geodesic, and the broken line
//! through the apex. Output is plain SVG text built in a fixed order with
//! fixed six-digit coordinates, so a given scenario renders to identical
//! bytes every time.

use std::f64::consts::PI;
use std::fmt::Write as _;

use conemorse_core::geodesic::GeodesicKind;

use crate::pipeline::{enumerate, PipelineError};
use crate::scenario::Scenario;

fn xy(r: f64, theta: f64) -> (f64, f64) {
    // Mathematical orientation with the SVG y axis flipped.
    (r * theta.cos(), -r * theta.sin())
}

fn fmt2(v: f64) -> String {
    // Normalize negative zero so coordinates have one spelling.
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.6}")
}

struct Svg {
    body: String,
}

impl Svg {
    fn line(&mut self, a: (f64, f64), b: (f64, f64), style: &str) {
        let _ = writeln!(
            self.body,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" style="{style}"/>"#,
            fmt2(a.0),
            fmt2(a.1),
            fmt2(b.0),
            fmt2(b.1)
        );
    }

    fn circle(&mut self, c: (f64, f64), r: f64, style: &str) {
        let _ = writeln!(
            self.body,
            r#"  <circle cx="{}" cy="{}" r="{}" style="{style}"/>"#,
            fmt2(c.0),
            fmt2(c.1),
            fmt2(r)
        );
    }

    fn text(&mut self, at: (f64, f64), size: f64, content: &str) {
        let _ = writeln!(
            self.body,
            r##"  <text x="{}" y="{}" font-size="{}" font-family="sans-serif" fill="#333">{content}</text>"##,
            fmt2(at.0),
            fmt2(at.1),
            fmt2(size)
        );
    }
}

/// Render the development view for a scenario.
pub fn develop_svg(scenario: &Scenario) -> Result<String, PipelineError> {
    let enumeration = enumerate(scenario)?;
    let alpha = scenario.alpha;
    let (rp, tp) = (scenario.p_r, scenario.p_theta);
    let (rq, tq) = (scenario.q_r, scenario.q_theta);
    let rmax = rp.max(rq);
    let r_sector = 1.15 * rmax;
    let half = 1.35 * r_sector;

    let mut svg = Svg {
        body: String::new(),
    };

    // Sector outline: boundary rays plus the outer arc. Beyond a full turn
    // the developed sector overlaps itself, so draw the full circle and say
    // so instead of pretending the overlap is visible.
    let ray_style = "stroke:#888;stroke-width:0.012;fill:none";
    if alpha <= 2.0 * PI + 1e-12 {
        svg.line((0.0, 0.0), xy(r_sector, 0.0), ray_style);
        svg.line((0.0, 0.0), xy(r_sector, alpha), ray_style);
        let (sx, sy) = xy(r_sector, 0.0);
        let (ex, ey) = xy(r_sector, alpha);
        let large = if alpha > PI { 1 } else { 0 };
        // Sweep flag 0 walks counterclockwise in the flipped frame.
        let _ = writeln!(
            svg.body,
            r#"  <path d="M {} {} A {} {} 0 {large} 0 {} {}" style="{ray_style}"/>"#,
            fmt2(sx),
            fmt2(sy),
            fmt2(r_sector),
            fmt2(r_sector),
            fmt2(ex),
            fmt2(ey)
        );
    } else {
        svg.circle((0.0, 0.0), r_sector, ray_style);
        svg.text(
            (-half + 0.05 * r_sector, -half + 0.12 * r_sector),
            0.07 * r_sector,
            &format!("total angle {alpha:.6} exceeds one turn; sheets overlap"),
        );
    }

    // Chords, one per classical geodesic, drawn from p's developed position.
    let p_pos = xy(rp, tp);
    for g in &enumeration {
        if let (GeodesicKind::Classical { .. }, Some(delta)) = (g.kind, g.development_angle) {
            let q_pos = xy(rq, tp + delta);
            svg.line(p_pos, q_pos, "stroke:#1f6fb2;stroke-width:0.015");
        }
    }

    // Broken line through the apex, dashed.
    let q_base = xy(rq, tq);
    let broken_style = "stroke:#b23a1f;stroke-width:0.015;stroke-dasharray:0.04,0.03";
    svg.line(p_pos, (0.0, 0.0), broken_style);
    svg.line((0.0, 0.0), q_base, broken_style);

    // Markers: apex, p, and the q copies.
    svg.circle((0.0, 0.0), 0.02 * rmax, "fill:#000");
    svg.circle(p_pos, 0.025 * rmax, "fill:#1f6fb2");
    svg.text(
        (p_pos.0 + 0.04 * rmax, p_pos.1 - 0.04 * rmax),
        0.08 * rmax,
        "p",
    );
    for g in &enumeration {
        if let (GeodesicKind::Classical { sheet }, Some(delta)) = (g.kind, g.development_angle) {
            let q_pos = xy(rq, tp + delta);
            svg.circle(q_pos, 0.025 * rmax, "fill:#b23a1f");
            svg.text(
                (q_pos.0 + 0.04 * rmax, q_pos.1 - 0.04 * rmax),
                0.08 * rmax,
                &format!("q[{sheet}]"),
            );
        }
    }

    let view = format!(
        "{} {} {} {}",
        fmt2(-half),
        fmt2(-half),
        fmt2(2.0 * half),
        fmt2(2.0 * half)
    );
    Ok(format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"{view}\">\n{}</svg>\n",
        svg.body
    ))
}
