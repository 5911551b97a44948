//! SVG rendering of a free space diagram.
//!
//! Everything inside the `diagram` group is drawn in arc-length units; the
//! group transform maps them to the canvas with `y` pointing up.

use std::f64::consts::PI;
use std::fmt::Write;

use packsc::freespace::{FreeSpaceDiagram, QuadrantMap};
use packsc::reachability::CriticalPoint;

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 60.0;
/// Points per chain; a closed outline has at most twice this many.
const CHAIN: usize = 32;

/// Outline of the white part of one quadrant, in local cell coordinates.
/// The part is convex, so it is bounded by a lower and an upper chain.
pub fn quadrant_outline(q: &QuadrantMap, r: f64) -> Vec<(f64, f64)> {
    let cands = q.candidates(r);
    if cands.is_empty() {
        return Vec::new();
    }
    let xa = cands.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
    let xb = cands.iter().map(|c| c.0).fold(f64::NEG_INFINITY, f64::max);
    let mut lower = Vec::with_capacity(CHAIN);
    let mut upper = Vec::with_capacity(CHAIN);
    for k in 0..CHAIN {
        // denser near the ends, where the boundary turns fastest
        let f = 0.5 * (1.0 - (PI * k as f64 / (CHAIN - 1) as f64).cos());
        let x = (xa + f * (xb - xa)).clamp(q.x0, q.x1);
        if let Some((lo, hi)) = q.vertical_interval(x, r) {
            lower.push((x, lo));
            upper.push((x, hi));
        }
    }
    upper.reverse();
    lower.extend(upper);
    lower
}

fn ticks(span: f64) -> Vec<f64> {
    if span <= 0.0 {
        return vec![0.0];
    }
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|s| s * mag).find(|&s| s >= raw).unwrap_or(10.0 * mag);
    (0..).map(|i| i as f64 * step).take_while(|&v| v <= span * (1.0 + 1e-9)).collect()
}

fn label(v: f64, step: f64) -> String {
    let digits = (-step.log10().floor()).max(0.0) as usize;
    format!("{v:.digits$}")
}

pub fn render(fsd: &FreeSpaceDiagram, points: &[CriticalPoint]) -> String {
    let (w, h) = (fsd.width(), fsd.height());
    let scale = (CANVAS - 2.0 * MARGIN) / w.max(h);
    let (cw, ch) = (w * scale + 2.0 * MARGIN, h * scale + 2.0 * MARGIN);
    let line = 1.0 / scale;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{cw:.1}" height="{ch:.1}" viewBox="0 0 {cw:.1} {ch:.1}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<g id="diagram" transform="translate({MARGIN} {:.6}) scale({scale:.9} {:.9})">"##,
        MARGIN + h * scale,
        -scale
    );
    let _ = writeln!(s, r##"<rect class="canvas" x="0" y="0" width="{w}" height="{h}" fill="#444"/>"##);
    for cell in &fsd.cells {
        let g = &cell.geometry;
        let _ = writeln!(
            s,
            r##"<rect class="cell" x="{}" y="{}" width="{}" height="{}" fill="#777" stroke="#222" stroke-width="{line}"/>"##,
            cell.origin.0, cell.origin.1, g.width, g.height
        );
        for q in &g.quadrants {
            let outline = quadrant_outline(q, g.threshold);
            if outline.is_empty() {
                continue;
            }
            let pts: Vec<String> =
                outline.iter().map(|(x, y)| format!("{},{}", cell.origin.0 + x, cell.origin.1 + y)).collect();
            let _ = writeln!(
                s,
                r##"<polygon class="white" points="{}" fill="white" stroke="white" stroke-width="{}"/>"##,
                pts.join(" "),
                0.5 * line
            );
        }
    }
    for p in points {
        let _ = writeln!(
            s,
            r##"<circle class="critical" cx="{}" cy="{}" r="{}" fill="#d62728"/>"##,
            p.position.0,
            p.position.1,
            2.0 * line
        );
    }
    let _ = writeln!(s, "</g>");
    // axes, in canvas units
    let (x0, y0) = (MARGIN, MARGIN + h * scale);
    let _ = writeln!(s, r#"<g class="axes" stroke="black" stroke-width="1" font-family="sans-serif" font-size="11">"#);
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{:.3}" y2="{y0}"/>"#, x0 + w * scale);
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN}"/>"#);
    let step = |t: &[f64]| if t.len() > 1 { t[1] } else { 1.0 };
    let tw = ticks(w);
    for &v in &tw {
        let x = x0 + v * scale;
        let _ = writeln!(s, r#"<line x1="{x:.3}" y1="{y0}" x2="{x:.3}" y2="{:.3}"/>"#, y0 + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.3}" y="{:.3}" text-anchor="middle" stroke="none">{}</text>"#, y0 + 18.0, label(v, step(&tw)));
    }
    let th = ticks(h);
    for &v in &th {
        let y = y0 - v * scale;
        let _ = writeln!(s, r#"<line x1="{:.3}" y1="{y:.3}" x2="{x0}" y2="{y:.3}"/>"#, x0 - 5.0);
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" text-anchor="end" stroke="none">{}</text>"#, x0 - 8.0, y + 4.0, label(v, step(&th)));
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" text-anchor="middle" stroke="none">P (arc length)</text>"#,
        x0 + 0.5 * w * scale,
        y0 + 40.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.3}" text-anchor="middle" stroke="none" transform="rotate(-90 16 {:.3})">Q (arc length)</text>"#,
        y0 - 0.5 * h * scale,
        y0 - 0.5 * h * scale
    );
    let _ = writeln!(s, "</g>\n</svg>");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use packsc::freespace::{build_diagram, FreeSpaceConfig};
    use packsc::Trajectory;

    fn inside(poly: &[(f64, f64)], p: (f64, f64)) -> bool {
        let mut c = false;
        for i in 0..poly.len() {
            let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
            if (a.1 > p.1) != (b.1 > p.1) && p.0 < a.0 + (p.1 - a.1) / (b.1 - a.1) * (b.0 - a.0) {
                c = !c;
            }
        }
        c
    }

    #[test]
    fn outlines_hug_the_white_set() {
        let p = Trajectory::from_xy(&[(0.0, 0.0), (6.0, 1.0), (7.0, 5.0)]).unwrap();
        let q = Trajectory::from_xy(&[(0.5, 0.5), (5.0, 0.0), (8.0, 4.0)]).unwrap();
        let fsd = build_diagram(&p, &q, FreeSpaceConfig::new(1.5, 0.5).unwrap()).unwrap();
        let mut checked = 0;
        for cell in &fsd.cells {
            let g = &cell.geometry;
            for qm in &g.quadrants {
                let poly = quadrant_outline(qm, g.threshold);
                assert!(poly.len() <= 2 * CHAIN);
                for &(x, y) in &poly {
                    assert!(qm.h(x, y).norm() <= g.threshold * (1.0 + 1e-9));
                }
                // interior of the outline is white
                for i in 0..40 {
                    for j in 0..40 {
                        let x = qm.x0 + (qm.x1 - qm.x0) * (i as f64 + 0.5) / 40.0;
                        let y = qm.y0 + (qm.y1 - qm.y0) * (j as f64 + 0.5) / 40.0;
                        if inside(&poly, (x, y)) {
                            assert!(qm.is_white(x, y, g.threshold));
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn tick_steps() {
        assert_eq!(ticks(10.0), vec![0.0, 2.0, 4.0, 6.0, 8.0, 10.0]);
        assert_eq!(ticks(0.3).len(), 4);
        assert_eq!(label(0.1 * 3.0, 0.1), "0.3");
    }
}
