//! Static SVG figures in input coordinates.

use std::fmt::Write;

use potato::geom::{Bbox, Point2, SimplePolygon};

/// Optional layers drawn over the polygon.
#[derive(Debug, Clone, Default)]
pub struct Overlays<'a> {
    pub solution: Option<&'a [Point2<f64>]>,
    pub gamma: Option<[Point2<f64>; 4]>,
    pub samples: &'a [Point2<f64>],
    /// Extra segments, e.g. visibility graph edges.
    pub segments: &'a [(Point2<f64>, Point2<f64>)],
}

/// Renders `polygon` and the overlays with a viewBox of the polygon's
/// bounding box plus a 5% margin. The y axis points up.
///
/// Layers are emitted in the fixed order polygon, gamma, samples, solution.
pub fn render_svg(polygon: &SimplePolygon<f64>, overlays: &Overlays<'_>) -> String {
    let bb: Bbox<f64> = polygon.bbox();
    let margin = 0.05 * bb.width().max(bb.height());
    let (x0, y0) = (bb.min.x - margin, bb.min.y - margin);
    let (w, h) = (bb.width() + 2.0 * margin, bb.height() + 2.0 * margin);
    let stroke = 0.004 * w.max(h);
    let radius = 1.5 * stroke;

    let mut s = String::new();
    // Flipping y maps [y0, y0 + h] onto [-(y0 + h), -y0].
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        num(x0),
        num(-(y0 + h)),
        num(w),
        num(h)
    );
    let _ = writeln!(s, r#"<g transform="scale(1,-1)" stroke-width="{}">"#, num(stroke));
    let _ = writeln!(
        s,
        r##"<path id="polygon" d="{}" fill="#e8e8e8" stroke="#202020"/>"##,
        path(polygon.vertices())
    );
    if let Some(g) = &overlays.gamma {
        let _ = writeln!(
            s,
            r##"<path id="gamma" d="{}" fill="none" stroke="#3060c0" stroke-dasharray="{}"/>"##,
            path(g),
            num(4.0 * stroke)
        );
    }
    if !overlays.segments.is_empty() {
        let _ = writeln!(s, r##"<g id="segments" stroke="#909090">"##);
        for (a, b) in overlays.segments {
            let _ = writeln!(
                s,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                num(a.x),
                num(a.y),
                num(b.x),
                num(b.y)
            );
        }
        let _ = writeln!(s, "</g>");
    }
    if !overlays.samples.is_empty() {
        let _ = writeln!(s, r##"<g id="samples" fill="#c03030">"##);
        for p in overlays.samples {
            let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{}"/>"#, num(p.x), num(p.y), num(radius));
        }
        let _ = writeln!(s, "</g>");
    }
    if let Some(sol) = overlays.solution.filter(|v| !v.is_empty()) {
        let _ = writeln!(
            s,
            r##"<path id="solution" d="{}" fill="#40a040" fill-opacity="0.5" stroke="#206020"/>"##,
            path(sol)
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

fn path(pts: &[Point2<f64>]) -> String {
    let mut d = String::new();
    for (i, p) in pts.iter().enumerate() {
        let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, num(p.x), num(p.y));
    }
    d.push('Z');
    d
}

/// Shortest round-trip formatting, so output is exact and deterministic.
fn num(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else {
        format!("{v}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> SimplePolygon<f64> {
        SimplePolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn polygon_only() {
        let s = render_svg(&square(), &Overlays::default());
        assert_eq!(s.matches("<path").count(), 1);
        assert!(s.contains(r#"viewBox="-0.05 -1.05 1.1 1.1""#));
    }

    #[test]
    fn nested_paths_are_deterministic() {
        let sq = square();
        let hull = sq.convex_hull().vertices().to_vec();
        let o = Overlays {
            solution: Some(&hull),
            ..Default::default()
        };
        let a = render_svg(&sq, &o);
        assert_eq!(a, render_svg(&sq, &o));
        assert_eq!(a.matches("<path").count(), 2);
        assert!(a.find(r#"id="polygon""#) < a.find(r#"id="solution""#));
    }
}
