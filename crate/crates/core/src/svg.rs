//! Static SVG plots of planar curves and projected spherical links.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::planar::PlanarPolygon;
use crate::sphere::SphericalPolygon;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 0.05;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// A closed curve with a legend label.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledCurve {
    pub label: String,
    pub points: Vec<Vec2>,
}

impl LabeledCurve {
    pub fn new(label: impl Into<String>, points: Vec<Vec2>) -> Self {
        LabeledCurve { label: label.into(), points }
    }

    pub fn planar(label: impl Into<String>, p: &PlanarPolygon) -> Self {
        Self::new(label, p.vertices().to_vec())
    }

    /// Orthographic projection onto the `(x1, x2)`-plane, `per_edge` samples per edge.
    pub fn spherical(label: impl Into<String>, p: &SphericalPolygon, per_edge: usize) -> Self {
        Self::new(label, p.samples(per_edge).into_iter().map(|v| v.tangential()).collect())
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// One `<polygon>` per curve, fitted to the joint bounding box plus a 5% margin,
/// with a legend in the top-left corner.
pub fn render_svg(curves: &[LabeledCurve]) -> Result<String> {
    let all: Vec<Vec2> = curves.iter().flat_map(|c| c.points.iter().copied()).collect();
    if curves.is_empty() || all.is_empty() {
        return Err(Error::EmptyInput);
    }
    if all.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    let (mut lo, mut hi) = (all[0], all[0]);
    for p in &all {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
    let pad = MARGIN * span;
    let scale = SIZE / (span + 2.0 * pad);
    let to_px = |p: Vec2| ((p.x - lo.x + pad) * scale, (hi.y - p.y + pad) * scale);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, c) in curves.iter().enumerate() {
        let pts: Vec<String> = c
            .points
            .iter()
            .map(|&p| {
                let (x, y) = to_px(p);
                format!("{x:.4},{y:.4}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            pts.join(" "),
            PALETTE[i % PALETTE.len()]
        );
    }
    let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="14">"#);
    for (i, c) in curves.iter().enumerate() {
        let y = 20.0 + 18.0 * i as f64;
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(out, r#"<line x1="10" y1="{y}" x2="30" y2="{y}" stroke="{color}" stroke-width="3"/>"#);
        let _ = writeln!(out, r#"<text x="36" y="{}">{}</text>"#, y + 5.0, escape(&c.label));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_renders_one_polygon() {
        let sq = PlanarPolygon::rectangle(1.0, 1.0).unwrap();
        let svg = render_svg(&[LabeledCurve::planar("square", &sq)]).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 1);
        let pts = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(pts.split(' ').count(), 4);
        assert!(svg.contains(">square</text>"));
    }

    #[test]
    fn three_curves_and_empty_input() {
        let sq = PlanarPolygon::rectangle(1.0, 1.0).unwrap();
        let curves = vec![
            LabeledCurve::planar("F1", &sq),
            LabeledCurve::planar("F2", &sq),
            LabeledCurve::planar("F1 + F2 <sum>", &sq),
        ];
        let svg = render_svg(&curves).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 3);
        assert!(svg.contains("&lt;sum&gt;"));
        assert_eq!(render_svg(&curves).unwrap(), svg);
        assert_eq!(render_svg(&[]), Err(Error::EmptyInput));
    }
}
