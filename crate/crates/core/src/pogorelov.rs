//! The pairwise Pogorelov transformation.
//!
//! A pair of corresponding points `r1`, `r2` on the upper hemisphere is sent to
//! the planar pair `r̄1 / h`, `r̄2 / h`, where `r̄` is the projection onto the
//! `(x1, x2)`-plane and `h = x1⁰ + x2⁰`. Isometric convex links go to isometric
//! convex planar curves, and the planar sum lifts back to the normalized sum
//! of the spherical points.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Vec2, Vec3};
use crate::planar::{PlanarPolygon, LENGTH_EPS_REL};
use crate::sphere::{SphericalPoint, SphericalPolygon};

/// Smallest admissible height sum `x1⁰ + x2⁰`.
pub const HEIGHT_EPS: f64 = 1e-6;
/// Default subdivision is `perimeter / DEFAULT_STEPS`.
pub const DEFAULT_STEPS: usize = 256;
/// Relative tolerance for equal link perimeters.
pub const LINK_PERIMETER_TOL: f64 = 1e-9;

pub(crate) fn forward_raw(r1: Vec3, r2: Vec3) -> Result<(Vec2, Vec2)> {
    let h = r1.x0 + r2.x0;
    if h.is_nan() || h <= HEIGHT_EPS {
        return Err(Error::NonPositiveHeight(h));
    }
    Ok((r1.tangential() / h, r2.tangential() / h))
}

pub fn pogorelov_forward(r1: SphericalPoint, r2: SphericalPoint) -> Result<(Vec2, Vec2)> {
    forward_raw(r1.v(), r2.v())
}

pub(crate) fn inverse_raw(t: Vec2) -> Vec3 {
    let x0 = 1.0 / (1.0 + t.norm_squared()).sqrt();
    Vec3::new(x0, t.x * x0, t.y * x0)
}

pub fn pogorelov_inverse(tilde_sum: Vec2) -> SphericalPoint {
    SphericalPoint::from_direction(inverse_raw(tilde_sum)).expect("x0 is positive")
}

/// `(r̄1 + r̄2, x1⁰ + x2⁰) / sqrt(2 (1 + <r1, r2>))`.
pub fn closed_form(r1: Vec3, r2: Vec3) -> Vec3 {
    (r1 + r2) / (2.0 * (1.0 + r1.dot(r2))).sqrt()
}

/// Largest componentwise disagreement between the lifted planar sum,
/// the closed form and the normalized sum.
pub fn pogorelov_identity_check(r1: SphericalPoint, r2: SphericalPoint) -> Result<f64> {
    let (a, b) = pogorelov_forward(r1, r2)?;
    let lifted = inverse_raw(a + b);
    let closed = closed_form(r1.v(), r2.v());
    let normalized = (r1.v() + r2.v()).normalized()?;
    Ok(lifted
        .max_abs_diff(closed)
        .max(lifted.max_abs_diff(normalized))
        .max(closed.max_abs_diff(normalized)))
}

/// A correspondence parameter with the vertex indices that sit exactly on it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkBreakpoint {
    pub s: f64,
    pub v1: Option<usize>,
    pub v2: Option<usize>,
}

fn check_perimeters(m1: &SphericalPolygon, m2: &SphericalPolygon) -> Result<()> {
    let (p1, p2) = (m1.perimeter(), m2.perimeter());
    if (p1 - p2).abs() > LINK_PERIMETER_TOL * p1 {
        return Err(Error::PerimeterMismatch(p1, p2));
    }
    Ok(())
}

/// Vertex positions of both links (arc length from their bases), merged, plus `s = 0`.
/// Intervals longer than `max_step` are split evenly when `max_step` is given.
pub fn link_breakpoints(
    m1: &SphericalPolygon,
    m2: &SphericalPolygon,
    max_step: Option<f64>,
) -> Result<Vec<LinkBreakpoint>> {
    check_perimeters(m1, m2)?;
    let p = m1.perimeter();
    let lambda = m2.perimeter() / p;
    let snap = LENGTH_EPS_REL * p;
    let mut raw = Vec::with_capacity(m1.len() + m2.len());
    for i in 0..m1.len() {
        raw.push(LinkBreakpoint { s: m1.vertex_position(i), v1: Some(i), v2: None });
    }
    for j in 0..m2.len() {
        raw.push(LinkBreakpoint { s: m2.vertex_position(j) / lambda, v1: None, v2: Some(j) });
    }
    for b in raw.iter_mut() {
        if p - b.s <= snap {
            b.s = 0.0;
        }
    }
    raw.sort_by(|a, b| a.s.total_cmp(&b.s));
    let mut merged = vec![LinkBreakpoint { s: 0.0, v1: None, v2: None }];
    for b in raw {
        let last = merged.last_mut().unwrap();
        if b.s - last.s <= snap {
            last.v1 = last.v1.or(b.v1);
            last.v2 = last.v2.or(b.v2);
        } else {
            merged.push(b);
        }
    }
    let Some(step) = max_step else {
        return Ok(merged);
    };
    if step.is_nan() || step <= 0.0 {
        return Err(Error::Config(format!("max_step must be positive, got {step}")));
    }
    let mut out = Vec::with_capacity(merged.len() + (p / step) as usize + 1);
    for k in 0..merged.len() {
        let a = merged[k].s;
        let b = if k + 1 < merged.len() { merged[k + 1].s } else { p };
        out.push(merged[k]);
        let pieces = ((b - a) / step).ceil().max(1.0) as usize;
        for q in 1..pieces {
            out.push(LinkBreakpoint { s: a + (b - a) * q as f64 / pieces as f64, v1: None, v2: None });
        }
    }
    Ok(out)
}

/// The two corresponding points at a breakpoint; vertices are returned exactly.
pub fn link_points(m1: &SphericalPolygon, m2: &SphericalPolygon, b: &LinkBreakpoint) -> (Vec3, Vec3) {
    let lambda = m2.perimeter() / m1.perimeter();
    let r1 = b.v1.map_or_else(|| m1.point_at(b.s), |i| m1.vertices()[i]);
    let r2 = b.v2.map_or_else(|| m2.point_at(b.s * lambda), |j| m2.vertices()[j]);
    (r1, r2)
}

/// Planar images of a corresponding pair of links.
#[derive(Clone, Debug, Serialize)]
pub struct PogorelovImage {
    #[serde(skip)]
    pub planar1: PlanarPolygon,
    #[serde(skip)]
    pub planar2: PlanarPolygon,
    /// Correspondence parameters (arc length on the first link).
    pub breakpoints: Vec<f64>,
    /// `x1⁰ + x2⁰` at each breakpoint.
    pub x0_sums: Vec<f64>,
    /// `(r̄1, r̄2)` at each breakpoint.
    pub projections: Vec<(Vec2, Vec2)>,
    /// Transformed points before validation, one per breakpoint.
    pub tilde1: Vec<Vec2>,
    pub tilde2: Vec<Vec2>,
}

impl PogorelovImage {
    /// Largest difference between corresponding segment lengths of the two images.
    pub fn max_segment_mismatch(&self) -> f64 {
        segment_mismatch(&self.tilde1, &self.tilde2)
    }
}

/// Segment mismatch of the images sampled at `n` equally spaced parameters,
/// ignoring vertex positions.
pub fn sampled_mismatch(m1: &SphericalPolygon, m2: &SphericalPolygon, n: usize) -> Result<f64> {
    check_perimeters(m1, m2)?;
    if n < 3 {
        return Err(Error::TooFewVertices { needed: 3, got: n });
    }
    let lambda = m2.perimeter() / m1.perimeter();
    let step = m1.perimeter() / n as f64;
    let mut t1 = Vec::with_capacity(n);
    let mut t2 = Vec::with_capacity(n);
    for k in 0..n {
        let s = k as f64 * step;
        let (a, b) = forward_raw(m1.point_at(s), m2.point_at(s * lambda))?;
        t1.push(a);
        t2.push(b);
    }
    Ok(segment_mismatch(&t1, &t2))
}

pub(crate) fn segment_mismatch(a: &[Vec2], b: &[Vec2]) -> f64 {
    let n = a.len();
    (0..n)
        .map(|k| {
            let la = (a[(k + 1) % n] - a[k]).norm();
            let lb = (b[(k + 1) % n] - b[k]).norm();
            (la - lb).abs()
        })
        .fold(0.0, f64::max)
}

/// Transformed samples at every refined breakpoint, before validation.
#[derive(Clone, Debug)]
pub(crate) struct RawImage {
    pub breakpoints: Vec<f64>,
    pub tilde1: Vec<Vec2>,
    pub tilde2: Vec<Vec2>,
    pub x0_sums: Vec<f64>,
    pub projections: Vec<(Vec2, Vec2)>,
}

pub(crate) fn transform_samples(
    m1: &SphericalPolygon,
    m2: &SphericalPolygon,
    max_step: f64,
) -> Result<RawImage> {
    let breaks = link_breakpoints(m1, m2, Some(max_step))?;
    let n = breaks.len();
    let mut raw = RawImage {
        breakpoints: Vec::with_capacity(n),
        tilde1: Vec::with_capacity(n),
        tilde2: Vec::with_capacity(n),
        x0_sums: Vec::with_capacity(n),
        projections: Vec::with_capacity(n),
    };
    for b in &breaks {
        let (r1, r2) = link_points(m1, m2, b);
        let (a, c) = forward_raw(r1, r2)?;
        raw.breakpoints.push(b.s);
        raw.tilde1.push(a);
        raw.tilde2.push(c);
        raw.x0_sums.push(r1.x0 + r2.x0);
        raw.projections.push((r1.tangential(), r2.tangential()));
    }
    Ok(raw)
}

/// Transform with the default resolution `perimeter / 256`.
pub fn transform_link_pair(m1: &SphericalPolygon, m2: &SphericalPolygon) -> Result<PogorelovImage> {
    transform_link_pair_with_step(m1, m2, m1.perimeter() / DEFAULT_STEPS as f64)
}

pub fn transform_link_pair_with_step(
    m1: &SphericalPolygon,
    m2: &SphericalPolygon,
    max_step: f64,
) -> Result<PogorelovImage> {
    let RawImage { breakpoints, tilde1, tilde2, x0_sums, projections } =
        transform_samples(m1, m2, max_step)?;
    let planar = |pts: &[Vec2], which: &str| {
        PlanarPolygon::new(pts.to_vec(), 0.0).map_err(|e| Error::NotConvexPlanar(format!("{which}: {e}")))
    };
    Ok(PogorelovImage {
        planar1: planar(&tilde1, "first image")?,
        planar2: planar(&tilde2, "second image")?,
        breakpoints,
        x0_sums,
        projections,
        tilde1,
        tilde2,
    })
}
