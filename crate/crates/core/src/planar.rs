//! Closed convex polygons in the plane, parametrized by arc length from a marked point.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{signed_angle, Angle, RigidMotion2, Vec2};

/// Certificate tolerance used when the caller does not pass one.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Vertices whose exterior angle is below this are merged away on build.
pub const COLLINEAR_EPS: f64 = 1e-12;
/// Edges shorter than this fraction of the perimeter are degenerate.
pub const LENGTH_EPS_REL: f64 = 1e-12;

/// Default certificate tolerance, overridable with the `ISOCOMB_TOL` environment variable.
pub fn default_tolerance() -> f64 {
    static TOL: OnceLock<f64> = OnceLock::new();
    *TOL.get_or_init(|| {
        std::env::var("ISOCOMB_TOL")
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t > 0.0)
            .unwrap_or(DEFAULT_TOLERANCE)
    })
}

/// A validated, counterclockwise, strictly convex polygon with a marked base point.
///
/// Arc length `s` is measured counterclockwise from the base point, which sits
/// `base_s` along the boundary from vertex 0 and may lie inside an edge.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarPolygon {
    vertices: Vec<Vec2>,
    cum_lengths: Vec<f64>,
    perimeter: f64,
    base_s: f64,
    edge_dirs: Vec<f64>,
    exterior: Vec<f64>,
}

/// Turning of the boundary measured from the base point.
///
/// Right-continuous step function: on `[breakpoints[k], breakpoints[k+1])` the
/// turning equals `values[k]`. `breakpoints[0] == 0` and `values[0] == 0`; a vertex
/// sitting exactly at the base point contributes its jump at `s = perimeter`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TurningFunction {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
    pub perimeter: f64,
}

impl TurningFunction {
    pub fn eval(&self, s: f64) -> f64 {
        let k = self.breakpoints.partition_point(|&b| b <= s);
        self.values[k.saturating_sub(1)]
    }

    pub fn total_increase(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0) - self.values[0]
    }

    /// `(s, jump)` for every vertex.
    pub fn jumps(&self) -> Vec<(f64, f64)> {
        (1..self.values.len())
            .map(|k| (self.breakpoints[k], self.values[k] - self.values[k - 1]))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexityCertificate {
    /// Interior angle at each vertex.
    pub interior_angles: Vec<f64>,
    pub exterior_sum: f64,
    pub min_exterior: f64,
    pub signed_area: f64,
    pub is_simple: bool,
    pub is_convex: bool,
    pub tolerance: f64,
}

impl ConvexityCertificate {
    fn failed(tolerance: f64) -> Self {
        ConvexityCertificate {
            interior_angles: Vec::new(),
            exterior_sum: 0.0,
            min_exterior: f64::NEG_INFINITY,
            signed_area: 0.0,
            is_simple: false,
            is_convex: false,
            tolerance,
        }
    }

    /// Sum of `pi - beta` over all vertices.
    pub fn turning_from_interior(&self) -> f64 {
        self.interior_angles.iter().map(|b| PI - b).sum()
    }
}

fn signed_area(vertices: &[Vec2]) -> f64 {
    let n = vertices.len();
    let o = vertices[0];
    (1..n.saturating_sub(1))
        .map(|i| (vertices[i] - o).cross(vertices[i + 1] - o))
        .sum::<f64>()
        * 0.5
}

fn chain_perimeter(vertices: &[Vec2]) -> f64 {
    let n = vertices.len();
    (0..n).map(|i| (vertices[(i + 1) % n] - vertices[i]).norm()).sum()
}

fn check_edges(vertices: &[Vec2]) -> Result<()> {
    let n = vertices.len();
    let p = chain_perimeter(vertices);
    let eps = LENGTH_EPS_REL * p;
    for i in 0..n {
        let len = (vertices[(i + 1) % n] - vertices[i]).norm();
        if len <= eps || len == 0.0 {
            return Err(Error::DegenerateEdge { index: i, length: len });
        }
    }
    Ok(())
}

fn exterior_angles(vertices: &[Vec2]) -> Vec<f64> {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let prev = vertices[(i + n - 1) % n];
            let next = vertices[(i + 1) % n];
            signed_angle(vertices[i] - prev, next - vertices[i])
        })
        .collect()
}

/// Angle bookkeeping for a closed chain; reports non-convexity instead of failing.
pub fn convexity_certificate(vertices: &[Vec2], tolerance: f64) -> Result<ConvexityCertificate> {
    if vertices.len() < 3 {
        return Err(Error::TooFewVertices { needed: 3, got: vertices.len() });
    }
    check_edges(vertices)?;
    let ext = exterior_angles(vertices);
    let exterior_sum: f64 = ext.iter().sum();
    let min_exterior = ext.iter().copied().fold(f64::INFINITY, f64::min);
    let area = signed_area(vertices);
    let is_simple = area > 0.0 && (exterior_sum - TAU).abs() <= tolerance;
    Ok(ConvexityCertificate {
        interior_angles: ext.iter().map(|e| PI - e).collect(),
        exterior_sum,
        min_exterior,
        signed_area: area,
        is_simple,
        is_convex: is_simple && min_exterior >= -tolerance,
        tolerance,
    })
}

/// Like [`convexity_certificate`] but collapses repeated points first and never fails.
///
/// Points closer than `LENGTH_EPS_REL * scale` count as repeated; `scale` is the
/// length of the inputs the chain was built from, so a chain that collapsed to
/// rounding noise is reported as degenerate.
pub fn certify_chain(points: &[Vec2], scale: f64, tolerance: f64) -> ConvexityCertificate {
    let pruned = prune_within(points, LENGTH_EPS_REL * scale);
    convexity_certificate(&pruned, tolerance)
        .unwrap_or_else(|_| ConvexityCertificate::failed(tolerance))
}

/// Drop points closer than `rel_eps * perimeter` to their predecessor (cyclically).
pub fn prune_duplicates(points: &[Vec2], rel_eps: f64) -> Vec<Vec2> {
    if points.is_empty() {
        return Vec::new();
    }
    prune_within(points, rel_eps * chain_perimeter(points))
}

fn prune_within(points: &[Vec2], eps: f64) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = Vec::with_capacity(points.len());
    for &p in points {
        if out.last().is_none_or(|&q| (p - q).norm() > eps) {
            out.push(p);
        }
    }
    while out.len() > 1 && (out[0] - out[out.len() - 1]).norm() <= eps {
        out.pop();
    }
    out
}

impl PlanarPolygon {
    /// Validate and build. Collinear vertices are merged; the base point keeps its position.
    pub fn new(vertices: Vec<Vec2>, base_s: f64) -> Result<Self> {
        Self::with_tolerance(vertices, base_s, default_tolerance())
    }

    pub fn with_tolerance(vertices: Vec<Vec2>, base_s: f64, tolerance: f64) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::TooFewVertices { needed: 3, got: vertices.len() });
        }
        if !base_s.is_finite() || vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        check_edges(&vertices)?;
        if signed_area(&vertices) <= 0.0 {
            return Err(Error::WrongOrientation { area: signed_area(&vertices) });
        }

        // merge collinear vertices, remembering original indices
        let mut kept: Vec<usize> = (0..vertices.len()).collect();
        loop {
            let pts: Vec<Vec2> = kept.iter().map(|&i| vertices[i]).collect();
            if pts.len() < 3 {
                return Err(Error::DegenerateResult(pts.len()));
            }
            let ext = exterior_angles(&pts);
            match ext.iter().position(|e| e.abs() < COLLINEAR_EPS) {
                Some(j) => {
                    kept.remove(j);
                }
                None => break,
            }
        }
        let merged: Vec<Vec2> = kept.iter().map(|&i| vertices[i]).collect();
        let ext = exterior_angles(&merged);
        for (i, &e) in ext.iter().enumerate() {
            if e < -tolerance || e >= PI - tolerance {
                return Err(Error::NotConvex { index: kept[i], angle: e });
            }
        }
        let total: f64 = ext.iter().sum();
        if (total - TAU).abs() > tolerance {
            return Err(Error::NotSimple { turning: total });
        }

        let original_offset: f64 = (0..kept[0])
            .map(|i| (vertices[i + 1] - vertices[i]).norm())
            .sum();
        let mut poly = Self::from_parts(merged, 0.0);
        poly.base_s = poly.reduce(base_s - original_offset);
        Ok(poly)
    }

    /// Construct without validation; callers guarantee the vertices already satisfy the invariants.
    fn from_parts(vertices: Vec<Vec2>, base_s: f64) -> Self {
        let n = vertices.len();
        let mut cum_lengths = Vec::with_capacity(n);
        let mut edge_dirs = Vec::with_capacity(n);
        let mut acc = 0.0;
        for i in 0..n {
            cum_lengths.push(acc);
            let d = vertices[(i + 1) % n] - vertices[i];
            acc += d.norm();
            edge_dirs.push(d.angle());
        }
        let exterior = exterior_angles(&vertices);
        let mut poly = PlanarPolygon {
            vertices,
            cum_lengths,
            perimeter: acc,
            base_s: 0.0,
            edge_dirs,
            exterior,
        };
        poly.base_s = poly.reduce(base_s);
        poly
    }

    pub fn regular(n: usize, circumradius: f64, center: Vec2, base_s: f64) -> Result<Self> {
        let verts = (0..n)
            .map(|k| center + Vec2::from_angle(TAU * k as f64 / n as f64) * circumradius)
            .collect();
        Self::new(verts, base_s)
    }

    /// Axis-aligned rectangle with lower-left corner at the origin, base at that corner.
    pub fn rectangle(width: f64, height: f64) -> Result<Self> {
        Self::new(
            vec![
                Vec2::new(0.0, 0.0),
                Vec2::new(width, 0.0),
                Vec2::new(width, height),
                Vec2::new(0.0, height),
            ],
            0.0,
        )
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn cum_lengths(&self) -> &[f64] {
        &self.cum_lengths
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn base_s(&self) -> f64 {
        self.base_s
    }

    pub fn exterior_angles(&self) -> &[f64] {
        &self.exterior
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn edge_length(&self, i: usize) -> f64 {
        let next = if i + 1 == self.len() { self.perimeter } else { self.cum_lengths[i + 1] };
        next - self.cum_lengths[i]
    }

    /// Direction angle of edge `i` (from vertex `i` to vertex `i+1`).
    pub fn edge_direction(&self, i: usize) -> f64 {
        self.edge_dirs[i]
    }

    fn snap_eps(&self) -> f64 {
        LENGTH_EPS_REL * self.perimeter
    }

    fn reduce(&self, t: f64) -> f64 {
        let r = t.rem_euclid(self.perimeter);
        if r >= self.perimeter {
            0.0
        } else {
            r
        }
    }

    /// Absolute boundary position (from vertex 0) of arc length `s` from the base.
    fn absolute(&self, s: f64) -> f64 {
        self.reduce(self.base_s + s)
    }

    /// Edge index containing absolute position `t` and the offset along it.
    fn locate(&self, t: f64) -> (usize, f64) {
        let i = self.cum_lengths.partition_point(|&c| c <= t).saturating_sub(1);
        (i, t - self.cum_lengths[i])
    }

    /// Point at arc length `s` from the base point (periodic in `s`).
    pub fn point_at(&self, s: f64) -> Vec2 {
        let t = self.absolute(s);
        let (i, off) = self.locate(t);
        if off <= 0.0 {
            return self.vertices[i];
        }
        let len = self.edge_length(i);
        let j = (i + 1) % self.len();
        if off >= len {
            return self.vertices[j];
        }
        self.vertices[i].lerp(self.vertices[j], off / len)
    }

    /// Index of the edge carrying the right semi-tangent at absolute position `t`.
    fn right_edge(&self, t: f64) -> usize {
        let (i, off) = self.locate(t);
        if self.edge_length(i) - off <= self.snap_eps() {
            (i + 1) % self.len()
        } else {
            i
        }
    }

    fn left_edge(&self, t: f64) -> usize {
        let (i, off) = self.locate(t);
        if off <= self.snap_eps() && self.perimeter - t > self.snap_eps() {
            (i + self.len() - 1) % self.len()
        } else if self.perimeter - t <= self.snap_eps() {
            self.len() - 1
        } else {
            i
        }
    }

    /// Direction of the forward tangent; at a vertex, the outgoing edge.
    pub fn right_semitangent(&self, s: f64) -> Angle {
        Angle(self.edge_dirs[self.right_edge(self.absolute(s))])
    }

    /// Direction of the incoming edge at `s`; equals the right semi-tangent inside edges.
    pub fn left_semitangent(&self, s: f64) -> Angle {
        Angle(self.edge_dirs[self.left_edge(self.absolute(s))])
    }

    /// Arc length from the base to vertex `i`, in `[0, perimeter)`.
    pub fn vertex_position(&self, i: usize) -> f64 {
        let r = self.reduce(self.cum_lengths[i] - self.base_s);
        if r <= self.snap_eps() || self.perimeter - r <= self.snap_eps() {
            0.0
        } else {
            r
        }
    }

    /// Edge index containing arc length `s` from the base, on the right side of a vertex.
    pub fn edge_at(&self, s: f64) -> usize {
        self.right_edge(self.absolute(s))
    }

    pub fn turning_function(&self) -> TurningFunction {
        let mut events: Vec<(f64, f64)> = (0..self.len())
            .map(|i| {
                let s = self.vertex_position(i);
                (if s == 0.0 { self.perimeter } else { s }, self.exterior[i])
            })
            .collect();
        events.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut breakpoints = vec![0.0];
        let mut values = vec![0.0];
        let mut acc = 0.0;
        for (s, e) in events {
            acc += e;
            breakpoints.push(s);
            values.push(acc);
        }
        TurningFunction { breakpoints, values, perimeter: self.perimeter }
    }

    pub fn certificate(&self, tolerance: f64) -> ConvexityCertificate {
        certify_chain(&self.vertices, self.perimeter, tolerance)
    }

    /// Same polygon with the base moved `delta` further along the boundary.
    pub fn rebased(&self, delta: f64) -> Self {
        let mut p = self.clone();
        p.base_s = self.reduce(self.base_s + delta);
        p
    }

    pub fn with_base(&self, base_s: f64) -> Self {
        let mut p = self.clone();
        p.base_s = self.reduce(base_s);
        p
    }

    /// Image under an orientation-preserving isometry; the base point moves with it.
    pub fn transformed(&self, m: &RigidMotion2) -> Self {
        let verts = self.vertices.iter().map(|&v| m.apply(v)).collect();
        Self::from_parts(verts, self.base_s)
    }

    /// Polygon inscribed through `n` equally spaced arc-length samples starting at the base.
    pub fn inscribe(&self, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices { needed: 3, got: n });
        }
        let step = self.perimeter / n as f64;
        let samples: Vec<Vec2> = (0..n).map(|k| self.point_at(k as f64 * step)).collect();
        let pts = prune_duplicates(&samples, LENGTH_EPS_REL);
        if pts.len() < 3 {
            return Err(Error::DegenerateResult(pts.len()));
        }
        match Self::new(pts, 0.0) {
            Err(Error::TooFewVertices { got, .. }) => Err(Error::DegenerateResult(got)),
            other => other,
        }
    }

    /// Homothety about `center` rescaling the perimeter to `target`.
    pub fn dilate_to_perimeter(&self, target: f64, center: Vec2) -> Result<Self> {
        if !target.is_finite() || target <= 0.0 {
            return Err(Error::Config(format!("target perimeter {target} must be positive")));
        }
        let ratio = target / self.perimeter;
        let verts = self.vertices.iter().map(|&v| center + (v - center) * ratio).collect();
        Ok(Self::from_parts(verts, self.base_s * ratio))
    }
}

pub fn build_polygon(vertices: Vec<Vec2>, base_s: f64) -> Result<PlanarPolygon> {
    PlanarPolygon::new(vertices, base_s)
}

pub fn point_at(f: &PlanarPolygon, s: f64) -> Vec2 {
    f.point_at(s)
}

pub fn right_semitangent(f: &PlanarPolygon, s: f64) -> Angle {
    f.right_semitangent(s)
}

pub fn left_semitangent(f: &PlanarPolygon, s: f64) -> Angle {
    f.left_semitangent(s)
}

pub fn turning_function(f: &PlanarPolygon) -> TurningFunction {
    f.turning_function()
}

pub fn inscribe(f: &PlanarPolygon, n: usize) -> Result<PlanarPolygon> {
    f.inscribe(n)
}

pub fn dilate_to_perimeter(f: &PlanarPolygon, target: f64, center: Vec2) -> Result<PlanarPolygon> {
    f.dilate_to_perimeter(target, center)
}
