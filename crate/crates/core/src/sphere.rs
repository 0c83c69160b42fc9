//! Geodesic polygons on the unit sphere.
//!
//! Orientation convention: seen from outside the sphere the boundary runs
//! counterclockwise, so a convex polygon turns left (positive geodesic turning)
//! at every vertex.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Rotation3, Vec2, Vec3};
use crate::planar::default_tolerance;

/// Inputs whose norm is within this of 1 are accepted and renormalized.
pub const UNIT_NORM_TOL: f64 = 1e-9;
/// Allowed residual of `turning sum + area = 2 pi`.
pub const GAUSS_BONNET_TOL: f64 = 1e-8;
/// Consecutive vertices closer than this (or this close to antipodal) are rejected.
pub const EDGE_EPS: f64 = 1e-12;

/// A unit vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SphericalPoint(Vec3);

impl SphericalPoint {
    pub fn new(v: Vec3) -> Result<Self> {
        let n = v.norm();
        if !v.is_finite() || (n - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::NotOnSphere { index: 0, norm: n });
        }
        Ok(SphericalPoint(v / n))
    }

    /// Normalize any nonzero vector onto the sphere.
    pub fn from_direction(v: Vec3) -> Result<Self> {
        Ok(SphericalPoint(v.normalized()?))
    }

    pub fn v(self) -> Vec3 {
        self.0
    }
}

/// Great-circle distance between unit vectors.
pub fn arc_length(a: Vec3, b: Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Signed solid angle of the geodesic triangle `(a, b, c)`.
fn triangle_area(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    let num = a.dot(b.cross(c));
    let den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    2.0 * num.atan2(den)
}

/// Geodesic turning at `v` coming from `a` and leaving toward `b`.
fn turning_at(a: Vec3, v: Vec3, b: Vec3) -> f64 {
    let t_in = v * a.dot(v) - a;
    let t_out = b - v * b.dot(v);
    v.dot(t_in.cross(t_out)).atan2(t_in.dot(t_out))
}

/// Unit tangent at `a` of the geodesic toward `b`.
fn start_tangent(a: Vec3, b: Vec3) -> Vec3 {
    let w = b - a * a.dot(b);
    let n = w.norm();
    if n == 0.0 {
        Vec3::ZERO
    } else {
        w / n
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalCertificate {
    pub turnings: Vec<f64>,
    pub turning_sum: f64,
    /// Enclosed area, from a triangle fan (independent of the turnings).
    pub area: f64,
    pub gauss_bonnet_residual: f64,
    pub min_turning: f64,
    pub max_turning: f64,
    pub perimeter: f64,
    pub is_convex: bool,
    pub tolerance: f64,
}

impl SphericalCertificate {
    fn compute(vertices: &[Vec3], perimeter: f64, tolerance: f64) -> Self {
        let n = vertices.len();
        let turnings: Vec<f64> = (0..n)
            .map(|i| turning_at(vertices[(i + n - 1) % n], vertices[i], vertices[(i + 1) % n]))
            .collect();
        let turning_sum: f64 = turnings.iter().sum();
        let center = vertices
            .iter()
            .fold(Vec3::ZERO, |a, &v| a + v)
            .normalized()
            .unwrap_or(vertices[0]);
        let area: f64 = (0..n)
            .map(|i| triangle_area(center, vertices[i], vertices[(i + 1) % n]))
            .sum();
        let gauss_bonnet_residual = (turning_sum + area - TAU).abs();
        let min_turning = turnings.iter().copied().fold(f64::INFINITY, f64::min);
        let max_turning = turnings.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let is_convex = min_turning >= -tolerance
            && max_turning < PI
            && area > 0.0
            && perimeter < TAU
            && gauss_bonnet_residual <= GAUSS_BONNET_TOL;
        SphericalCertificate {
            turnings,
            turning_sum,
            area,
            gauss_bonnet_residual,
            min_turning,
            max_turning,
            perimeter,
            is_convex,
            tolerance,
        }
    }

    fn failure(&self) -> String {
        if self.min_turning < -self.tolerance {
            format!("negative turning {:.3e}", self.min_turning)
        } else if self.perimeter >= TAU {
            format!("perimeter {:.6} is not below 2 pi", self.perimeter)
        } else {
            format!(
                "Gauss-Bonnet residual {:.3e} (area {:.6})",
                self.gauss_bonnet_residual, self.area
            )
        }
    }
}

/// Closed geodesic polygon with arc length measured from a marked point.
#[derive(Clone, Debug, PartialEq)]
pub struct SphericalPolygon {
    vertices: Vec<Vec3>,
    cum_lengths: Vec<f64>,
    perimeter: f64,
    base_s: f64,
    certificate: SphericalCertificate,
}

impl SphericalPolygon {
    /// Normalize, validate and require convexity.
    pub fn new(vertices: Vec<Vec3>, base_s: f64) -> Result<Self> {
        let p = Self::certified(vertices, base_s)?;
        if !p.certificate.is_convex {
            return Err(Error::NotConvexSpherical(p.certificate.failure()));
        }
        Ok(p)
    }

    /// Normalize and validate the edges; convexity is only certified, not required.
    pub fn certified(vertices: Vec<Vec3>, base_s: f64) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::TooFewVertices { needed: 3, got: vertices.len() });
        }
        if !base_s.is_finite() {
            return Err(Error::NonFinite);
        }
        let mut unit = Vec::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            let n = v.norm();
            if !v.is_finite() || (n - 1.0).abs() > UNIT_NORM_TOL {
                return Err(Error::NotOnSphere { index: i, norm: n });
            }
            unit.push(*v / n);
        }
        Self::from_unit(unit, base_s, default_tolerance())
    }

    /// Regular `n`-gon with vertices at geodesic distance `rho` from +x0.
    pub fn regular_cap(n: usize, rho: f64, base_s: f64) -> Result<Self> {
        let verts = (0..n)
            .map(|k| {
                let t = Vec2::from_angle(TAU * k as f64 / n as f64) * rho.sin();
                Vec3::new(rho.cos(), t.x, t.y)
            })
            .collect();
        Self::new(verts, base_s)
    }

    pub(crate) fn from_unit(vertices: Vec<Vec3>, base_s: f64, tolerance: f64) -> Result<Self> {
        let n = vertices.len();
        let mut cum_lengths = Vec::with_capacity(n);
        let mut acc = 0.0;
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            let len = arc_length(a, b);
            if len <= EDGE_EPS || PI - len <= EDGE_EPS {
                return Err(Error::AntipodalEdge(i));
            }
            cum_lengths.push(acc);
            acc += len;
        }
        let certificate = SphericalCertificate::compute(&vertices, acc, tolerance);
        Ok(SphericalPolygon {
            vertices,
            cum_lengths,
            perimeter: acc,
            base_s: base_s.rem_euclid(acc),
            certificate,
        })
    }

    pub fn vertices(&self) -> &[Vec3] {
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

    pub fn certificate(&self) -> &SphericalCertificate {
        &self.certificate
    }

    pub fn edge_length(&self, i: usize) -> f64 {
        let next = if i + 1 == self.len() { self.perimeter } else { self.cum_lengths[i + 1] };
        next - self.cum_lengths[i]
    }

    fn reduce(&self, t: f64) -> f64 {
        let r = t.rem_euclid(self.perimeter);
        if r >= self.perimeter {
            0.0
        } else {
            r
        }
    }

    /// Arc length from the base to vertex `i`, in `[0, perimeter)`.
    pub fn vertex_position(&self, i: usize) -> f64 {
        let r = self.reduce(self.cum_lengths[i] - self.base_s);
        let snap = crate::planar::LENGTH_EPS_REL * self.perimeter;
        if r <= snap || self.perimeter - r <= snap {
            0.0
        } else {
            r
        }
    }

    /// Point at geodesic arc length `s` from the base (periodic).
    pub fn point_at(&self, s: f64) -> Vec3 {
        let t = self.reduce(self.base_s + s);
        let i = self.cum_lengths.partition_point(|&c| c <= t).saturating_sub(1);
        let off = t - self.cum_lengths[i];
        let a = self.vertices[i];
        if off <= 0.0 {
            return a;
        }
        let b = self.vertices[(i + 1) % self.len()];
        if off >= self.edge_length(i) {
            return b;
        }
        let w = start_tangent(a, b);
        let (sn, cs) = off.sin_cos();
        a * cs + w * sn
    }

    /// Same polygon moved by a rotation of the sphere; arc lengths are unchanged.
    pub fn rotated(&self, r: &Rotation3) -> Self {
        let vertices: Vec<Vec3> = self.vertices.iter().map(|&v| r.apply(v)).collect();
        let certificate =
            SphericalCertificate::compute(&vertices, self.perimeter, self.certificate.tolerance);
        SphericalPolygon {
            vertices,
            cum_lengths: self.cum_lengths.clone(),
            perimeter: self.perimeter,
            base_s: self.base_s,
            certificate,
        }
    }

    pub fn with_base(&self, base_s: f64) -> Self {
        let mut p = self.clone();
        p.base_s = self.reduce(base_s);
        p
    }

    /// Direction of the first moment `integral of x dA` over the enclosed region.
    pub fn centroid_direction(&self) -> Result<Vec3> {
        let n = self.len();
        let moment = (0..n).fold(Vec3::ZERO, |acc, i| {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let normal = a.cross(b).normalized().unwrap_or(Vec3::ZERO);
            acc + normal * (0.5 * arc_length(a, b))
        });
        moment.normalized()
    }

    /// Dense samples along the boundary: every vertex plus `per_edge - 1` interior points per edge.
    pub fn samples(&self, per_edge: usize) -> Vec<Vec3> {
        let n = self.len();
        let per_edge = per_edge.max(1);
        let mut out = Vec::with_capacity(n * per_edge);
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let w = start_tangent(a, b);
            let len = self.edge_length(i);
            for k in 0..per_edge {
                let t = len * k as f64 / per_edge as f64;
                let (sn, cs) = t.sin_cos();
                out.push(a * cs + w * sn);
            }
        }
        out
    }
}

pub fn build_spherical_polygon(vertices: Vec<Vec3>, base_s: f64) -> Result<SphericalPolygon> {
    SphericalPolygon::new(vertices, base_s)
}

pub fn sph_point_at(m: &SphericalPolygon, s: f64) -> SphericalPoint {
    SphericalPoint(m.point_at(s))
}

/// Distance from `p` to the minor geodesic arc `a`-`b`.
pub fn distance_to_arc(p: Vec3, a: Vec3, b: Vec3) -> f64 {
    let to_ends = arc_length(p, a).min(arc_length(p, b));
    let Ok(n) = a.cross(b).normalized() else {
        return to_ends;
    };
    let q = p - n * p.dot(n);
    let Ok(q) = q.normalized() else {
        return to_ends;
    };
    let inside = a.cross(q).dot(n) >= 0.0 && q.cross(b).dot(n) >= 0.0;
    if inside {
        arc_length(p, q).min(to_ends)
    } else {
        to_ends
    }
}

fn directed_hausdorff(from: &[Vec3], to: &SphericalPolygon) -> f64 {
    let n = to.len();
    from.iter()
        .map(|&p| {
            (0..n)
                .map(|i| distance_to_arc(p, to.vertices[i], to.vertices[(i + 1) % n]))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between two boundaries, sampled `per_edge` times per edge.
pub fn hausdorff_distance(a: &SphericalPolygon, b: &SphericalPolygon, per_edge: usize) -> f64 {
    directed_hausdorff(&a.samples(per_edge), b).max(directed_hausdorff(&b.samples(per_edge), a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octant() -> SphericalPolygon {
        SphericalPolygon::new(
            vec![Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0), Vec3::new(0.0, 0.0, 1.0)],
            0.0,
        )
        .unwrap()
    }

    fn cap_polygon(n: usize, rho: f64) -> SphericalPolygon {
        SphericalPolygon::regular_cap(n, rho, 0.0).unwrap()
    }

    #[test]
    fn octant_triangle_certificate() {
        let o = octant();
        assert!((o.perimeter() - 1.5 * PI).abs() < 1e-15);
        let c = o.certificate();
        for t in &c.turnings {
            assert!((t - PI / 2.0).abs() < 1e-15);
        }
        assert!((c.turning_sum - 1.5 * PI).abs() < 1e-14);
        assert!((c.area - PI / 2.0).abs() < 1e-14);
        assert!(c.gauss_bonnet_residual < 1e-14);
        assert!(c.is_convex);
    }

    #[test]
    fn small_cap_polygon_satisfies_gauss_bonnet() {
        let p = cap_polygon(64, 0.3);
        let c = p.certificate();
        let side = arc_length(p.vertices()[0], p.vertices()[1]);
        // oracle: L'Huilier excess of one fan triangle from the pole
        let (a, b, cc) = (0.3f64, 0.3f64, side);
        let s = 0.5 * (a + b + cc);
        let e = 4.0
            * ((s / 2.0).tan()
                * ((s - a) / 2.0).tan()
                * ((s - b) / 2.0).tan()
                * ((s - cc) / 2.0).tan())
            .sqrt()
            .atan();
        assert!((c.area - 64.0 * e).abs() < 1e-12);
        assert!((c.turning_sum - (TAU - 64.0 * e)).abs() < 1e-9);
        assert!(c.is_convex);
    }

    #[test]
    fn off_sphere_vertex_rejected() {
        let r = SphericalPolygon::new(
            vec![Vec3::new(2.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0), Vec3::new(0.0, 0.0, 1.0)],
            0.0,
        );
        assert!(matches!(r, Err(Error::NotOnSphere { index: 0, .. })));
    }

    #[test]
    fn antipodal_and_clockwise_rejected() {
        let r = SphericalPolygon::new(
            vec![Vec3::new(1.0, 0.0, 0.0), Vec3::new(-1.0, 0.0, 0.0), Vec3::new(0.0, 0.0, 1.0)],
            0.0,
        );
        assert!(matches!(r, Err(Error::AntipodalEdge(0))));
        let cw = SphericalPolygon::new(
            vec![Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 1.0, 0.0)],
            0.0,
        );
        assert!(matches!(cw, Err(Error::NotConvexSpherical(_))));
    }

    #[test]
    fn point_at_examples() {
        let o = octant();
        assert_eq!(o.point_at(0.0), Vec3::new(1.0, 0.0, 0.0));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(o.point_at(PI / 4.0).max_abs_diff(Vec3::new(h, h, 0.0)) < 1e-15);
        assert!(o.point_at(o.perimeter()).max_abs_diff(Vec3::new(1.0, 0.0, 0.0)) < 1e-15);
    }

    #[test]
    fn centroid_of_symmetric_cap_is_the_pole() {
        let c = cap_polygon(7, 0.8).centroid_direction().unwrap();
        assert!(c.max_abs_diff(Vec3::E0) < 1e-14);
        let oc = octant().centroid_direction().unwrap();
        let d = 1.0 / 3f64.sqrt();
        assert!(oc.max_abs_diff(Vec3::new(d, d, d)) < 1e-14);
    }

    #[test]
    fn hausdorff_of_nested_caps() {
        let a = cap_polygon(32, 0.5);
        let b = cap_polygon(32, 0.4);
        let h = hausdorff_distance(&a, &b, 8);
        assert!((h - 0.1).abs() < 0.01);
        assert!(hausdorff_distance(&a, &a, 8) < 1e-12);
    }
}
