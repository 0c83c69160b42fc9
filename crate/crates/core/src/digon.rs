//! Dihedral angles through their spherical digons, approximated by truncated
//! quadrilaterals of equal perimeter.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use serde::Serialize;

use crate::cones::{position_cones, ConvexCone3};
use crate::error::{Error, Result};
use crate::geometry::{Rotation3, Vec3};
use crate::sphere::{arc_length, hausdorff_distance, SphericalPolygon};

/// Relative tolerance for equalized quadrilateral perimeters.
pub const EQUALIZE_TOL: f64 = 1e-12;
/// Samples per edge when measuring Hausdorff distances between levels.
pub const HAUSDORFF_SAMPLES: usize = 64;
/// Turning above which a combined-link vertex counts as a corner.
pub const CORNER_TURNING: f64 = 1e-9;

/// A lune of the given opening angle, stored symbolically.
///
/// In the standard position its vertices are `±(0, 0, 1)` and it is bisected
/// by the half-plane through `+x0`; `placement` moves it from there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Digon {
    angle: f64,
    axis_angle: [f64; 4],
    placement: Rotation3,
}

impl Digon {
    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Placement as `[axis0, axis1, axis2, angle]`.
    pub fn axis_angle(&self) -> [f64; 4] {
        self.axis_angle
    }

    pub fn placement(&self) -> &Rotation3 {
        &self.placement
    }

    pub fn perimeter(&self) -> f64 {
        TAU
    }

    pub fn vertices(&self) -> [Vec3; 2] {
        [self.placement.apply(Vec3::new(0.0, 0.0, 1.0)), self.placement.apply(Vec3::new(0.0, 0.0, -1.0))]
    }

    /// Quadrilateral obtained by cutting both vertices at colatitude `eps`.
    /// The base is the midpoint of the crosscut near the first vertex.
    pub fn truncated(&self, eps: f64) -> Result<SphericalPolygon> {
        if !(eps > 0.0 && eps < FRAC_PI_2) {
            return Err(Error::TruncationTooDeep(eps));
        }
        let h = 0.5 * self.angle;
        let quad: Vec<Vec3> = [(eps, -h), (PI - eps, -h), (PI - eps, h), (eps, h)]
            .into_iter()
            .map(|(t, l)| self.placement.apply(lune_point(t, l)))
            .collect();
        let cut = arc_length(quad[3], quad[0]);
        let q = SphericalPolygon::new(quad, 0.0)?;
        let base = q.perimeter() - 0.5 * cut;
        Ok(q.with_base(base))
    }
}

fn lune_point(colat: f64, lon: f64) -> Vec3 {
    let (st, ct) = colat.sin_cos();
    let (sl, cl) = lon.sin_cos();
    Vec3::new(st * cl, st * sl, ct)
}

/// Digon of opening `angle` in `(0, pi)`, moved by the axis-angle rotation `placement`.
pub fn make_digon(angle: f64, placement: [f64; 4]) -> Result<Digon> {
    if !(angle > 0.0 && angle < PI) {
        return Err(Error::InvalidAngle(angle));
    }
    let [a0, a1, a2, t] = placement;
    let rot = if t == 0.0 {
        Rotation3::IDENTITY
    } else {
        Rotation3::from_axis_angle(Vec3::new(a0, a1, a2), t)?
    };
    Ok(Digon { angle, axis_angle: placement, placement: rot })
}

/// Perimeter of the quadrilateral cut from a lune of opening `angle` at depth `eps`.
pub fn truncated_perimeter(angle: f64, eps: f64) -> f64 {
    let cut = arc_length(lune_point(eps, -0.5 * angle), lune_point(eps, 0.5 * angle));
    2.0 * (PI - 2.0 * eps) + 2.0 * cut
}

/// Truncate `d1` at depth `eps` and `d2` at the depth giving the same perimeter.
pub fn truncate_digons(d1: &Digon, d2: &Digon, eps: f64) -> Result<(SphericalPolygon, SphericalPolygon)> {
    let (q1, _, q2) = truncate_pair(d1, d2, eps)?;
    Ok((q1, q2))
}

fn truncate_pair(d1: &Digon, d2: &Digon, eps: f64) -> Result<(SphericalPolygon, f64, SphericalPolygon)> {
    if !(eps > 0.0 && eps < FRAC_PI_4) {
        return Err(Error::TruncationTooDeep(eps));
    }
    let q1 = d1.truncated(eps)?;
    let target = q1.perimeter();
    let eps2 = if d1.angle == d2.angle {
        eps
    } else {
        equalizing_depth(d2.angle, target).ok_or(Error::TruncationTooDeep(eps))?
    };
    let q2 = d2.truncated(eps2)?;
    if (q2.perimeter() - target).abs() > EQUALIZE_TOL * target {
        return Err(Error::TruncationTooDeep(eps2));
    }
    Ok((q1, eps2, q2))
}

/// Depth at which the truncated lune of opening `angle` has perimeter `target`.
fn equalizing_depth(angle: f64, target: f64) -> Option<f64> {
    let f = |e: f64| truncated_perimeter(angle, e) - target;
    let (mut lo, mut hi) = (f64::EPSILON, FRAC_PI_2 - 1e-9);
    if f(lo) < 0.0 || f(hi) > 0.0 {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    let e = 0.5 * (lo + hi);
    (e > 0.0 && e < FRAC_PI_2).then_some(e)
}

/// One rung of the truncation ladder.
#[derive(Clone, Debug, Serialize)]
pub struct DihedralLevel {
    pub eps: f64,
    /// Depth used for the second digon.
    pub eps2: f64,
    pub perimeter: f64,
    pub psi: f64,
    pub sigma0: f64,
    pub is_convex: bool,
    pub min_turning: f64,
    pub gauss_bonnet_residual: f64,
    /// Vertices with turning above `CORNER_TURNING`.
    pub vertex_count: usize,
    /// Opening angle between the great circles of the two longest edges.
    pub long_edge_angle: f64,
    /// Hausdorff distance to the previous level's combined link.
    pub hausdorff_to_previous: Option<f64>,
    #[serde(skip)]
    pub combined: SphericalPolygon,
}

#[derive(Clone, Debug, Serialize)]
pub struct DihedralReport {
    pub angle1: f64,
    pub angle2: f64,
    pub base_offset: f64,
    pub levels: Vec<DihedralLevel>,
}

impl DihedralReport {
    pub fn all_convex(&self) -> bool {
        self.levels.iter().all(|l| l.is_convex)
    }

    /// Successive Hausdorff distances, coarse to fine.
    pub fn hausdorff_sequence(&self) -> Vec<f64> {
        self.levels.iter().filter_map(|l| l.hausdorff_to_previous).collect()
    }

    pub fn hausdorff_strictly_decreasing(&self) -> bool {
        self.hausdorff_sequence().windows(2).all(|w| w[1] < w[0])
    }
}

fn long_edge_angle(link: &SphericalPolygon) -> f64 {
    let n = link.len();
    let mut edges: Vec<usize> = (0..n).collect();
    edges.sort_by(|&a, &b| link.edge_length(b).total_cmp(&link.edge_length(a)));
    let normal = |i: usize| {
        let v = link.vertices();
        v[i].cross(v[(i + 1) % n]).normalized().unwrap_or(Vec3::ZERO)
    };
    let (n1, n2) = (normal(edges[0]), normal(edges[1]));
    PI - n1.cross(n2).norm().atan2(n1.dot(n2))
}

/// Truncate, position and combine at each depth of a strictly decreasing ladder.
/// `base_offset` shifts the second quadrilateral's marked point along its boundary.
pub fn combine_dihedral(d1: &Digon, d2: &Digon, ladder: &[f64], base_offset: f64) -> Result<DihedralReport> {
    if ladder.is_empty() {
        return Err(Error::Config("empty truncation ladder".into()));
    }
    if ladder.windows(2).any(|w| w[1] >= w[0] || w[1].is_nan()) {
        return Err(Error::Config("truncation ladder must be strictly decreasing".into()));
    }
    let mut levels: Vec<DihedralLevel> = Vec::with_capacity(ladder.len());
    for &eps in ladder {
        let (q1, eps2, q2) = truncate_pair(d1, d2, eps)?;
        let q2 = q2.with_base(q2.base_s() + base_offset);
        let pos = position_cones(&ConvexCone3::new(q1.clone()), &ConvexCone3::new(q2))?;
        let link = pos.combined.link;
        let cert = link.certificate();
        let hausdorff_to_previous =
            levels.last().map(|prev| hausdorff_distance(&prev.combined, &link, HAUSDORFF_SAMPLES));
        levels.push(DihedralLevel {
            eps,
            eps2,
            perimeter: q1.perimeter(),
            psi: pos.psi,
            sigma0: pos.sigma0,
            is_convex: cert.is_convex,
            min_turning: cert.min_turning,
            gauss_bonnet_residual: cert.gauss_bonnet_residual,
            vertex_count: cert.turnings.iter().filter(|&&t| t > CORNER_TURNING).count(),
            long_edge_angle: long_edge_angle(&link),
            hausdorff_to_previous,
            combined: link,
        });
    }
    Ok(DihedralReport { angle1: d1.angle, angle2: d2.angle, base_offset, levels })
}
