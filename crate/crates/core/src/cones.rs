//! Convex cones with apex at the origin, their isometric combination, and the
//! rotation search that makes the combination convex.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{normalize_angle, signed_angle, Rotation3, Vec3};
use crate::planar::default_tolerance;
use crate::pogorelov::{link_breakpoints, link_points, transform_samples, DEFAULT_STEPS};
use crate::sphere::{arc_length, SphericalCertificate, SphericalPolygon, EDGE_EPS};

/// Sums shorter than this are treated as antipodal correspondences.
pub const ANTIPODAL_EPS: f64 = 1e-12;
/// Candidates whose planar tangent margin is not above this are skipped.
pub const CONE_MARGIN_EPS: f64 = 1e-9;

/// The cone `{t r : t >= 0, r on the link}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexCone3 {
    pub link: SphericalPolygon,
}

impl ConvexCone3 {
    pub fn new(link: SphericalPolygon) -> Self {
        ConvexCone3 { link }
    }

    /// Point of the cone at link parameter `s` and distance `t` from the apex.
    pub fn point(&self, s: f64, t: f64) -> Vec3 {
        self.link.point_at(s) * t
    }

    pub fn rotated(&self, r: &Rotation3) -> Self {
        ConvexCone3 { link: self.link.rotated(r) }
    }
}

pub fn cone_from_link(link: SphericalPolygon) -> ConvexCone3 {
    ConvexCone3::new(link)
}

/// Normalized sum of two unit vectors; equal inputs are returned unchanged.
fn unit_sum(r1: Vec3, r2: Vec3, s: f64) -> Result<Vec3> {
    if r1 == r2 {
        return Ok(r1);
    }
    let sum = r1 + r2;
    let n = sum.norm();
    if n < ANTIPODAL_EPS {
        return Err(Error::AntipodalCorrespondence(s));
    }
    Ok(sum / n)
}

/// Link of `R = t (r1 + r2)`, sampled at the merged vertex breakpoints.
///
/// The result carries a convexity certificate; it is not required to be convex.
pub fn combine_cones(k1: &ConvexCone3, k2: &ConvexCone3) -> Result<ConvexCone3> {
    let breaks = link_breakpoints(&k1.link, &k2.link, None)?;
    let mut verts: Vec<Vec3> = Vec::with_capacity(breaks.len());
    for b in &breaks {
        let (r1, r2) = link_points(&k1.link, &k2.link, b);
        let v = unit_sum(r1, r2, b.s)?;
        if verts.last().is_none_or(|&q| arc_length(q, v) > EDGE_EPS) {
            verts.push(v);
        }
    }
    while verts.len() > 1 && arc_length(verts[0], verts[verts.len() - 1]) <= EDGE_EPS {
        verts.pop();
    }
    if verts.len() < 3 {
        return Err(Error::DegenerateResult(verts.len()));
    }
    let link = SphericalPolygon::from_unit(verts, 0.0, default_tolerance())?;
    Ok(ConvexCone3 { link })
}

/// Outcome of [`position_cones`].
#[derive(Clone, Debug)]
pub struct ConePositioning {
    /// Rotation of the first (centered) cone about the `x0` axis.
    pub psi: f64,
    /// Correspondence parameter where the planar images have parallel tangents.
    pub sigma0: f64,
    /// `pi` minus the largest planar tangent gap after rotating by `psi`.
    pub margin: f64,
    /// Rotation applied to the first input (centering, then `psi`).
    pub motion1: Rotation3,
    /// Rotation applied to the second input (centering).
    pub motion2: Rotation3,
    pub cone1: ConvexCone3,
    pub cone2: ConvexCone3,
    pub combined: ConvexCone3,
    /// Candidates certified before one passed.
    pub candidates_tried: usize,
}

impl ConePositioning {
    pub fn certificate(&self) -> &SphericalCertificate {
        self.combined.link.certificate()
    }
}

/// Summary used in reports.
#[derive(Clone, Debug, Serialize)]
pub struct PositioningSummary {
    pub psi: f64,
    pub sigma0: f64,
    pub margin: f64,
    pub candidates_tried: usize,
    pub min_turning: f64,
    pub gauss_bonnet_residual: f64,
    pub is_convex: bool,
}

impl From<&ConePositioning> for PositioningSummary {
    fn from(p: &ConePositioning) -> Self {
        let c = p.certificate();
        PositioningSummary {
            psi: p.psi,
            sigma0: p.sigma0,
            margin: p.margin,
            candidates_tried: p.candidates_tried,
            min_turning: c.min_turning,
            gauss_bonnet_residual: c.gauss_bonnet_residual,
            is_convex: c.is_convex,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    psi: f64,
    sigma0: f64,
    margin: f64,
}

/// Rotation taking the link's area centroid direction to `+x0`.
pub fn centering_rotation(link: &SphericalPolygon) -> Result<Rotation3> {
    Rotation3::aligning(link.centroid_direction()?, Vec3::E0)
}

/// Unwrapped direction of each closed-chain segment `p[k] -> p[k+1]`.
fn unwrapped_directions(points: &[crate::geometry::Vec2]) -> Vec<f64> {
    let n = points.len();
    let seg: Vec<_> = (0..n).map(|k| points[(k + 1) % n] - points[k]).collect();
    let mut out = Vec::with_capacity(n);
    let mut acc = seg[0].angle();
    out.push(acc);
    for k in 1..n {
        acc += signed_angle(seg[k - 1], seg[k]);
        out.push(acc);
    }
    out
}

fn candidates(g: &[f64], s: &[f64]) -> Vec<Candidate> {
    let hi = g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = g.iter().copied().fold(f64::INFINITY, f64::min);
    let c = 0.5 * (hi + lo);
    let m = g.len();
    // first breakpoint whose tangent jump brackets the midpoint
    let k_mid = (0..m)
        .find(|&k| {
            let prev = g[(k + m - 1) % m];
            (prev.min(g[k]) <= c && c <= prev.max(g[k])) || g[k] == c
        })
        .unwrap_or(0);
    let mut out = vec![Candidate { psi: normalize_angle(-c), sigma0: s[k_mid], margin: PI - 0.5 * (hi - lo) }];
    let mut rest: Vec<Candidate> = (0..m)
        .map(|k| Candidate {
            psi: normalize_angle(-g[k]),
            sigma0: s[k],
            margin: PI - (hi - g[k]).max(g[k] - lo),
        })
        .filter(|c| c.margin > CONE_MARGIN_EPS)
        .collect();
    rest.sort_by(|a, b| b.margin.total_cmp(&a.margin).then(a.sigma0.total_cmp(&b.sigma0)));
    for cand in rest {
        if out.iter().all(|o| normalize_angle(o.psi - cand.psi).abs() > 1e-12) {
            out.push(cand);
        }
    }
    out.retain(|c| c.margin > CONE_MARGIN_EPS);
    out
}

/// Center both cones on the `x0` axis, then search rotations of the first cone
/// about that axis, taking the first whose combination is certified convex.
pub fn position_cones(k1: &ConvexCone3, k2: &ConvexCone3) -> Result<ConePositioning> {
    position_cones_with_step(k1, k2, k1.link.perimeter() / DEFAULT_STEPS as f64)
}

pub fn position_cones_with_step(k1: &ConvexCone3, k2: &ConvexCone3, max_step: f64) -> Result<ConePositioning> {
    let (p1, p2) = (k1.link.perimeter(), k2.link.perimeter());
    if (p1 - p2).abs() > crate::pogorelov::LINK_PERIMETER_TOL * p1 {
        return Err(Error::PerimeterMismatch(p1, p2));
    }
    let c1 = centering_rotation(&k1.link)?;
    let c2 = centering_rotation(&k2.link)?;
    let l1 = k1.link.rotated(&c1);
    let l2 = k2.link.rotated(&c2);
    let raw = transform_samples(&l1, &l2, max_step)?;
    let th1 = unwrapped_directions(&raw.tilde1);
    let th2 = unwrapped_directions(&raw.tilde2);
    let g0 = normalize_angle(th1[0] - th2[0]) - (th1[0] - th2[0]);
    let g: Vec<f64> = th1.iter().zip(&th2).map(|(a, b)| a - b + g0).collect();

    let cone2 = ConvexCone3::new(l2);
    let cands = candidates(&g, &raw.breakpoints);
    let mut best = f64::NEG_INFINITY;
    for (tried, cand) in cands.iter().enumerate() {
        let spin = Rotation3::about_x0(cand.psi);
        let cone1 = ConvexCone3::new(l1.rotated(&spin));
        let combined = match combine_cones(&cone1, &cone2) {
            Ok(k) => k,
            Err(Error::AntipodalCorrespondence(_)) | Err(Error::DegenerateResult(_)) | Err(Error::AntipodalEdge(_)) => {
                continue
            }
            Err(e) => return Err(e),
        };
        let cert = combined.link.certificate();
        if cert.is_convex {
            return Ok(ConePositioning {
                psi: cand.psi,
                sigma0: cand.sigma0,
                margin: cand.margin,
                motion1: c1.then(&spin),
                motion2: c2,
                cone1,
                cone2,
                combined,
                candidates_tried: tried + 1,
            });
        }
        best = best.max(cert.min_turning);
    }
    Err(Error::PositioningNotFound { candidates: cands.len(), best_min_turning: best })
}
