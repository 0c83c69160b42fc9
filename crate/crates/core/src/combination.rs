//! Isometric combination `r(s) = r1(s) + r2(s)` of two equal-length convex polygons.
//!
//! Both curves are parametrized by arc length from their marked points. The
//! combination is piecewise linear exactly on the union of the two vertex sets,
//! so everything here works on that merged breakpoint set and is exact up to
//! rounding.
//!
//! Alignment works with the unwrapped tangent-direction difference
//! `g(s) = phi1(s) - phi2(s)`. If `|g(s) - c| < pi` for every `s` after rotating
//! the second curve by `c`, the combined tangent is the bisector of two
//! non-opposite directions, turns monotonically, and closes up after one turn
//! of `2 pi`: the combination is convex.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    angle_between, circ_dist, normalize_angle, signed_angle, Angle, RigidMotion2, Vec2,
};
use crate::planar::{
    certify_chain, default_tolerance, ConvexityCertificate, PlanarPolygon, LENGTH_EPS_REL,
};

/// Smallest accepted alignment margin, radians.
pub const MARGIN_EPS: f64 = 1e-9;
/// Relative perimeter mismatch accepted by [`make_pair`].
pub const PERIMETER_REL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct MarkedPair {
    pub f1: PlanarPolygon,
    pub f2: PlanarPolygon,
    /// Applied to `f2` when evaluating the correspondence.
    pub motion: RigidMotion2,
}

/// A correspondence breakpoint: arc length from the base and the vertex of each curve sitting there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Breakpoint {
    pub s: f64,
    pub v1: Option<usize>,
    pub v2: Option<usize>,
}

/// Per-interval tangent data between consecutive breakpoints.
#[derive(Clone, Debug)]
struct Intervals {
    breaks: Vec<Breakpoint>,
    /// direction of f1 on interval k (interval k starts at breaks[k])
    dir1: Vec<f64>,
    /// direction of motion(f2) on interval k
    dir2: Vec<f64>,
    /// unwrapped phi1 - phi2, starting from the principal value on interval 0
    g: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventCase {
    EdgeEdge,
    VertexEdge,
    VertexVertex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CombinationVertexEvent {
    pub s: f64,
    pub case_id: EventCase,
    /// Angle of the first polygon at the point (`pi` inside an edge).
    pub beta1: Angle,
    pub beta2: Angle,
    /// Angle of the combined curve, measured from its one-sided tangents.
    pub beta: Angle,
    /// Angle between the right semi-tangents (vertex-edge events only).
    pub alpha: Option<Angle>,
    /// Angle between the left semi-tangents (vertex-edge events only).
    pub delta: Option<Angle>,
    /// Angle between the right semi-tangent of the curve with the vertex and the
    /// left semi-tangent of the other (vertex-edge events only).
    pub gamma: Option<Angle>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CombinedCurve {
    /// Arc length of each sample from the common base.
    pub breakpoints: Vec<f64>,
    /// `r1 + r2` at each sample.
    pub curve: Vec<Vec2>,
    /// Bending field `r1 - r2` at each sample.
    pub tau_segments: Vec<Vec2>,
    pub certificate: ConvexityCertificate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlignmentResult {
    /// Arc length (on the first curve, from the old base) of the new base point.
    pub sigma0: f64,
    /// Motion applied to the second curve.
    pub motion: RigidMotion2,
    /// `pi` minus the largest unwrapped tangent gap after alignment.
    pub margin: Angle,
    /// Tangent-direction difference on each correspondence interval after alignment.
    pub g_values: Vec<f64>,
    /// The aligned pair, rebased at `sigma0`.
    pub pair: MarkedPair,
}

impl MarkedPair {
    pub fn new(f1: PlanarPolygon, f2: PlanarPolygon) -> Result<Self> {
        Self::with_motion(f1, f2, RigidMotion2::IDENTITY)
    }

    pub fn with_motion(f1: PlanarPolygon, f2: PlanarPolygon, motion: RigidMotion2) -> Result<Self> {
        let (p1, p2) = (f1.perimeter(), f2.perimeter());
        if (p1 - p2).abs() > PERIMETER_REL_TOL * p1 {
            return Err(Error::PerimeterMismatch(p1, p2));
        }
        if f1.signed_area() <= 0.0 || f2.signed_area() <= 0.0 {
            return Err(Error::OrientationMismatch);
        }
        Ok(MarkedPair { f1, f2, motion })
    }

    pub fn perimeter(&self) -> f64 {
        self.f1.perimeter()
    }

    /// Arc length on `f2` per unit arc length on `f1`.
    pub fn scale(&self) -> f64 {
        self.f2.perimeter() / self.f1.perimeter()
    }

    pub fn r1(&self, s: f64) -> Vec2 {
        self.f1.point_at(s)
    }

    pub fn r2(&self, s: f64) -> Vec2 {
        self.motion.apply(self.f2.point_at(s * self.scale()))
    }

    fn r1_at(&self, b: &Breakpoint) -> Vec2 {
        match b.v1 {
            Some(i) => self.f1.vertices()[i],
            None => self.r1(b.s),
        }
    }

    fn r2_at(&self, b: &Breakpoint) -> Vec2 {
        match b.v2 {
            Some(j) => self.motion.apply(self.f2.vertices()[j]),
            None => self.r2(b.s),
        }
    }

    /// Union of both vertex sets (in `f1` arc length) plus the common base at `s = 0`.
    pub fn breakpoints(&self) -> Vec<Breakpoint> {
        let p = self.perimeter();
        let lambda = self.scale();
        let snap = LENGTH_EPS_REL * p;
        let mut raw: Vec<Breakpoint> = Vec::with_capacity(self.f1.len() + self.f2.len() + 1);
        for i in 0..self.f1.len() {
            raw.push(Breakpoint { s: self.f1.vertex_position(i), v1: Some(i), v2: None });
        }
        for j in 0..self.f2.len() {
            raw.push(Breakpoint { s: self.f2.vertex_position(j) / lambda, v1: None, v2: Some(j) });
        }
        for b in raw.iter_mut() {
            if p - b.s <= snap {
                b.s = 0.0;
            }
        }
        raw.sort_by(|a, b| a.s.total_cmp(&b.s));

        let mut out = vec![Breakpoint { s: 0.0, v1: None, v2: None }];
        for b in raw {
            let last = out.last_mut().unwrap();
            if b.s - last.s <= snap {
                last.v1 = last.v1.or(b.v1);
                last.v2 = last.v2.or(b.v2);
            } else {
                out.push(b);
            }
        }
        out
    }

    fn intervals(&self) -> Intervals {
        let breaks = self.breakpoints();
        let ext1 = self.f1.exterior_angles();
        let ext2 = self.f2.exterior_angles();
        let mut e1 = self.f1.edge_at(0.0);
        let mut e2 = self.f2.edge_at(0.0);
        let rot = self.motion.rotation.0;

        let mut dir1 = Vec::with_capacity(breaks.len());
        let mut dir2 = Vec::with_capacity(breaks.len());
        let mut g = Vec::with_capacity(breaks.len());
        let mut acc = 0.0;
        for (k, b) in breaks.iter().enumerate() {
            if let Some(i) = b.v1 {
                e1 = i;
                if k > 0 {
                    acc += ext1[i];
                }
            }
            if let Some(j) = b.v2 {
                e2 = j;
                if k > 0 {
                    acc -= ext2[j];
                }
            }
            let d1 = self.f1.edge_direction(e1);
            let d2 = self.f2.edge_direction(e2) + rot;
            if k == 0 {
                acc = normalize_angle(d1 - d2);
            }
            dir1.push(d1);
            dir2.push(d2);
            g.push(acc);
        }
        Intervals { breaks, dir1, dir2, g }
    }
}

pub fn make_pair(f1: PlanarPolygon, f2: PlanarPolygon) -> Result<MarkedPair> {
    MarkedPair::new(f1, f2)
}

/// `pi` minus the largest angle between corresponding right semi-tangents.
pub fn semitangent_condition(pair: &MarkedPair) -> Angle {
    let iv = pair.intervals();
    let worst = iv
        .dir1
        .iter()
        .zip(&iv.dir2)
        .map(|(&a, &b)| circ_dist(Angle(a), Angle(b)).0)
        .fold(0.0, f64::max);
    Angle(PI - worst)
}

/// `pi` minus the largest unwrapped tangent gap, starting from the principal gap at the base.
///
/// Positive exactly when the combined tangent turns monotonically; this is the
/// quantity alignment maximizes.
pub fn turning_margin(pair: &MarkedPair) -> Angle {
    let iv = pair.intervals();
    Angle(PI - iv.g.iter().map(|g| g.abs()).fold(0.0, f64::max))
}

/// Tangent-direction difference `g` on each correspondence interval.
pub fn tangent_gap(pair: &MarkedPair) -> Vec<(f64, f64)> {
    let iv = pair.intervals();
    iv.breaks.iter().map(|b| b.s).zip(iv.g).collect()
}

pub fn combine(pair: &MarkedPair) -> CombinedCurve {
    let breaks = pair.breakpoints();
    let mut curve = Vec::with_capacity(breaks.len());
    let mut tau = Vec::with_capacity(breaks.len());
    for b in &breaks {
        let (a, c) = (pair.r1_at(b), pair.r2_at(b));
        curve.push(a + c);
        tau.push(a - c);
    }
    let certificate = certify_chain(&curve, 2.0 * pair.perimeter(), default_tolerance());
    CombinedCurve {
        breakpoints: breaks.iter().map(|b| b.s).collect(),
        curve,
        tau_segments: tau,
        certificate,
    }
}

/// Combination sampled at `n` equally spaced arc lengths (the inscribed-polygon path).
pub fn sample_combination(pair: &MarkedPair, n: usize) -> Result<CombinedCurve> {
    if n < 3 {
        return Err(Error::TooFewVertices { needed: 3, got: n });
    }
    let step = pair.perimeter() / n as f64;
    let s: Vec<f64> = (0..n).map(|k| k as f64 * step).collect();
    let (curve, tau): (Vec<Vec2>, Vec<Vec2>) = s
        .iter()
        .map(|&s| {
            let (a, c) = (pair.r1(s), pair.r2(s));
            (a + c, a - c)
        })
        .unzip();
    let certificate = certify_chain(&curve, 2.0 * pair.perimeter(), default_tolerance());
    Ok(CombinedCurve { breakpoints: s, curve, tau_segments: tau, certificate })
}

pub fn vertex_events(pair: &MarkedPair) -> Vec<CombinationVertexEvent> {
    let iv = pair.intervals();
    let m = iv.breaks.len();
    let lambda = pair.scale();
    let ext1 = pair.f1.exterior_angles();
    let ext2 = pair.f2.exterior_angles();
    let tangent = |k: usize| Vec2::from_angle(iv.dir1[k]) + Vec2::from_angle(iv.dir2[k]) * lambda;
    let ray_angle = |a: f64, b: f64| angle_between(Vec2::from_angle(a), Vec2::from_angle(b)).unwrap();

    (0..m)
        .map(|k| {
            let prev = (k + m - 1) % m;
            let b = iv.breaks[k];
            let beta1 = b.v1.map_or(PI, |i| PI - ext1[i]);
            let beta2 = b.v2.map_or(PI, |j| PI - ext2[j]);
            let case_id = match (b.v1, b.v2) {
                (None, None) => EventCase::EdgeEdge,
                (Some(_), Some(_)) => EventCase::VertexVertex,
                _ => EventCase::VertexEdge,
            };
            let beta = PI - signed_angle(tangent(prev), tangent(k));
            let (alpha, delta, gamma) = if case_id == EventCase::VertexEdge {
                // the curve with the vertex, then the one passing through an edge
                let (vert_out, edge_in) = if b.v2.is_some() {
                    (iv.dir2[k], iv.dir1[prev])
                } else {
                    (iv.dir1[k], iv.dir2[prev])
                };
                (
                    Some(ray_angle(iv.dir1[k], iv.dir2[k])),
                    Some(ray_angle(iv.dir1[prev], iv.dir2[prev])),
                    Some(ray_angle(vert_out, edge_in + PI)),
                )
            } else {
                (None, None, None)
            };
            CombinationVertexEvent {
                s: b.s,
                case_id,
                beta1: Angle(beta1),
                beta2: Angle(beta2),
                beta: Angle(beta),
                alpha,
                delta,
                gamma,
            }
        })
        .collect()
}

/// Rotate and translate the second curve so that all corresponding tangents stay less than `pi` apart.
///
/// The rotation is the midpoint `c` of the range of `g`, which minimizes the
/// largest gap `|g - c|`. The new base is the first breakpoint where `c` is
/// attained or lies inside the jump of `g` (a vertex, where the common
/// supporting line may be any line of the normal cone).
pub fn align(pair: &MarkedPair) -> Result<AlignmentResult> {
    let iv = pair.intervals();
    let m = iv.g.len();
    let (lo, hi) = iv
        .g
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &g| (lo.min(g), hi.max(g)));
    let center = 0.5 * (lo + hi);
    let margin = PI - 0.5 * (hi - lo);
    if margin <= MARGIN_EPS {
        return Err(Error::AlignmentNotFound { best_margin: margin });
    }

    let k0 = (0..m)
        .find(|&k| {
            let before = iv.g[(k + m - 1) % m];
            let after = iv.g[k];
            before.min(after) <= center && center <= before.max(after)
        })
        .unwrap_or_else(|| {
            // not reachable for a periodic g; fall back to the closest attained value
            (0..m)
                .min_by(|&a, &b| (iv.g[a] - center).abs().total_cmp(&(iv.g[b] - center).abs()))
                .unwrap_or(0)
        });
    let b = iv.breaks[k0];

    let f1 = match b.v1 {
        Some(i) => pair.f1.with_base(pair.f1.cum_lengths()[i]),
        None => pair.f1.rebased(b.s),
    };
    let f2 = match b.v2 {
        Some(j) => pair.f2.with_base(pair.f2.cum_lengths()[j]),
        None => pair.f2.rebased(b.s * pair.scale()),
    };
    let rotation = pair.motion.rotation.0 + center;
    let anchor1 = f1.point_at(0.0);
    let anchor2 = f2.point_at(0.0).rotated(rotation);
    let motion = RigidMotion2::new(rotation, anchor1 - anchor2);
    let aligned = MarkedPair { f1, f2, motion };
    let g_values = aligned.intervals().g;

    Ok(AlignmentResult {
        sigma0: b.s,
        motion,
        margin: Angle(margin),
        g_values,
        pair: aligned,
    })
}

pub fn combine_aligned(pair: &MarkedPair) -> Result<(AlignmentResult, CombinedCurve)> {
    let alignment = align(pair)?;
    let combined = combine(&alignment.pair);
    Ok((alignment, combined))
}

/// Inscribe `n`-gons in both curves, rescale the first about its base point to the
/// second's length, then align and combine.
pub fn combine_inscribed(
    f1: &PlanarPolygon,
    f2: &PlanarPolygon,
    n: usize,
) -> Result<(AlignmentResult, CombinedCurve)> {
    let a = f1.inscribe(n)?;
    let b = f2.inscribe(n)?;
    let a = a.dilate_to_perimeter(b.perimeter(), a.point_at(0.0))?;
    combine_aligned(&MarkedPair::new(a, b)?)
}

/// Largest normalized `<dr, dtau>` over consecutive samples of the combination.
pub fn bending_check(combined: &CombinedCurve) -> f64 {
    let n = combined.curve.len();
    (0..n)
        .map(|k| {
            let j = (k + 1) % n;
            let dr = combined.curve[j] - combined.curve[k];
            let dt = combined.tau_segments[j] - combined.tau_segments[k];
            let num = dr.dot(dt).abs();
            if num == 0.0 {
                0.0
            } else {
                num / (dr.norm() * dt.norm() + f64::MIN_POSITIVE)
            }
        })
        .fold(0.0, f64::max)
}
