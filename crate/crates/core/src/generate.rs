//! Seeded generators for random convex polygons, planar pairs and isometric cone pairs.

use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::cones::ConvexCone3;
use crate::error::{Error, Result};
use crate::geometry::{RigidMotion2, Rotation3, Vec2, Vec3};
use crate::planar::PlanarPolygon;
use crate::sphere::SphericalPolygon;

/// Counterclockwise convex hull without collinear points (monotone chain).
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: Vec2, a: Vec2, b: Vec2| (a - o).cross(b - o);
    let mut hull: Vec<Vec2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Vec2>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Uniform point in the unit disk.
pub fn random_in_disk<R: Rng + ?Sized>(rng: &mut R) -> Vec2 {
    let r = rng.random::<f64>().sqrt();
    Vec2::from_angle(TAU * rng.random::<f64>()) * r
}

/// Convex hull of `k` uniform points in the unit disk, `k` uniform in `[min_points, max_points]`.
/// Hulls that do not form a valid polygon are resampled.
pub fn random_convex_polygon<R: Rng + ?Sized>(rng: &mut R, min_points: usize, max_points: usize) -> PlanarPolygon {
    loop {
        let k = rng.random_range(min_points.max(3)..=max_points.max(min_points).max(3));
        let pts: Vec<Vec2> = (0..k).map(|_| random_in_disk(rng)).collect();
        let hull = convex_hull(&pts);
        if hull.len() >= 3 {
            if let Ok(p) = PlanarPolygon::new(hull, 0.0) {
                return p;
            }
        }
    }
}

fn vertex_mean(p: &PlanarPolygon) -> Vec2 {
    p.vertices().iter().fold(Vec2::ZERO, |a, &v| a + v) / p.len() as f64
}

/// Two random convex polygons with equal perimeter, random marked points,
/// and the second one moved by a random rigid motion.
pub fn random_planar_pair<R: Rng + ?Sized>(
    rng: &mut R,
    min_points: usize,
    max_points: usize,
) -> Result<(PlanarPolygon, PlanarPolygon)> {
    let f1 = random_convex_polygon(rng, min_points, max_points);
    let f2 = random_convex_polygon(rng, min_points, max_points);
    let f2 = f2.dilate_to_perimeter(f1.perimeter(), vertex_mean(&f2))?;
    let motion = RigidMotion2::new(TAU * rng.random::<f64>(), random_in_disk(rng) * 3.0);
    let f1 = f1.with_base(f1.perimeter() * rng.random::<f64>());
    let f2 = f2.transformed(&motion).with_base(f2.perimeter() * rng.random::<f64>());
    Ok((f1, f2))
}

/// Rotation about a uniformly random axis by a uniform angle in `[0, pi)`.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Rotation3 {
    let axis = loop {
        let v = Vec3::new(
            2.0 * rng.random::<f64>() - 1.0,
            2.0 * rng.random::<f64>() - 1.0,
            2.0 * rng.random::<f64>() - 1.0,
        );
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            break v;
        }
    };
    Rotation3::from_axis_angle(axis, PI * rng.random::<f64>()).expect("nonzero axis")
}

fn lift(points: &[Vec2], t: f64) -> Vec<Vec3> {
    points
        .iter()
        .map(|p| {
            let v = Vec3::new(1.0, t * p.x, t * p.y);
            v / v.norm()
        })
        .collect()
}

fn lifted_perimeter(points: &[Vec2], t: f64) -> f64 {
    let v = lift(points, t);
    let n = v.len();
    (0..n).map(|i| crate::sphere::arc_length(v[i], v[(i + 1) % n])).sum()
}

/// Central lift of the planar convex chain `points` (scaled by `t`, then placed
/// in the tangent plane at `+x0`), with `t` bisected so the perimeter is `target`.
/// The chain should surround the origin.
pub fn lift_to_perimeter(points: &[Vec2], target: f64) -> Result<SphericalPolygon> {
    if !(target > 0.0 && target < TAU) {
        return Err(Error::Config(format!("link length {target} must lie in (0, 2 pi)")));
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut grown = 0;
    while lifted_perimeter(points, hi) < target {
        if grown == 80 {
            return Err(Error::Config(format!("link length {target} is out of reach")));
        }
        lo = hi;
        hi *= 2.0;
        grown += 1;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if lifted_perimeter(points, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    let link = SphericalPolygon::new(lift(points, 0.5 * (lo + hi)), 0.0)?;
    if (link.perimeter() - target).abs() > 1e-10 {
        return Err(Error::Config(format!("link length {target} not reached ({})", link.perimeter())));
    }
    Ok(link)
}

/// Spherical convex polygon of perimeter `target`: a random planar hull,
/// centered at its vertex mean, then lifted by [`lift_to_perimeter`].
pub fn random_link<R: Rng + ?Sized>(
    rng: &mut R,
    min_points: usize,
    max_points: usize,
    target: f64,
) -> Result<SphericalPolygon> {
    if !(target > 0.0 && target < TAU) {
        return Err(Error::Config(format!("link length {target} must lie in (0, 2 pi)")));
    }
    loop {
        let poly = random_convex_polygon(rng, min_points, max_points);
        let c = vertex_mean(&poly);
        let pts: Vec<Vec2> = poly.vertices().iter().map(|&v| v - c).collect();
        if let Ok(link) = lift_to_perimeter(&pts, target) {
            return Ok(link.with_base(link.perimeter() * rng.random::<f64>()));
        }
    }
}

/// Two independent random cones whose links both have length `target`,
/// each moved by a random rotation.
pub fn random_isometric_cone_pair<R: Rng + ?Sized>(
    rng: &mut R,
    min_points: usize,
    max_points: usize,
    target: f64,
) -> Result<(ConvexCone3, ConvexCone3)> {
    let l1 = random_link(rng, min_points, max_points, target)?;
    let l2 = random_link(rng, min_points, max_points, target)?;
    let r1 = random_rotation(rng);
    let r2 = random_rotation(rng);
    Ok((ConvexCone3::new(l1.rotated(&r1)), ConvexCone3::new(l2.rotated(&r2))))
}
