//! Small vector kernel shared by the planar and spherical code.
//!
//! `Vec3` uses the `(x0, x1, x2)` ordering throughout: `x0` is the distinguished
//! axis along which cones are centered, and `(x1, x2)` is the image plane of the
//! pairwise transform.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    /// Unit vector with direction angle `theta`.
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Vec2 { x: c, y: s }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    /// Direction angle in (-pi, pi].
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn rotated(self, theta: f64) -> Vec2 {
        let (s, c) = theta.sin_cos();
        Vec2 {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }

    pub fn lerp(self, o: Vec2, t: f64) -> Vec2 {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.x, self.y]
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, k: f64) -> Vec2 {
        Vec2::new(self.x / k, self.y / k)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x0: 0.0, x1: 0.0, x2: 0.0 };
    /// Unit vector along the `x0` axis.
    pub const E0: Vec3 = Vec3 { x0: 1.0, x1: 0.0, x2: 0.0 };

    pub const fn new(x0: f64, x1: f64, x2: f64) -> Self {
        Vec3 { x0, x1, x2 }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x0 * o.x0 + self.x1 * o.x1 + self.x2 * o.x2
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.x1 * o.x2 - self.x2 * o.x1,
            self.x2 * o.x0 - self.x0 * o.x2,
            self.x0 * o.x1 - self.x1 * o.x0,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Result<Vec3> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(self / n)
    }

    /// Orthogonal projection onto the `(x1, x2)` plane.
    pub fn tangential(self) -> Vec2 {
        Vec2::new(self.x1, self.x2)
    }

    pub fn is_finite(self) -> bool {
        self.x0.is_finite() && self.x1.is_finite() && self.x2.is_finite()
    }

    pub fn max_abs_diff(self, o: Vec3) -> f64 {
        (self.x0 - o.x0)
            .abs()
            .max((self.x1 - o.x1).abs())
            .max((self.x2 - o.x2).abs())
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x0, self.x1, self.x2]
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        self.x0 += o.x0;
        self.x1 += o.x1;
        self.x2 += o.x2;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        Vec3::new(self.x0 * k, self.x1 * k, self.x2 * k)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, k: f64) -> Vec3 {
        Vec3::new(self.x0 / k, self.x1 / k, self.x2 / k)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x0, -self.x1, -self.x2)
    }
}

/// Scalar angle in radians.
///
/// Direction angles are kept in (-pi, pi] via [`Angle::normalized`]; turnings
/// are cumulative and left unwrapped.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(pub f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn normalized(self) -> Angle {
        Angle(normalize_angle(self.0))
    }
}

/// Reduce an angle to (-pi, pi].
pub fn normalize_angle(a: f64) -> f64 {
    let r = (a + PI).rem_euclid(TAU) - PI;
    if r <= -PI {
        r + TAU
    } else {
        r
    }
}

/// Orientation-preserving isometry of the plane: rotate about the origin, then translate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RigidMotion2 {
    pub rotation: Angle,
    pub translation: Vec2,
}

impl Default for RigidMotion2 {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl RigidMotion2 {
    pub const IDENTITY: RigidMotion2 = RigidMotion2 {
        rotation: Angle(0.0),
        translation: Vec2::ZERO,
    };

    pub fn new(rotation: f64, translation: Vec2) -> Self {
        RigidMotion2 {
            rotation: Angle(normalize_angle(rotation)),
            translation,
        }
    }

    pub fn rotation(theta: f64) -> Self {
        Self::new(theta, Vec2::ZERO)
    }

    pub fn translation(t: Vec2) -> Self {
        Self::new(0.0, t)
    }

    pub fn apply(&self, p: Vec2) -> Vec2 {
        apply_motion(self, p)
    }

    /// Direction angle of a vector after the rotation part.
    pub fn apply_direction(&self, theta: f64) -> f64 {
        theta + self.rotation.0
    }

    pub fn inverse(&self) -> RigidMotion2 {
        let r = -self.rotation.0;
        RigidMotion2::new(r, -self.translation.rotated(r))
    }
}

pub fn apply_motion(m: &RigidMotion2, p: Vec2) -> Vec2 {
    p.rotated(m.rotation.0) + m.translation
}

/// `compose(m1, m2)` applies `m2` first, then `m1`.
pub fn compose(m1: &RigidMotion2, m2: &RigidMotion2) -> RigidMotion2 {
    RigidMotion2::new(
        m1.rotation.0 + m2.rotation.0,
        m2.translation.rotated(m1.rotation.0) + m1.translation,
    )
}

/// Vectors with an inner product, so [`angle_between`] works in 2D and 3D.
pub trait InnerProduct: Copy {
    fn inner(self, o: Self) -> f64;
}

impl InnerProduct for Vec2 {
    fn inner(self, o: Self) -> f64 {
        self.dot(o)
    }
}

impl InnerProduct for Vec3 {
    fn inner(self, o: Self) -> f64 {
        self.dot(o)
    }
}

/// Unsigned angle in [0, pi] between two nonzero vectors.
pub fn angle_between<V: InnerProduct>(u: V, v: V) -> Result<Angle> {
    let nu = u.inner(u).sqrt();
    let nv = v.inner(v).sqrt();
    if nu == 0.0 || nv == 0.0 || !nu.is_finite() || !nv.is_finite() {
        return Err(Error::ZeroVector);
    }
    let c = (u.inner(v) / (nu * nv)).clamp(-1.0, 1.0);
    Ok(Angle(c.acos()))
}

/// Signed angle in (-pi, pi] turning `u` into `v`.
pub fn signed_angle(u: Vec2, v: Vec2) -> f64 {
    u.cross(v).atan2(u.dot(v))
}

/// Shortest distance between two angles on the circle, in [0, pi].
pub fn circ_dist(a: Angle, b: Angle) -> Angle {
    let d = (a.0 - b.0).rem_euclid(TAU);
    Angle(d.min(TAU - d))
}

/// Rotation by `psi` about the `x0` axis.
pub fn rotate_about_x0(psi: Angle, p: Vec3) -> Vec3 {
    let t = p.tangential().rotated(psi.0);
    Vec3::new(p.x0, t.x, t.y)
}

/// Proper rotation of 3-space stored as a row-major matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation3 {
    m: [[f64; 3]; 3],
}

impl Default for Rotation3 {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Rotation3 {
    pub const IDENTITY: Rotation3 = Rotation3 {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    /// Rodrigues rotation by `angle` about `axis` (normalized internally).
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Result<Rotation3> {
        if angle == 0.0 {
            return Ok(Self::IDENTITY);
        }
        let k = axis.normalized()?;
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        let (x, y, z) = (k.x0, k.x1, k.x2);
        Ok(Rotation3 {
            m: [
                [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
                [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
                [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
            ],
        })
    }

    pub fn about_x0(psi: f64) -> Rotation3 {
        let (s, c) = psi.sin_cos();
        Rotation3 {
            m: [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]],
        }
    }

    /// The rotation taking unit vector `from` onto unit vector `to` about their common normal.
    pub fn aligning(from: Vec3, to: Vec3) -> Result<Rotation3> {
        let a = from.normalized()?;
        let b = to.normalized()?;
        let axis = a.cross(b);
        let s = axis.norm();
        let c = a.dot(b);
        if s < 1e-15 {
            if c > 0.0 {
                return Ok(Self::IDENTITY);
            }
            // antipodal: any perpendicular axis works
            let helper = if a.x0.abs() < 0.9 { Vec3::E0 } else { Vec3::new(0.0, 1.0, 0.0) };
            return Self::from_axis_angle(a.cross(helper), PI);
        }
        Self::from_axis_angle(axis, s.atan2(c))
    }

    pub fn apply(&self, p: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0][0] * p.x0 + m[0][1] * p.x1 + m[0][2] * p.x2,
            m[1][0] * p.x0 + m[1][1] * p.x1 + m[1][2] * p.x2,
            m[2][0] * p.x0 + m[2][1] * p.x1 + m[2][2] * p.x2,
        )
    }

    /// `self.then(other)` applies `self` first.
    pub fn then(&self, other: &Rotation3) -> Rotation3 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| other.m[i][k] * self.m[k][j]).sum();
            }
        }
        Rotation3 { m }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close2(a: Vec2, b: Vec2, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn apply_motion_examples() {
        assert_eq!(apply_motion(&RigidMotion2::IDENTITY, Vec2::new(1.0, 2.0)), Vec2::new(1.0, 2.0));
        let q = RigidMotion2::rotation(PI / 2.0);
        assert!(close2(q.apply(Vec2::new(1.0, 0.0)), Vec2::new(0.0, 1.0), 1e-15));
        let h = RigidMotion2::new(PI, Vec2::new(1.0, 1.0));
        assert!(close2(h.apply(Vec2::new(1.0, 0.0)), Vec2::new(0.0, 1.0), 1e-15));
    }

    #[test]
    fn compose_examples() {
        let m = RigidMotion2::new(0.7, Vec2::new(-2.0, 3.0));
        assert_eq!(compose(&RigidMotion2::IDENTITY, &m), m);
        let c = compose(&RigidMotion2::rotation(0.4), &RigidMotion2::rotation(-0.4));
        assert!(c.rotation.0.abs() < 1e-15 && c.translation == Vec2::ZERO);
        let half = compose(&RigidMotion2::rotation(PI / 2.0), &RigidMotion2::rotation(PI / 2.0));
        assert!((half.rotation.0 - PI).abs() < 1e-15);
    }

    #[test]
    fn compose_matches_sequential_application() {
        let m1 = RigidMotion2::new(1.1, Vec2::new(0.5, -0.25));
        let m2 = RigidMotion2::new(-2.3, Vec2::new(3.0, 1.0));
        let p = Vec2::new(0.3, 0.9);
        assert!(close2(compose(&m1, &m2).apply(p), m1.apply(m2.apply(p)), 1e-14));
        let back = compose(&m1.inverse(), &m1);
        assert!(close2(back.apply(p), p, 1e-14));
    }

    #[test]
    fn angle_between_examples() {
        let e = Vec2::new(1.0, 0.0);
        assert_eq!(angle_between(e, e).unwrap().0, 0.0);
        assert!((angle_between(e, Vec2::new(0.0, 1.0)).unwrap().0 - PI / 2.0).abs() < 1e-15);
        assert!((angle_between(e, Vec2::new(-1.0, 0.0)).unwrap().0 - PI).abs() < 1e-15);
        assert_eq!(angle_between(e, Vec2::ZERO), Err(Error::ZeroVector));
        let a3 = angle_between(Vec3::E0, Vec3::new(0.0, 0.0, 2.0)).unwrap();
        assert!((a3.0 - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn circ_dist_examples() {
        assert!((circ_dist(Angle(0.0), Angle(PI / 2.0)).0 - PI / 2.0).abs() < 1e-15);
        assert!((circ_dist(Angle(0.1), Angle(TAU - 0.1)).0 - 0.2).abs() < 1e-14);
        assert!((circ_dist(Angle(0.0), Angle(PI)).0 - PI).abs() < 1e-15);
    }

    #[test]
    fn rotate_about_x0_examples() {
        assert_eq!(rotate_about_x0(Angle(1.234), Vec3::E0), Vec3::E0);
        let q = rotate_about_x0(Angle(PI / 2.0), Vec3::new(0.0, 1.0, 0.0));
        assert!(q.max_abs_diff(Vec3::new(0.0, 0.0, 1.0)) < 1e-15);
        let (c, s) = (0.6, 0.8);
        let h = rotate_about_x0(Angle(PI), Vec3::new(c, s, 0.0));
        assert!(h.max_abs_diff(Vec3::new(c, -s, 0.0)) < 1e-15);
    }

    #[test]
    fn normalize_angle_range() {
        assert_eq!(normalize_angle(PI), PI);
        assert!((normalize_angle(-PI) - PI).abs() < 1e-15);
        assert!((normalize_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((normalize_angle(7.0 * TAU + 0.25) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn rotation3_aligning_and_axis() {
        let c = Vec3::new(0.2, -0.5, 0.7).normalized().unwrap();
        let r = Rotation3::aligning(c, Vec3::E0).unwrap();
        assert!(r.apply(c).max_abs_diff(Vec3::E0) < 1e-15);
        let anti = Rotation3::aligning(-Vec3::E0, Vec3::E0).unwrap();
        assert!(anti.apply(-Vec3::E0).max_abs_diff(Vec3::E0) < 1e-15);
        let p = Vec3::new(0.3, 0.4, 0.5);
        let a = Rotation3::about_x0(0.9).apply(p);
        assert!(a.max_abs_diff(rotate_about_x0(Angle(0.9), p)) < 1e-15);
        let composed = Rotation3::about_x0(0.4).then(&Rotation3::about_x0(0.5));
        assert!(composed.apply(p).max_abs_diff(Rotation3::about_x0(0.9).apply(p)) < 1e-15);
    }
}
