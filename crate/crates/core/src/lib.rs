//! Isometric combination of closed convex curves and convex cones.
//!
//! Two closed convex curves of the same length, parametrized by arc length from
//! marked points, combine into `r(s) = r1(s) + r2(s)`. This crate builds that
//! combination for planar polygons, finds the rigid motion that keeps it convex,
//! carries the construction to convex cones in 3-space through the pairwise
//! (Pogorelov) transform, and ships randomized suites that check all of it.

pub mod cli;
pub mod combination;
pub mod cones;
pub mod digon;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod planar;
pub mod pogorelov;
pub mod sphere;
pub mod suite;
pub mod svg;

pub use error::{Error, Result};
pub use geometry::{Angle, RigidMotion2, Rotation3, Vec2, Vec3};
pub use planar::{ConvexityCertificate, PlanarPolygon, TurningFunction};
pub use combination::{AlignmentResult, CombinedCurve, MarkedPair};
pub use cones::{ConePositioning, ConvexCone3};
pub use digon::{Digon, DihedralReport};
pub use pogorelov::PogorelovImage;
pub use sphere::{SphericalCertificate, SphericalPoint, SphericalPolygon};
pub use suite::{SuiteConfig, SuiteOutcome, TrialReport};
