//! Choose a common base point and rigid motion so that the sum of two
//! polygons is convex, then compare with the unaligned sum.
//!
//! Run with `cargo run --example alignment`.

use std::f64::consts::PI;

use isocomb::combination::{align, combine, make_pair};
use isocomb::{PlanarPolygon, RigidMotion2, Vec2};

fn main() -> isocomb::Result<()> {
    let triangle = PlanarPolygon::new(vec![Vec2::new(0.0, 0.0), Vec2::new(3.0, 0.0), Vec2::new(0.5, 1.0)], 0.0)?;
    let rectangle = PlanarPolygon::rectangle(2.0, 0.5)?
        .dilate_to_perimeter(triangle.perimeter(), Vec2::ZERO)?
        .transformed(&RigidMotion2::new(0.9 * PI, Vec2::new(4.0, 1.0)))
        .with_base(1.3);
    let pair = make_pair(triangle, rectangle)?;

    let raw = combine(&pair);
    println!("as given: convex = {}, min exterior angle = {:.4}", raw.certificate.is_convex, raw.certificate.min_exterior);

    let al = align(&pair)?;
    println!(
        "aligned: sigma0 = {:.4}, rotation = {:.4}, translation = ({:.4}, {:.4}), margin = {:.4}",
        al.sigma0, al.motion.rotation.0, al.motion.translation.x, al.motion.translation.y, al.margin.0
    );
    let c = combine(&al.pair);
    println!("aligned: convex = {}, {} vertices", c.certificate.is_convex, c.curve.len());
    Ok(())
}
