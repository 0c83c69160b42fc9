//! Map a pair of spherical links to the plane, check the pointwise identity,
//! and measure how far corresponding chords are from equal length.
//!
//! Run with `cargo run --example pogorelov_transform`.

use isocomb::pogorelov::{pogorelov_forward, pogorelov_identity_check, pogorelov_inverse, transform_link_pair_with_step};
use isocomb::{Rotation3, SphericalPoint, SphericalPolygon, Vec3};

fn main() -> isocomb::Result<()> {
    let r1 = SphericalPoint::new(Vec3::new(0.8, 0.6, 0.0))?;
    let r2 = SphericalPoint::new(Vec3::new(0.6, 0.0, 0.8))?;
    let (t1, t2) = pogorelov_forward(r1, r2)?;
    let back = pogorelov_inverse(t1 + t2);
    println!("images: ({:.4}, {:.4}) and ({:.4}, {:.4})", t1.x, t1.y, t2.x, t2.y);
    println!("inverse of the sum: {:?}", back.v().to_array());
    println!("identity residual: {:.2e}", pogorelov_identity_check(r1, r2)?);

    let cap = SphericalPolygon::regular_cap(12, 0.6, 0.0)?;
    let tilted = cap.rotated(&Rotation3::from_axis_angle(Vec3::new(0.0, 1.0, 0.0), 0.4)?);
    for k in 0..4 {
        let step = cap.perimeter() / f64::from(32 << k);
        let img = transform_link_pair_with_step(&cap, &tilted, step)?;
        println!("step {step:.4}: {} samples, max chord mismatch {:.2e}", img.tilde1.len(), img.max_segment_mismatch());
    }
    Ok(())
}
