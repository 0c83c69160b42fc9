//! The difference field `r1 - r2` is orthogonal to the combined curve.
//! Exact for congruent polygons, and improving under refinement for a
//! circle paired with an ellipse of the same length.
//!
//! Run with `cargo run --example bending_field`.

use std::f64::consts::TAU;

use isocomb::combination::{bending_check, combine, make_pair, sample_combination};
use isocomb::{PlanarPolygon, RigidMotion2, Vec2};

fn main() -> isocomb::Result<()> {
    let pentagon = PlanarPolygon::regular(5, 1.0, Vec2::ZERO, 0.0)?;
    let moved = pentagon.transformed(&RigidMotion2::new(2.0, Vec2::new(1.0, -3.0)));
    let c = combine(&make_pair(pentagon, moved)?);
    println!("congruent pentagons: residual = {:.2e}", bending_check(&c));

    let n = 4096;
    let circle = PlanarPolygon::regular(n, 1.0, Vec2::ZERO, 0.0)?;
    let ellipse = PlanarPolygon::new(
        (0..n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                Vec2::new(1.6 * t.cos(), 0.6 * t.sin())
            })
            .collect(),
        0.0,
    )?
    .dilate_to_perimeter(circle.perimeter(), Vec2::ZERO)?;
    let pair = make_pair(circle, ellipse)?;
    for samples in [16, 32, 64, 128, 256] {
        let c = sample_combination(&pair, samples)?;
        println!("circle + ellipse, {samples:>3} samples: residual = {:.3e}", bending_check(&c));
    }
    Ok(())
}
