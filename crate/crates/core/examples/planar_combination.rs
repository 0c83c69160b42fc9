//! Combine two planar polygons of equal perimeter and inspect the vertex law
//! `beta = (beta1 + beta2) / 2` at every vertex of the aligned sum.
//!
//! Run with `cargo run --example planar_combination`.

use isocomb::combination::{align, combine, make_pair, vertex_events};
use isocomb::{PlanarPolygon, Vec2};

fn main() -> isocomb::Result<()> {
    let square = PlanarPolygon::rectangle(1.0, 1.0)?;
    let hexagon = PlanarPolygon::regular(6, 1.0, Vec2::ZERO, 0.0)?.dilate_to_perimeter(square.perimeter(), Vec2::ZERO)?;
    let pair = align(&make_pair(square, hexagon)?)?.pair;
    let combined = combine(&pair);

    println!("combined curve, {} vertices:", combined.curve.len());
    for (s, p) in combined.breakpoints.iter().zip(&combined.curve) {
        println!("  s = {s:.4}  ({:+.4}, {:+.4})", p.x, p.y);
    }
    println!("convex: {}", combined.certificate.is_convex);

    println!("vertex events:");
    for e in vertex_events(&pair) {
        println!(
            "  s = {:.4}  {:?}  beta = {:.6}  (beta1 + beta2) / 2 = {:.6}",
            e.s,
            e.case_id,
            e.beta.0,
            0.5 * (e.beta1.0 + e.beta2.0)
        );
    }
    Ok(())
}
