//! Combine two dihedral angles by truncating their digon links at shrinking
//! depths and tracking convexity and Hausdorff convergence.
//!
//! Run with `cargo run --example dihedral_truncation`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

use isocomb::digon::{combine_dihedral, make_digon};

fn main() -> isocomb::Result<()> {
    let d1 = make_digon(FRAC_PI_3, [0.0, 0.0, 1.0, 0.0])?;
    let d2 = make_digon(FRAC_PI_2, [0.0, 0.0, 1.0, 0.0])?;
    for offset in [0.0, 0.3] {
        let report = combine_dihedral(&d1, &d2, &[0.2, 0.1, 0.05, 0.025], offset)?;
        println!("base offset {offset}:");
        for l in &report.levels {
            println!(
                "  eps = {:.3}  convex = {}  corners = {}  long-edge angle = {:.6}  hausdorff to previous = {}",
                l.eps,
                l.is_convex,
                l.vertex_count,
                l.long_edge_angle,
                l.hausdorff_to_previous.map_or("-".to_string(), |h| format!("{h:.4}"))
            );
        }
        println!("  all convex: {}, Hausdorff decreasing: {}", report.all_convex(), report.hausdorff_strictly_decreasing());
    }
    Ok(())
}
