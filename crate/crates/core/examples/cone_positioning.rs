//! Combine two convex cones with isometric links: center them, search a
//! rotation about the axis, and certify the combined link.
//!
//! Run with `cargo run --example cone_positioning`.

use isocomb::cones::{combine_cones, position_cones};
use isocomb::generate::random_isometric_cone_pair;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> isocomb::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (k1, k2) = random_isometric_cone_pair(&mut rng, 5, 12, 2.5)?;
    println!("link lengths: {:.6} and {:.6}", k1.link.perimeter(), k2.link.perimeter());

    match combine_cones(&k1, &k2) {
        Ok(k) => println!("as placed: convex = {}", k.link.certificate().is_convex),
        Err(e) => println!("as placed: {e}"),
    }

    let p = position_cones(&k1, &k2)?;
    let cert = p.certificate();
    println!(
        "positioned: psi = {:.4}, sigma0 = {:.4}, margin = {:.4}, candidates tried = {}",
        p.psi, p.sigma0, p.margin, p.candidates_tried
    );
    println!(
        "combined link: {} vertices, convex = {}, min turning = {:.3e}, Gauss-Bonnet residual = {:.2e}",
        p.combined.link.len(),
        cert.is_convex,
        cert.min_turning,
        cert.gauss_bonnet_residual
    );
    Ok(())
}
