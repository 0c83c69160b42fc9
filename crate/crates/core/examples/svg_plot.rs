//! Write SVG plots of a planar combination and of a combined cone link.
//!
//! Run with `cargo run --example svg_plot -- [output directory]`.

use std::path::PathBuf;

use isocomb::combination::{combine_aligned, make_pair};
use isocomb::cones::position_cones;
use isocomb::generate::{random_isometric_cone_pair, random_planar_pair};
use isocomb::svg::{render_svg, LabeledCurve};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> isocomb::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().display().to_string()));
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    let (f1, f2) = random_planar_pair(&mut rng, 5, 12)?;
    let (al, c) = combine_aligned(&make_pair(f1, f2)?)?;
    let planar = render_svg(&[
        LabeledCurve::planar("F1", &al.pair.f1),
        LabeledCurve::planar("F2", &al.pair.f2.transformed(&al.pair.motion)),
        LabeledCurve::new("F1 + F2", c.curve),
    ])?;
    let path = dir.join("planar_combination.svg");
    isocomb::io::write_text(&path, &planar)?;
    println!("wrote {}", path.display());

    let (k1, k2) = random_isometric_cone_pair(&mut rng, 5, 12, 2.0)?;
    let p = position_cones(&k1, &k2)?;
    let cones = render_svg(&[
        LabeledCurve::spherical("K1 link", &p.cone1.link, 16),
        LabeledCurve::spherical("K2 link", &p.cone2.link, 16),
        LabeledCurve::spherical("combined link", &p.combined.link, 16),
    ])?;
    let path = dir.join("cone_combination.svg");
    isocomb::io::write_text(&path, &cones)?;
    println!("wrote {}", path.display());
    Ok(())
}
