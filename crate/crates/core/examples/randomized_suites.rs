//! Seeded randomized suites over planar pairs and cone pairs, with a replay
//! of one trial.
//!
//! Run with `cargo run --release --example randomized_suites`.

use isocomb::suite::{replay, run_suite};
use isocomb::SuiteConfig;

fn main() -> isocomb::Result<()> {
    for config in [SuiteConfig::planar(500, 1), SuiteConfig::cone(100, 1)] {
        let outcome = run_suite(&config)?;
        let s = &outcome.summary;
        println!(
            "{:?}: {}/{} passed, min margin {:?}, worst min turning {:?}",
            s.suite, s.passed, s.trials, s.min_margin, s.worst_min_turning
        );
    }
    let one = replay(&SuiteConfig::planar(500, 1), 17)?;
    println!("replay of planar trial 17: {}", one["trial"]);
    Ok(())
}
