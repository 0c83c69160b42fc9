//! Seeded randomized suites for the planar and the cone constructions.
//!
//! Each trial draws from its own ChaCha stream of the master seed, so a trial
//! can be replayed alone and reports do not depend on scheduling. Reports are
//! JSON lines, one per trial in index order, followed by a summary line.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::combination::{bending_check, combine_aligned, make_pair, vertex_events};
use crate::cones::{position_cones, ConvexCone3};
use crate::error::{Error, Result};
use crate::generate::{random_isometric_cone_pair, random_planar_pair};
use crate::io::Document;
use crate::planar::PlanarPolygon;
use crate::sphere::SphericalPolygon;

/// Tolerance names accepted in [`SuiteConfig::tolerances`] with their defaults.
pub const TOLERANCE_DEFAULTS: [(&str, f64); 4] = [
    ("convexity", 1e-9),
    ("closure", 1e-8),
    ("vertex_law", 1e-9),
    ("gauss_bonnet", 1e-8),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteKind {
    Planar,
    Cone,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub kind: SuiteKind,
    pub trials: usize,
    pub seed: u64,
    /// Range for the number of random points whose hull makes each polygon.
    pub min_vertices: usize,
    pub max_vertices: usize,
    /// Overrides of [`TOLERANCE_DEFAULTS`].
    pub tolerances: BTreeMap<String, f64>,
    /// Link lengths for the cone suite are drawn uniformly from this range.
    pub target_link_length: (f64, f64),
}

impl SuiteConfig {
    pub fn planar(trials: usize, seed: u64) -> Self {
        SuiteConfig {
            kind: SuiteKind::Planar,
            trials,
            seed,
            min_vertices: 3,
            max_vertices: 200,
            tolerances: BTreeMap::new(),
            target_link_length: (0.5, TAU - 0.5),
        }
    }

    pub fn cone(trials: usize, seed: u64) -> Self {
        SuiteConfig { kind: SuiteKind::Cone, max_vertices: 40, ..Self::planar(trials, seed) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.min_vertices < 3 {
            return Err(Error::Config(format!("min_vertices {} is below 3", self.min_vertices)));
        }
        if self.max_vertices < self.min_vertices {
            return Err(Error::Config(format!(
                "max_vertices {} is below min_vertices {}",
                self.max_vertices, self.min_vertices
            )));
        }
        for (name, value) in &self.tolerances {
            if !TOLERANCE_DEFAULTS.iter().any(|(n, _)| n == name) {
                return Err(Error::Config(format!("unknown tolerance {name:?}")));
            }
            if !(value.is_finite() && *value > 0.0) {
                return Err(Error::Config(format!("tolerance {name} must be positive, got {value}")));
            }
        }
        let (lo, hi) = self.target_link_length;
        if self.kind == SuiteKind::Cone && !(lo > 0.0 && lo <= hi && hi < TAU) {
            return Err(Error::Config(format!("link length range ({lo}, {hi}) must lie inside (0, 2 pi)")));
        }
        Ok(())
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances.get(name).copied().unwrap_or_else(|| {
            TOLERANCE_DEFAULTS
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, v)| *v)
                .expect("known tolerance name")
        })
    }

    /// Random stream of one trial.
    pub fn trial_rng(&self, trial_id: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial_id as u64);
        rng
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial_id: usize,
    /// SHA-256 prefix of the input coordinates.
    pub digest: String,
    pub vertices: [usize; 2],
    pub perimeter: f64,
    pub margin: Option<f64>,
    /// Smallest exterior angle (planar) or geodesic turning (cone) of the combination.
    pub min_turning: Option<f64>,
    /// `|exterior sum - 2 pi|` (planar) or the Gauss-Bonnet residual (cone).
    pub closure_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_law_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle_sum_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bending_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates_tried: Option<usize>,
    pub pass: bool,
    pub failure: Option<String>,
}

impl TrialReport {
    fn new(trial_id: usize, digest: String, vertices: [usize; 2], perimeter: f64) -> Self {
        TrialReport {
            trial_id,
            digest,
            vertices,
            perimeter,
            margin: None,
            min_turning: None,
            closure_residual: None,
            vertex_law_residual: None,
            angle_sum_residual: None,
            bending_residual: None,
            candidates_tried: None,
            pass: false,
            failure: None,
        }
    }

    fn fail(mut self, reason: String) -> Self {
        self.pass = false;
        self.failure = Some(reason);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: SuiteKind,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed_ids: Vec<usize>,
    pub min_margin: Option<f64>,
    pub worst_min_turning: Option<f64>,
    pub worst_closure_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_vertex_law_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_angle_sum_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_bending_residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOutcome {
    pub config: SuiteConfig,
    pub trials: Vec<TrialReport>,
    pub summary: SuiteSummary,
}

impl SuiteOutcome {
    pub fn pass_rate(&self) -> f64 {
        self.summary.passed as f64 / self.summary.trials as f64
    }

    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.trials
    }

    /// JSON lines: one per trial, then `{"summary": ...}`.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for t in &self.trials {
            out.push_str(&serde_json::to_string(t).expect("trial report serializes"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&json!({ "summary": self.summary })).expect("summary serializes"));
        out.push('\n');
        out
    }
}

fn digest(parts: &[&[f64]]) -> String {
    let mut h = Sha256::new();
    for part in parts {
        for x in *part {
            h.update(x.to_le_bytes());
        }
    }
    h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn planar_coords(p: &PlanarPolygon) -> Vec<f64> {
    let mut v: Vec<f64> = p.vertices().iter().flat_map(|q| [q.x, q.y]).collect();
    v.push(p.base_s());
    v
}

fn spherical_coords(p: &SphericalPolygon) -> Vec<f64> {
    let mut v: Vec<f64> = p.vertices().iter().flat_map(|q| q.to_array()).collect();
    v.push(p.base_s());
    v
}

/// Align, combine and check one planar pair.
pub fn planar_trial_for_pair(config: &SuiteConfig, trial_id: usize, f1: PlanarPolygon, f2: PlanarPolygon) -> TrialReport {
    let tag = digest(&[&planar_coords(&f1), &planar_coords(&f2)]);
    let report = TrialReport::new(trial_id, tag, [f1.len(), f2.len()], f1.perimeter());
    let pair = match make_pair(f1, f2) {
        Ok(p) => p,
        Err(e) => return report.fail(e.to_string()),
    };
    let (alignment, combined) = match combine_aligned(&pair) {
        Ok(x) => x,
        Err(e) => return report.fail(e.to_string()),
    };
    let cert = &combined.certificate;
    let events = vertex_events(&alignment.pair);
    let law = events
        .iter()
        .map(|e| (e.beta.0 - 0.5 * (e.beta1.0 + e.beta2.0)).abs())
        .fold(0.0, f64::max);
    let angle_sum = (events.iter().map(|e| PI - e.beta.0).sum::<f64>() - TAU).abs();
    let closure = (cert.exterior_sum - TAU).abs();
    let mut r = TrialReport {
        margin: Some(alignment.margin.0),
        min_turning: Some(cert.min_exterior),
        closure_residual: Some(closure),
        vertex_law_residual: Some(law),
        angle_sum_residual: Some(angle_sum),
        bending_residual: Some(bending_check(&combined)),
        ..report
    };
    let checks = [
        (cert.is_convex && cert.min_exterior >= -config.tolerance("convexity"), "combined curve is not convex"),
        (closure <= config.tolerance("closure"), "exterior angles do not sum to 2 pi"),
        (law <= config.tolerance("vertex_law"), "vertex angle is not the mean of the input angles"),
        (angle_sum <= config.tolerance("closure"), "sum of (pi - beta) is not 2 pi"),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        Some((_, why)) => r.fail((*why).to_string()),
        None => {
            r.pass = true;
            r
        }
    }
}

/// Position, combine and check one cone pair.
pub fn cone_trial_for_pair(config: &SuiteConfig, trial_id: usize, k1: &ConvexCone3, k2: &ConvexCone3) -> TrialReport {
    let tag = digest(&[&spherical_coords(&k1.link), &spherical_coords(&k2.link)]);
    let report = TrialReport::new(trial_id, tag, [k1.link.len(), k2.link.len()], k1.link.perimeter());
    let pos = match position_cones(k1, k2) {
        Ok(p) => p,
        Err(e) => return report.fail(e.to_string()),
    };
    let cert = pos.certificate();
    let mut r = TrialReport {
        margin: Some(pos.margin),
        min_turning: Some(cert.min_turning),
        closure_residual: Some(cert.gauss_bonnet_residual),
        candidates_tried: Some(pos.candidates_tried),
        ..report
    };
    let checks = [
        (cert.is_convex && cert.min_turning >= -config.tolerance("convexity"), "combined link is not convex"),
        (cert.gauss_bonnet_residual <= config.tolerance("gauss_bonnet"), "Gauss-Bonnet residual too large"),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        Some((_, why)) => r.fail((*why).to_string()),
        None => {
            r.pass = true;
            r
        }
    }
}

/// Inputs of one planar trial.
pub fn planar_inputs(config: &SuiteConfig, trial_id: usize) -> Result<(PlanarPolygon, PlanarPolygon)> {
    let mut rng = config.trial_rng(trial_id);
    random_planar_pair(&mut rng, config.min_vertices, config.max_vertices)
}

/// Inputs of one cone trial.
pub fn cone_inputs(config: &SuiteConfig, trial_id: usize) -> Result<(ConvexCone3, ConvexCone3)> {
    let mut rng = config.trial_rng(trial_id);
    let (lo, hi) = config.target_link_length;
    let length = if lo == hi { lo } else { rng.random_range(lo..hi) };
    random_isometric_cone_pair(&mut rng, config.min_vertices, config.max_vertices, length)
}

pub fn run_trial(config: &SuiteConfig, trial_id: usize) -> TrialReport {
    let failed_input = |e: Error| TrialReport::new(trial_id, String::new(), [0, 0], 0.0).fail(e.to_string());
    match config.kind {
        SuiteKind::Planar => match planar_inputs(config, trial_id) {
            Ok((a, b)) => planar_trial_for_pair(config, trial_id, a, b),
            Err(e) => failed_input(e),
        },
        SuiteKind::Cone => match cone_inputs(config, trial_id) {
            Ok((a, b)) => cone_trial_for_pair(config, trial_id, &a, &b),
            Err(e) => failed_input(e),
        },
    }
}

fn fold_opt(values: impl Iterator<Item = Option<f64>>, f: fn(f64, f64) -> f64) -> Option<f64> {
    values.flatten().reduce(f)
}

pub fn summarize(config: &SuiteConfig, trials: &[TrialReport]) -> SuiteSummary {
    SuiteSummary {
        suite: config.kind,
        seed: config.seed,
        trials: trials.len(),
        passed: trials.iter().filter(|t| t.pass).count(),
        failed_ids: trials.iter().filter(|t| !t.pass).map(|t| t.trial_id).collect(),
        min_margin: fold_opt(trials.iter().map(|t| t.margin), f64::min),
        worst_min_turning: fold_opt(trials.iter().map(|t| t.min_turning), f64::min),
        worst_closure_residual: fold_opt(trials.iter().map(|t| t.closure_residual), f64::max),
        worst_vertex_law_residual: fold_opt(trials.iter().map(|t| t.vertex_law_residual), f64::max),
        worst_angle_sum_residual: fold_opt(trials.iter().map(|t| t.angle_sum_residual), f64::max),
        max_bending_residual: fold_opt(trials.iter().map(|t| t.bending_residual), f64::max),
    }
}

/// Run every trial (in parallel) and collect the reports in trial order.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteOutcome> {
    config.validate()?;
    let trials: Vec<TrialReport> = (0..config.trials).into_par_iter().map(|i| run_trial(config, i)).collect();
    let summary = summarize(config, &trials);
    Ok(SuiteOutcome { config: config.clone(), trials, summary })
}

pub fn run_planar_suite(config: &SuiteConfig) -> Result<SuiteOutcome> {
    run_suite(&SuiteConfig { kind: SuiteKind::Planar, ..config.clone() })
}

pub fn run_cone_suite(config: &SuiteConfig) -> Result<SuiteOutcome> {
    run_suite(&SuiteConfig { kind: SuiteKind::Cone, ..config.clone() })
}

/// Rerun one trial and return its report together with its input documents.
pub fn replay(config: &SuiteConfig, trial_id: usize) -> Result<Value> {
    config.validate()?;
    let (inputs, report) = match config.kind {
        SuiteKind::Planar => {
            let (a, b) = planar_inputs(config, trial_id)?;
            let docs = vec![Document::from_planar(&a), Document::from_planar(&b)];
            (docs, planar_trial_for_pair(config, trial_id, a, b))
        }
        SuiteKind::Cone => {
            let (a, b) = cone_inputs(config, trial_id)?;
            let docs = vec![Document::from_spherical(&a.link), Document::from_spherical(&b.link)];
            (docs, cone_trial_for_pair(config, trial_id, &a, &b))
        }
    };
    Ok(json!({ "trial": report, "inputs": inputs }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_pair_passes_with_full_margin() {
        let cfg = SuiteConfig::planar(1, 0);
        let sq = PlanarPolygon::rectangle(1.0, 1.0).unwrap();
        let r = planar_trial_for_pair(&cfg, 0, sq.clone(), sq);
        assert!(r.pass);
        assert_eq!(r.margin, Some(PI));
    }

    #[test]
    fn equal_cones_pass() {
        let cfg = SuiteConfig::cone(1, 0);
        let k = ConvexCone3::new(SphericalPolygon::regular_cap(6, 0.5, 0.0).unwrap());
        assert!(cone_trial_for_pair(&cfg, 0, &k, &k).pass);
    }

    #[test]
    fn config_validation() {
        let mut cfg = SuiteConfig::planar(10, 1);
        cfg.min_vertices = 10;
        cfg.max_vertices = 5;
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        let mut cone = SuiteConfig::cone(10, 1);
        cone.target_link_length = (1.0, TAU);
        assert!(matches!(cone.validate(), Err(Error::Config(_))));
        let mut tol = SuiteConfig::planar(1, 1);
        tol.tolerances.insert("nonsense".into(), 1.0);
        assert!(matches!(tol.validate(), Err(Error::Config(_))));
        assert!(matches!(SuiteConfig::planar(0, 1).validate(), Err(Error::Config(_))));
    }

    #[test]
    fn small_suites_pass_and_replay() {
        let out = run_planar_suite(&SuiteConfig::planar(8, 42)).unwrap();
        assert!(out.all_passed());
        let again = run_planar_suite(&SuiteConfig::planar(8, 42)).unwrap();
        assert_eq!(out.to_jsonl(), again.to_jsonl());
        let r = replay(&SuiteConfig::planar(8, 42), 5).unwrap();
        assert_eq!(r["trial"], serde_json::to_value(&out.trials[5]).unwrap());
        let cones = run_cone_suite(&SuiteConfig::cone(4, 7)).unwrap();
        assert!(cones.all_passed());
    }
}
