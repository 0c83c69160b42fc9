//! Command line front end. The `isocomb` binary calls [`dispatch`].

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::combination::{bending_check, combine, combine_aligned, make_pair};
use crate::cones::{combine_cones, position_cones, ConvexCone3};
use crate::digon::combine_dihedral;
use crate::error::{Error, Result};
use crate::io::{self, Document};
use crate::pogorelov::transform_link_pair_with_step;
use crate::suite::{replay, run_suite, SuiteConfig, SuiteKind};
use crate::svg::{render_svg, LabeledCurve};

#[derive(Parser, Debug)]
#[command(name = "isocomb", version, about = "Isometric combination of convex curves and cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a planar polygon, spherical polygon or digon document.
    Validate { file: PathBuf },
    /// Align two planar polygons, then combine them.
    Align(PairArgs),
    /// Combine two planar polygons as given.
    Combine(PairArgs),
    /// Pairwise transform of two spherical links to the plane.
    Pogorelov {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Subdivision step; defaults to perimeter / 256.
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Combine two cones given by their links.
    ConeCombine {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Center both cones and search for a rotation giving a convex combination.
        #[arg(long)]
        position: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Combine two dihedral angles through a ladder of truncations.
    Digon {
        #[arg(long)]
        angle1: f64,
        #[arg(long)]
        angle2: f64,
        /// Comma separated, strictly decreasing truncation depths.
        #[arg(long, value_delimiter = ',', required = true)]
        ladder: Vec<f64>,
        /// Shift of the second marked point along its boundary.
        #[arg(long, default_value_t = 0.0)]
        base_offset: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded randomized suite.
    Suite {
        kind: KindArg,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        min_vertices: Option<usize>,
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Tolerance override `name=value` (convexity, closure, vertex_law, gauss_bonnet).
        #[arg(long = "tol", value_parser = parse_tolerance)]
        tolerances: Vec<(String, f64)>,
        /// Rerun a single trial and print it with its inputs.
        #[arg(long)]
        replay: Option<usize>,
    },
}

#[derive(clap::Args, Debug)]
struct PairArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Planar,
    Cone,
}

fn parse_tolerance(s: &str) -> std::result::Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    let value: f64 = value.parse().map_err(|e| format!("{value:?}: {e}"))?;
    Ok((name.to_string(), value))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => io::write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn validate(file: &Path) -> Result<Value> {
    let doc = io::read_document(file)?;
    Ok(match &doc {
        Document::PlanarPolygon { .. } => {
            let p = doc.to_planar()?;
            json!({"type": doc.kind(), "vertices": p.len(), "perimeter": p.perimeter(),
                   "certificate": p.certificate(crate::planar::default_tolerance())})
        }
        Document::SphericalPolygon { .. } => {
            let p = doc.to_spherical()?;
            json!({"type": doc.kind(), "vertices": p.len(), "perimeter": p.perimeter(),
                   "certificate": p.certificate()})
        }
        Document::Digon { .. } => {
            let d = doc.to_digon()?;
            json!({"type": doc.kind(), "angle": d.angle(), "perimeter": d.perimeter()})
        }
    })
}

fn pair_command(args: &PairArgs, aligned: bool) -> Result<()> {
    let f1 = io::read_document(&args.a)?.to_planar()?;
    let f2 = io::read_document(&args.b)?.to_planar()?;
    let pair = make_pair(f1, f2)?;
    let (alignment, combined, shown) = if aligned {
        let (al, c) = combine_aligned(&pair)?;
        let shown = al.pair.clone();
        (Some(al), c, shown)
    } else {
        (None, combine(&pair), pair)
    };
    let bending = bending_check(&combined);
    let value = io::combination_json(alignment.as_ref(), &combined, bending);
    emit(args.out.as_deref(), &io::to_pretty(&value))?;
    if let Some(svg) = &args.svg {
        let f2_moved = shown.f2.transformed(&shown.motion);
        let curves = [
            LabeledCurve::planar("F1", &shown.f1),
            LabeledCurve::planar("F2", &f2_moved),
            LabeledCurve::new("F1 + F2", combined.curve.clone()),
        ];
        io::write_text(svg, &render_svg(&curves)?)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { file } => emit(None, &io::to_pretty(&validate(&file)?)),
        Command::Align(args) => pair_command(&args, true),
        Command::Combine(args) => pair_command(&args, false),
        Command::Pogorelov { a, b, step, out } => {
            let m1 = io::read_document(&a)?.to_spherical()?;
            let m2 = io::read_document(&b)?.to_spherical()?;
            let step = step.unwrap_or(m1.perimeter() / crate::pogorelov::DEFAULT_STEPS as f64);
            let img = transform_link_pair_with_step(&m1, &m2, step)?;
            let mut value = serde_json::to_value(&img).expect("image serializes");
            value["max_segment_mismatch"] = json!(img.max_segment_mismatch());
            emit(out.as_deref(), &io::to_pretty(&value))
        }
        Command::ConeCombine { a, b, position, out, svg } => {
            let k1 = ConvexCone3::new(io::read_document(&a)?.to_spherical()?);
            let k2 = ConvexCone3::new(io::read_document(&b)?.to_spherical()?);
            let (value, curves) = if position {
                let p = position_cones(&k1, &k2)?;
                let curves = vec![
                    LabeledCurve::spherical("K1 link", &p.cone1.link, 16),
                    LabeledCurve::spherical("K2 link", &p.cone2.link, 16),
                    LabeledCurve::spherical("combined link", &p.combined.link, 16),
                ];
                (io::cone_json(Some(&p), &p.combined.link), curves)
            } else {
                let k = combine_cones(&k1, &k2)?;
                let curves = vec![
                    LabeledCurve::spherical("K1 link", &k1.link, 16),
                    LabeledCurve::spherical("K2 link", &k2.link, 16),
                    LabeledCurve::spherical("combined link", &k.link, 16),
                ];
                (io::cone_json(None, &k.link), curves)
            };
            emit(out.as_deref(), &io::to_pretty(&value))?;
            if let Some(path) = svg {
                io::write_text(&path, &render_svg(&curves)?)?;
            }
            Ok(())
        }
        Command::Digon { angle1, angle2, ladder, base_offset, out } => {
            let d1 = crate::digon::make_digon(angle1, [0.0, 0.0, 1.0, 0.0])?;
            let d2 = crate::digon::make_digon(angle2, [0.0, 0.0, 1.0, 0.0])?;
            let report = combine_dihedral(&d1, &d2, &ladder, base_offset)?;
            let mut value = serde_json::to_value(&report).expect("report serializes");
            value["all_convex"] = json!(report.all_convex());
            value["hausdorff_strictly_decreasing"] = json!(report.hausdorff_strictly_decreasing());
            emit(out.as_deref(), &io::to_pretty(&value))
        }
        Command::Suite { kind, trials, seed, report, min_vertices, max_vertices, tolerances, replay: which } => {
            let mut config = match kind {
                KindArg::Planar => SuiteConfig::planar(trials, seed),
                KindArg::Cone => SuiteConfig::cone(trials, seed),
            };
            if let Some(v) = min_vertices {
                config.min_vertices = v;
            }
            if let Some(v) = max_vertices {
                config.max_vertices = v;
            }
            config.tolerances.extend(tolerances);
            if let Some(id) = which {
                return emit(report.as_deref(), &io::to_pretty(&replay(&config, id)?));
            }
            let outcome = run_suite(&config)?;
            emit(report.as_deref(), &outcome.to_jsonl())?;
            let s = &outcome.summary;
            let name = if s.suite == SuiteKind::Planar { "planar" } else { "cone" };
            eprintln!("{name} suite: {}/{} trials passed", s.passed, s.trials);
            if outcome.all_passed() {
                Ok(())
            } else {
                Err(Error::Config(format!("failed trials: {:?}", s.failed_ids)))
            }
        }
    }
}

/// Parse `args` (including the program name), run, and return the process exit code.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
