//! JSON documents read and written by the command line front end.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::combination::{AlignmentResult, CombinedCurve};
use crate::cones::ConePositioning;
use crate::digon::{make_digon, Digon};
use crate::error::{Error, Result};
use crate::geometry::{Vec2, Vec3};
use crate::planar::PlanarPolygon;
use crate::sphere::{SphericalCertificate, SphericalPolygon};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Document {
    PlanarPolygon { vertices: Vec<[f64; 2]>, base_s: f64 },
    SphericalPolygon { vertices: Vec<[f64; 3]>, base_s: f64 },
    Digon { angle: f64, placement: [f64; 4] },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::PlanarPolygon { .. } => "planar_polygon",
            Document::SphericalPolygon { .. } => "spherical_polygon",
            Document::Digon { .. } => "digon",
        }
    }

    pub fn from_planar(p: &PlanarPolygon) -> Self {
        Document::PlanarPolygon {
            vertices: p.vertices().iter().map(|v| v.to_array()).collect(),
            base_s: p.base_s(),
        }
    }

    pub fn from_spherical(p: &SphericalPolygon) -> Self {
        Document::SphericalPolygon {
            vertices: p.vertices().iter().map(|v| v.to_array()).collect(),
            base_s: p.base_s(),
        }
    }

    pub fn from_digon(d: &Digon) -> Self {
        Document::Digon { angle: d.angle(), placement: d.axis_angle() }
    }

    pub fn to_planar(&self) -> Result<PlanarPolygon> {
        match self {
            Document::PlanarPolygon { vertices, base_s } => {
                PlanarPolygon::new(vertices.iter().map(|&v| Vec2::from(v)).collect(), *base_s)
            }
            other => Err(Error::Format(format!("expected planar_polygon, found {}", other.kind()))),
        }
    }

    pub fn to_spherical(&self) -> Result<SphericalPolygon> {
        match self {
            Document::SphericalPolygon { vertices, base_s } => {
                SphericalPolygon::new(vertices.iter().map(|&v| Vec3::from(v)).collect(), *base_s)
            }
            other => Err(Error::Format(format!("expected spherical_polygon, found {}", other.kind()))),
        }
    }

    pub fn to_digon(&self) -> Result<Digon> {
        match self {
            Document::Digon { angle, placement } => make_digon(*angle, *placement),
            other => Err(Error::Format(format!("expected digon, found {}", other.kind()))),
        }
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

pub fn read_document(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values always serialize");
    s.push('\n');
    s
}

/// `{"alignment": ..., "combined": {"vertices", "certificate"}, "bending_residual"}`.
/// `alignment` is `null` when the pair was combined as given.
pub fn combination_json(alignment: Option<&AlignmentResult>, combined: &CombinedCurve, bending: f64) -> Value {
    let alignment = alignment.map(|a| {
        json!({
            "sigma0": a.sigma0,
            "rotation": a.motion.rotation.0,
            "translation": a.motion.translation.to_array(),
            "margin": a.margin.0,
        })
    });
    json!({
        "alignment": alignment,
        "combined": {
            "vertices": combined.curve.iter().map(|v| v.to_array()).collect::<Vec<_>>(),
            "certificate": combined.certificate,
        },
        "bending_residual": bending,
    })
}

pub fn spherical_certificate_json(c: &SphericalCertificate) -> Value {
    serde_json::to_value(c).expect("certificate serializes")
}

/// Combined cone link, with the positioning data when a search was run.
pub fn cone_json(positioning: Option<&ConePositioning>, combined: &SphericalPolygon) -> Value {
    let positioning = positioning.map(|p| {
        json!({
            "psi": p.psi,
            "sigma0": p.sigma0,
            "margin": p.margin,
            "candidates_tried": p.candidates_tried,
        })
    });
    json!({
        "positioning": positioning,
        "combined": Document::from_spherical(combined),
        "certificate": spherical_certificate_json(combined.certificate()),
    })
}
