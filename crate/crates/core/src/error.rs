use thiserror::Error;

/// Everything that can go wrong while building, combining or positioning curves.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero-length vector has no direction")]
    ZeroVector,
    #[error("need at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
    #[error("non-finite coordinate in input")]
    NonFinite,
    #[error("polygon is not convex (exterior angle {angle:.3e} at vertex {index})")]
    NotConvex { index: usize, angle: f64 },
    #[error("polygon is not simple (total turning {turning:.6})")]
    NotSimple { turning: f64 },
    #[error("polygon is oriented clockwise (signed area {area:.3e})")]
    WrongOrientation { area: f64 },
    #[error("edge {index} is degenerate (length {length:.3e})")]
    DegenerateEdge { index: usize, length: f64 },
    #[error("fewer than 3 distinct vertices survived ({0})")]
    DegenerateResult(usize),
    #[error("perimeters differ: {0} vs {1}")]
    PerimeterMismatch(f64, f64),
    #[error("curves are not oriented the same way")]
    OrientationMismatch,
    #[error("no alignment with positive semi-tangent margin (best {best_margin:.3e})")]
    AlignmentNotFound { best_margin: f64 },
    #[error("vertex {index} is not on the unit sphere (norm {norm})")]
    NotOnSphere { index: usize, norm: f64 },
    #[error("spherical polygon is not convex: {0}")]
    NotConvexSpherical(String),
    #[error("edge {0} joins coincident or antipodal vertices")]
    AntipodalEdge(usize),
    #[error("height sum {0:.3e} is not positive")]
    NonPositiveHeight(f64),
    #[error("planar image is not convex: {0}")]
    NotConvexPlanar(String),
    #[error("corresponding points are antipodal at s = {0}")]
    AntipodalCorrespondence(f64),
    #[error("no cone positioning certified convex ({candidates} candidates tried, best turning margin {best_min_turning:.3e})")]
    PositioningNotFound { candidates: usize, best_min_turning: f64 },
    #[error("truncation depth {0} is out of range")]
    TruncationTooDeep(f64),
    #[error("dihedral angle {0} must lie in (0, pi)")]
    InvalidAngle(f64),
    #[error("nothing to render")]
    EmptyInput,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("malformed document: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::AlignmentNotFound { .. } | Error::PositioningNotFound { .. } => 2,
            Error::Io(_) => 3,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
