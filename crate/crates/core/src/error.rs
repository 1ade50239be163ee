use thiserror::Error;

use crate::hplane::IsometryClass;

/// Errors raised by geometric constructions and searches.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("point ({x}, {y}) is not in the upper half-plane")]
    NotInUpperHalfPlane { x: f64, y: f64 },
    #[error("matrix must have positive finite determinant (got {0})")]
    NonPositiveDeterminant(f64),
    #[error("points coincide")]
    CoincidentPoints,
    #[error("geodesic endpoints coincide")]
    DegenerateGeodesic,
    #[error("isometry is not hyperbolic (classified as {0:?})")]
    NotHyperbolic(IsometryClass),
    #[error("bidisk isometry must be an unswapped product of two hyperbolic isometries")]
    NotHyperbolicPair,
    #[error("square hyperbola with k = 0 has no circle parametrization")]
    ZeroK,
    #[error("no feasible parameter found in [0, {t_scan}]")]
    NoFeasibleParameter { t_scan: f64 },
    #[error("parameter {t} is outside the curve domain (t0 = {t0})")]
    OutOfDomain { t: f64, t0: f64 },
    #[error("negative discriminant {0} away from tangency")]
    NegativeDiscriminant(f64),
    #[error("sampled points lie on both sides of the equidistant line")]
    MixedSides,
    #[error("factor index {0} is not 1 or 2")]
    BadIndex(usize),
    #[error("hypersurface has a degenerate factor {0}")]
    DegenerateFactor(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
