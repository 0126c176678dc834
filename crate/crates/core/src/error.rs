use thiserror::Error;

/// Every failure the linking computations can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("direction vectors are linearly dependent")]
    Collinear,
    #[error("curves intersect: {0}")]
    IntersectingCurves(String),
    #[error("geodesics run along the same circle")]
    SameCircle,
    #[error("collection is not homologically trivial (class {0})")]
    NotHomologicallyTrivial(String),
    #[error("geodesic direction must be nonzero")]
    ZeroDirection,
    #[error("multi-geodesic must have at least one component")]
    EmptyCollection,
    #[error("exterior derivative of a 3-form")]
    DegreeOverflow,
    #[error("codifferential of a 0-form")]
    DegreeUnderflow,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u8, u8),
    #[error("eigenform frequency must be nonzero")]
    ZeroFrequency,
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("invalid spectral parameters: {0}")]
    InvalidParams(String),
    #[error("degenerate intersection: {0}")]
    Degenerate(String),
    #[error("no generic apex found after {0} attempts")]
    PersistentDegeneracy(usize),
    #[error("T2 geodesics run along the same circle")]
    IdenticalCircles,
    #[error("lifted curves intersect in the unit tangent bundle")]
    IntersectingLifts,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable name, used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Collinear => "Collinear",
            Error::IntersectingCurves(_) => "IntersectingCurves",
            Error::SameCircle => "SameCircle",
            Error::NotHomologicallyTrivial(_) => "NotHomologicallyTrivial",
            Error::ZeroDirection => "ZeroDirection",
            Error::EmptyCollection => "EmptyCollection",
            Error::DegreeOverflow => "DegreeOverflow",
            Error::DegreeUnderflow => "DegreeUnderflow",
            Error::DegreeMismatch(..) => "DegreeMismatch",
            Error::ZeroFrequency => "ZeroFrequency",
            Error::Domain(_) => "DomainError",
            Error::InvalidParams(_) => "InvalidParams",
            Error::Degenerate(_) => "Degenerate",
            Error::PersistentDegeneracy(_) => "PersistentDegeneracy",
            Error::IdenticalCircles => "IdenticalCircles",
            Error::IntersectingLifts => "IntersectingLifts",
            Error::Internal(_) => "InternalError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
