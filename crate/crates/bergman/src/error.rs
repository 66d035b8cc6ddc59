use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown domain spec `{0}`")]
    UnknownDomain(String),
    #[error("map inversion failed at z = ({re}, {im})")]
    MapInversionFailure { re: f64, im: f64 },
    #[error("quadrature error: {0}")]
    Quadrature(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("Faber routes disagree: max coefficient gap {gap:e}")]
    FaberInconsistency { gap: f64 },
    #[error("Laurent tail test failed: error {err:e} on |w| = {radius}")]
    LaurentTail { err: f64, radius: f64 },
    #[error("point too close to the boundary (distance {distance:e})")]
    NearBoundary { distance: f64 },
    #[error("point outside the working annulus or domain: {0}")]
    Domain(String),
    #[error("zero of f_z on the contour |w| = {radius}")]
    ContourDegenerate { radius: f64 },
    #[error("classification failed: {0}")]
    ClassificationFailure(String),
    #[error("largest zero is within the tie-window of the outer contour; classification inconclusive")]
    NearBoundaryInconclusive,
    #[error("point is not in the region where the continued exterior map is defined")]
    NotInOmegaStar,
    #[error("exponent range exceeded: {0}")]
    Scaling(String),
    #[error("root finding did not converge (worst residual {worst:e})")]
    RootFailure { worst: f64 },
    #[error("degree {n} outside the available range 0..={max}")]
    DegreeOutOfRange { n: usize, max: usize },
    #[error("{0} is not available for this domain")]
    Unavailable(&'static str),
    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// A stable kebab-case name for the error kind, for reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::UnknownDomain(_) => "unknown-domain",
            Error::MapInversionFailure { .. } => "map-inversion-failure",
            Error::Quadrature(_) => "quadrature-error",
            Error::PrecisionExhausted(_) => "precision-exhausted",
            Error::FaberInconsistency { .. } => "faber-inconsistency",
            Error::LaurentTail { .. } => "laurent-tail",
            Error::NearBoundary { .. } => "near-boundary",
            Error::Domain(_) => "domain-error",
            Error::ContourDegenerate { .. } => "contour-degenerate",
            Error::ClassificationFailure(_) => "classification-failure",
            Error::NearBoundaryInconclusive => "near-boundary-inconclusive",
            Error::NotInOmegaStar => "not-in-omega-star",
            Error::Scaling(_) => "scaling-error",
            Error::RootFailure { .. } => "root-failure",
            Error::DegreeOutOfRange { .. } => "degree-out-of-range",
            Error::Unavailable(_) => "unavailable",
            Error::Io(_) => "io-error",
        }
    }
}
