use thiserror::Error;

/// Errors reported by the library.
///
/// Variants that describe invalid user input carry the name of the offending
/// field so front ends can print a one-line diagnostic.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polygon has {0} distinct non-collinear vertices; at least 3 are required")]
    TooFewVertices(usize),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("polygon is not simple: edges {0} and {1} intersect")]
    SelfIntersection(usize, usize),
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("polygon could not be triangulated (is it simple?)")]
    Triangulation,
    #[error("point {0} lies outside the polygon")]
    PointOutside(usize),
    #[error("{field}: {message}")]
    Domain { field: &'static str, message: String },
    #[error("edge is too close to horizontal (|dy| = {0:e})")]
    DegenerateEdge(f64),
    #[error("instance too large for exhaustive enumeration: {size} > {max}")]
    TooLarge { size: usize, max: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("area estimator failed: {0}")]
    Estimator(String),
    #[error("invalid polygon JSON: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn domain(field: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            field,
            message: message.into(),
        }
    }

    /// True for errors caused by invalid input rather than by a run failing.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Estimator(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
