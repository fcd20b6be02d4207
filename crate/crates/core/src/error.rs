use thiserror::Error;

pub type Result<T> = std::result::Result<T, AeqError>;

#[derive(Debug, Error)]
pub enum AeqError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("point {index} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("points {0} and {1} coincide")]
    CoincidentPoints(usize, usize),
    #[error("invalid tolerance policy: {0}")]
    InvalidTolerance(String),
    #[error("edge ({0}, {1}) is invalid for a graph on {2} vertices")]
    InvalidEdge(usize, usize, usize),
    #[error("empty point list")]
    EmptyInput,
    #[error("points {0} and {1} are at distance {2}, not 1")]
    NotUnitSimplex(usize, usize, f64),
    #[error("{k} points cannot form a unit simplex in dimension {dim} (at most dim + 1)")]
    SimplexTooLarge { k: usize, dim: usize },
    #[error(
        "simplex with {k} vertices spans a hyperplane of R^{dim}; no normal direction exists, drop one vertex first"
    )]
    NoNormalDirection { k: usize, dim: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is not symmetric: |a[{0}][{1}] - a[{1}][{0}]| = {2}")]
    NotSymmetric(usize, usize, f64),
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("point set is not almost-equidistant: no unit pair among points ({0}, {1}, {2})")]
    NotAlmostEquidistant(usize, usize, usize),
    #[error("graph has {n} vertices, above the exact clique search limit {limit}; use heuristic clique mode")]
    CliqueLimit { n: usize, limit: usize },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
