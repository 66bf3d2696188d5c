use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("points belong to different models")]
    ModelMismatch,
    #[error("imaginary part {0} is not strictly positive (must exceed 1e-12)")]
    NotInUpperHalfPlane(f64),
    #[error("word {0:?} is not freely reduced")]
    NotReduced(String),
    #[error("invalid generator symbol {0:?}")]
    InvalidSymbol(String),
    #[error("geodesic parameter {t} outside [0, {len}]")]
    OutOfRange { t: f64, len: f64 },
    #[error("tree geodesic parameter {0} is not an integer")]
    NotAVertex(f64),
    #[error("boundary point resolved to depth {depth}, operation needs {needed}")]
    DepthExhausted { needed: usize, depth: usize },
    #[error("invalid boundary point: {0}")]
    InvalidBoundary(&'static str),
    #[error("matrix determinant {0} is not positive")]
    BadDeterminant(f64),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("shadow radius {0} is negative")]
    NegativeRadius(f64),
    #[error("shadow source and target coincide")]
    DegenerateShadow,
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
