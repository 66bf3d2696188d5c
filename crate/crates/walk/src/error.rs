use hypdrift_groups::GroupError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WalkError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("weight for {word:?} must be positive and finite, got {weight}")]
    BadWeight { word: String, weight: f64 },
    #[error("measure support is a single element")]
    Degenerate,
    #[error("support does not generate the group as a semigroup: {missing} not reached within 6 products")]
    NotGenerating { missing: String },
    #[error("support of the convolution power exceeds the cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("{method} does not apply: {reason}")]
    MethodMismatch { method: &'static str, reason: String },
    #[error("truncation bound {bound:.3e} exceeds 10% of the Green value {value:.3e}")]
    HorizonTooSmall { bound: f64, value: f64 },
    #[error("element is outside the truncation ball")]
    OutsideBall,
    #[error("approach sequence needs at least 4 terms of increasing displacement")]
    BadApproach,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = WalkError> = std::result::Result<T, E>;
