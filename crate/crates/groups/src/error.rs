use hypdrift_geometry::GeometryError;
use hypdrift_stats::FitError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("unknown generator symbol {symbol:?} for action {action}")]
    UnknownSymbol { symbol: String, action: String },
    #[error("free group rank must be between 2 and 26, got {0}")]
    BadRank(usize),
    #[error("enumeration cap of {cap} elements exceeded")]
    CapExceeded { cap: usize },
    #[error("fit window [{lo}, {hi}] exceeds the complete radius {radius}")]
    WindowTooLarge { lo: f64, hi: f64, radius: f64 },
    #[error("fit window holds {got} shells, need at least 4")]
    TooFewShells { got: usize },
    #[error("action {0} has no parabolic elements")]
    NoParabolics(String),
    #[error("element is not parabolic (|trace| = {0})")]
    NotParabolic(f64),
    #[error("element not reached within the enumeration cap")]
    NotFound,
    #[error("Schottky disks are not pairwise disjoint or not paired by the generators: {0}")]
    BadSchottky(String),
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
