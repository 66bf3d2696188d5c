use hypdrift_geometry::GeometryError;
use hypdrift_gibbs::GibbsError;
use hypdrift_groups::GroupError;
use hypdrift_stats::FitError;
use hypdrift_walk::WalkError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiagnosticsError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Gibbs(#[from] GibbsError),
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error("n must be at least 100, got {0}")]
    ShortWalk(usize),
    #[error("displacement overflowed at step {n}; the walk leaves the range of float matrices")]
    NonFinite { n: usize },
    #[error("need k ≤ n, got k = {k}, n = {n}")]
    BadSplit { k: usize, n: usize },
    #[error("mean proxy displacement {mean:.2} is below the required {required:.2}; raise the horizon")]
    HorizonTooShort { mean: f64, required: f64 },
    #[error("shadow ratios need a constant potential, got {0}")]
    NonconstantPotential(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = DiagnosticsError> = std::result::Result<T, E>;
