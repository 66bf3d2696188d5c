//! Estimators and checks built on the walk and Gibbs layers: drift, entropy,
//! harmonic shadow masses, shadow ratios `φ_n`, the fundamental inequality
//! `h ≤ ℓ·v_F − ℓ_F`, bounded deviation of the Green metric, deviation tails
//! and Green decay.

pub mod deviation;
pub mod drift;
pub mod entropy;
pub mod error;
pub mod green_decay;
pub mod harmonic;
pub mod inequality;
pub mod plot;
pub mod ratios;
pub mod tails;

pub use deviation::{
    ancona_check, ball_inputs, deviation_report, metric_deviation_report, AnconaParams, AnconaSummary, DeviationInput,
    DeviationReport, DeviationRow, STDERR_FLAG_SHARE,
};
pub use drift::{drift, DriftEstimate};
pub use entropy::{
    convolution_entropy, entropy, green_drift_entropy, ConvolutionEntropy, EntropyMethod, EntropyReport, Extrapolation,
    GreenDriftEntropy,
};
pub use error::{DiagnosticsError, Result};
pub use green_decay::{elements_by_norm, green_decay_check, GreenDecayCheck, GreenDecayRow};
pub use harmonic::{harmonic_shadow_mass, BoundaryProxies, GATE_TOL};
pub use inequality::{
    bucket_entropies, inequality_report, BucketEntropy, BucketParams, ComponentFailure, InequalityParams,
    InequalityReport, Verdict, VerdictPolicy,
};
pub use plot::{write_xy_csv, XyPoint};
pub use ratios::{shadow_ratio_stats, HarmonicSide, LevelProbability, RatioParams, RatioRow, RatioTable, PHI_LEVELS};
pub use tails::{deviation_tail, plane_vertex_to_side, tree_vertex_to_side, DeviationTail, TailPoint};

/// Crate version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
