//! Random walks driven by finitely supported measures on group actions:
//! seeded path sampling, exact convolution powers, Green functions by three
//! methods, the Green metric and its Busemann functions.

pub mod convolution;
pub mod error;
pub mod green;
pub mod measure;
pub mod path;

pub use convolution::{convolution_power, convolution_sequence, entropy_sequence, Convolution};
pub use error::{Result, WalkError};
pub use green::{
    green_busemann, green_function, green_metric, monte_carlo_green, write_green_csv, ExactGreen, GreenBusemann,
    GreenMethod, GreenOracle, GreenTable, GreenValue, TruncationParams,
};
pub use hypdrift_stats::Estimate;
pub use measure::{make_measure, uniform, Atom, MomentProfile, WalkMeasure};
pub use path::{derive_seed, sample_path, sample_paths, splitmix64, sub_seed, write_paths_jsonl, SamplePath};

/// `μ̌(g) = μ(g⁻¹)`.
pub fn reflect<A: hypdrift_groups::GroupAction + Clone>(measure: &WalkMeasure<A>) -> WalkMeasure<A> {
    measure.reflect()
}

/// Crate version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
