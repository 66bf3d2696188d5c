use std::path::{Path, PathBuf};

use hypdrift_diagnostics::{AnconaParams, BucketParams, EntropyMethod, Verdict, VerdictPolicy};
use hypdrift_walk::GreenMethod;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// Config files must declare this schema version.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ActionSpec {
    Free { rank: usize },
    Schottky { lambda: f64, theta: f64 },
    Modular,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MeasureSpec {
    /// Equal weight on each listed generator symbol.
    Uniform,
    /// Word and weight pairs; weights are normalized.
    Weights { weights: Vec<(String, f64)> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PotentialSpec {
    Zero,
    Constant { c: f64 },
    /// `A·exp(−d(z, Γo)²)`; plane actions only.
    Bump { amplitude: f64 },
}

/// Orbit ball used for the pressure fit `v̂_F`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallConfig {
    pub radius: f64,
    pub window: (f64, f64),
    pub cap: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InequalityConfig {
    pub entropy: EntropyMethod,
    #[serde(default)]
    pub entropy_check: Option<EntropyMethod>,
    pub drift_n: usize,
    pub drift_batch: usize,
    pub fake_n: usize,
    pub fake_batch: usize,
    #[serde(default)]
    pub bucket: Option<BucketParams>,
    #[serde(default)]
    pub policy: VerdictPolicy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviationConfig {
    /// Rows are the orbit ball of this radius.
    pub radius: f64,
    pub green: GreenMethod,
    #[serde(default)]
    pub ancona: Option<AnconaParams>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailsConfig {
    /// Defaults to `n/2`.
    #[serde(default)]
    pub k: Option<usize>,
    pub n: usize,
    pub grid: Vec<f64>,
    pub batch: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HarmonicChoice {
    Direct,
    /// Martin-kernel transport with the exact Green function.
    Transported,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatiosConfig {
    pub atoms_radius: f64,
    /// Patterson parameter `s = v̂_F + gap`.
    pub gap: f64,
    pub harmonic: HarmonicChoice,
    pub radius: f64,
    pub grid: Vec<usize>,
    pub batch: usize,
    pub proxies: usize,
    pub proxy_horizon: usize,
    pub min_hits: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GreenDecayConfig {
    pub max_norm: usize,
    pub band: (f64, f64),
    pub green: GreenMethod,
}

/// Pass/fail conditions checked by `suite`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default)]
    pub verdict: Option<Verdict>,
    #[serde(default)]
    pub max_deviation: Option<f64>,
    #[serde(default)]
    pub max_tail_slope: Option<f64>,
    #[serde(default)]
    pub green_decay_passes: bool,
    #[serde(default)]
    pub min_phi_above_half: Option<f64>,
    #[serde(default)]
    pub median_phi_decreasing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema: u32,
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub action: ActionSpec,
    pub measure: MeasureSpec,
    pub potential: PotentialSpec,
    pub seed: u64,
    pub ball: BallConfig,
    #[serde(default)]
    pub inequality: Option<InequalityConfig>,
    #[serde(default)]
    pub deviation: Option<DeviationConfig>,
    #[serde(default)]
    pub tails: Option<TailsConfig>,
    #[serde(default)]
    pub ratios: Option<RatiosConfig>,
    #[serde(default)]
    pub green_decay: Option<GreenDecayConfig>,
    #[serde(default)]
    pub expect: Expectations,
    /// Output directory; not part of the fingerprint.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            CliError::Schema { field: path, line: inner.line(), column: inner.column(), message: inner.to_string() }
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
        Self::parse(&text)
    }

    /// Semantic checks beyond the JSON shape, reported with field paths.
    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, message: String| Err(CliError::Invalid { field: field.into(), message });
        if self.schema != SCHEMA_VERSION {
            return bad("schema", format!("expected {SCHEMA_VERSION}, got {}", self.schema));
        }
        if self.name.is_empty() {
            return bad("name", "must be nonempty".into());
        }
        let (lo, hi) = self.ball.window;
        if !(lo < hi && hi <= self.ball.radius) {
            return bad("ball.window", format!("need lo < hi ≤ radius, got ({lo}, {hi}) with radius {}", self.ball.radius));
        }
        if let Some(i) = &self.inequality {
            if i.drift_batch == 0 || i.fake_batch == 0 {
                return bad("inequality.drift_batch", "batches must be positive".into());
            }
        }
        if let Some(t) = &self.tails {
            if t.grid.is_empty() || t.batch == 0 {
                return bad("tails.grid", "grid and batch must be nonempty".into());
            }
            if t.k.is_some_and(|k| k > t.n) {
                return bad("tails.k", format!("k must not exceed n = {}", t.n));
            }
        }
        if let Some(r) = &self.ratios {
            if r.grid.is_empty() || r.batch == 0 || r.proxies == 0 {
                return bad("ratios.grid", "grid, batch and proxies must be nonempty".into());
            }
        }
        if let Some(g) = &self.green_decay {
            if g.band.0 <= 0.0 || g.band.0 > g.band.1 {
                return bad("green_decay.band", format!("need 0 < lo ≤ hi, got {:?}", g.band));
            }
        }
        Ok(())
    }

    /// Canonical JSON with the output directory removed.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.out = None;
        serde_json::to_string(&c).expect("configs serialize")
    }

    /// SHA-256 of the canonical JSON, hex encoded.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.canonical_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
