use std::collections::BTreeMap;

use hypdrift_gibbs::{fake_drift, pressure, Potential};
use hypdrift_groups::{GroupAction, OrbitBall};
use hypdrift_stats::{combined_stderr, Estimate};
use hypdrift_walk::{convolution_sequence, derive_seed, WalkMeasure};
use serde::{Deserialize, Serialize};

use crate::drift::{drift, DriftEstimate};
use crate::entropy::{entropy, EntropyMethod, EntropyReport};

/// Thresholds, in combined standard errors, for the two definite verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictPolicy {
    pub equality_sigmas: f64,
    pub strict_sigmas: f64,
}

impl Default for VerdictPolicy {
    fn default() -> Self {
        VerdictPolicy { equality_sigmas: 2.0, strict_sigmas: 3.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    EqualityConsistent,
    StrictlyLess,
    Inconclusive,
}

impl VerdictPolicy {
    pub fn classify(&self, gap: f64, stderr: f64) -> Verdict {
        if gap > self.strict_sigmas * stderr {
            Verdict::StrictlyLess
        } else if gap.abs() <= self.equality_sigmas * stderr {
            Verdict::EqualityConsistent
        } else {
            Verdict::Inconclusive
        }
    }
}

/// Shells `S_k = {g : d(o, go) ∈ [εn(k−1), εnk)}` for the bucket-entropy check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BucketParams {
    pub n: usize,
    pub eps: f64,
    pub cap: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityParams {
    pub entropy: EntropyMethod,
    /// A second entropy method run for comparison only.
    pub entropy_check: Option<EntropyMethod>,
    pub drift_n: usize,
    pub drift_batch: usize,
    pub window: (f64, f64),
    pub fake_n: usize,
    pub fake_batch: usize,
    pub bucket: Option<BucketParams>,
    pub policy: VerdictPolicy,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BucketEntropy {
    pub n: usize,
    pub buckets: usize,
    pub entropy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentFailure {
    pub component: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub potential: String,
    pub h: Option<Estimate>,
    pub h_check: Option<Estimate>,
    /// `|ĥ − ĥ_check|` in combined standard errors.
    pub h_agreement_sigmas: Option<f64>,
    pub ell: Option<Estimate>,
    pub v_f: Option<Estimate>,
    pub ell_f: Option<Estimate>,
    /// `ℓ̂·v̂_F − ℓ̂_F − ĥ`.
    pub gap: Option<f64>,
    pub gap_stderr: Option<f64>,
    pub verdict: Verdict,
    /// `ĥ ≤ ℓ̂·v̂_F − ℓ̂_F + 3σ`.
    pub guivarch_holds: Option<bool>,
    pub failures: Vec<ComponentFailure>,
    pub policy: VerdictPolicy,
    pub entropy: Option<EntropyReport>,
    pub entropy_check: Option<EntropyReport>,
    pub drift: Option<DriftEstimate>,
    pub buckets: Vec<BucketEntropy>,
    pub fingerprint: String,
}

/// Assembles `ĥ`, `ℓ̂`, `v̂_F` and `ℓ̂_F` from independent runs (seeds derived
/// per component) and classifies the gap `ℓ̂·v̂_F − ℓ̂_F − ĥ`.
///
/// A failing component makes the verdict inconclusive; the failure is
/// recorded rather than returned.
pub fn inequality_report<A: GroupAction>(
    measure: &WalkMeasure<A>,
    f: &Potential,
    ball: &OrbitBall<A>,
    params: &InequalityParams,
) -> InequalityReport {
    let action = measure.action();
    let mut failures = Vec::new();
    let mut record = |component: &str, e: String| failures.push(ComponentFailure { component: component.into(), error: e });

    let entropy_report = entropy(measure, &params.entropy, derive_seed(params.seed, "entropy"))
        .map_err(|e| record("entropy", e.to_string()))
        .ok();
    let check_report = params.entropy_check.as_ref().and_then(|m| {
        entropy(measure, m, derive_seed(params.seed, "entropy-check")).map_err(|e| record("entropy-check", e.to_string())).ok()
    });
    let drift_est = drift(measure, params.drift_n, params.drift_batch, derive_seed(params.seed, "drift"))
        .map_err(|e| record("drift", e.to_string()))
        .ok();
    let v_f = pressure(action, ball, f, params.window).map(|p| p.estimate).map_err(|e| record("pressure", e.to_string())).ok();
    let ell_f = fake_drift(f, measure, params.fake_n, params.fake_batch, derive_seed(params.seed, "fake-drift"))
        .map(|d| d.estimate)
        .map_err(|e| record("fake-drift", e.to_string()))
        .ok();
    let buckets = match &params.bucket {
        Some(b) => bucket_entropies(measure, b),
        None => Vec::new(),
    };

    let h = entropy_report.as_ref().map(|r| r.estimate().clone());
    let h_check = check_report.as_ref().map(|r| r.estimate().clone());
    let h_agreement_sigmas = match (&h, &h_check) {
        (Some(a), Some(b)) => {
            let se = combined_stderr(&[a.stderr, b.stderr]);
            Some((a.value - b.value).abs() / se.max(f64::MIN_POSITIVE))
        }
        _ => None,
    };
    let ell = drift_est.as_ref().map(|d| d.estimate.clone());
    let (gap, gap_stderr) = match (&h, &ell, &v_f, &ell_f) {
        (Some(h), Some(l), Some(v), Some(lf)) => {
            let gap = l.value * v.value - lf.value - h.value;
            let se = combined_stderr(&[v.value * l.stderr, l.value * v.stderr, lf.stderr, h.stderr]);
            (Some(gap), Some(se))
        }
        _ => (None, None),
    };
    let verdict = match (gap, gap_stderr) {
        (Some(g), Some(se)) => params.policy.classify(g, se),
        _ => Verdict::Inconclusive,
    };
    InequalityReport {
        potential: f.name().to_string(),
        h,
        h_check,
        h_agreement_sigmas,
        ell,
        v_f,
        ell_f,
        gap,
        gap_stderr,
        verdict,
        guivarch_holds: gap.zip(gap_stderr).map(|(g, se)| g >= -3.0 * se),
        failures,
        policy: params.policy,
        entropy: entropy_report,
        entropy_check: check_report,
        drift: drift_est,
        buckets,
        fingerprint: String::new(),
    }
}

/// `−Σ_k μ^{*n}(S_k) log μ^{*n}(S_k)` for `n = 1..=b.n` (stopping at the cap).
pub fn bucket_entropies<A: GroupAction>(measure: &WalkMeasure<A>, b: &BucketParams) -> Vec<BucketEntropy> {
    let action = measure.action();
    let mut out = Vec::new();
    convolution_sequence(measure, b.n, b.cap, |c| {
        let n = c.step();
        if n == 0 {
            return;
        }
        let width = b.eps * n as f64;
        let mut shells: BTreeMap<usize, f64> = BTreeMap::new();
        for (g, p) in c.entries() {
            *shells.entry((action.displacement(g) / width).floor() as usize).or_default() += p;
        }
        let entropy = -shells.values().filter(|&&p| p > 0.0).map(|p| p * p.ln()).sum::<f64>();
        out.push(BucketEntropy { n, buckets: shells.len(), entropy });
    });
    out
}
