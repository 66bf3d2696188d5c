use std::io::Write;

use hypdrift_groups::GroupAction;
use rand::distributions::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::measure::WalkMeasure;

/// The splitmix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of path `index` in a batch: `seed ⊕ splitmix64(index)`. Depends only
/// on the pair, never on scheduling.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    seed ^ splitmix64(index)
}

/// Derives an independent master seed for a named estimator.
pub fn derive_seed(seed: u64, name: &str) -> u64 {
    name.bytes().fold(splitmix64(seed), |h, b| splitmix64(h ^ u64::from(b)))
}

/// Increments `g₁ … g_n` of one walk, stored as indices into the measure's
/// atoms. Positions `ω_k = g₁⋯g_k` are recomputed on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePath {
    pub seed: u64,
    pub increments: Vec<u16>,
}

impl SamplePath {
    pub fn len(&self) -> usize {
        self.increments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.increments.is_empty()
    }

    /// Calls `visit(k, ω_k)` for `k = 0..=n`, with `ω_0 = e`.
    pub fn walk<A: GroupAction>(&self, measure: &WalkMeasure<A>, mut visit: impl FnMut(usize, &A::Elem)) {
        let action = measure.action();
        let atoms = measure.atoms();
        let mut w = action.identity();
        visit(0, &w);
        for (k, &i) in self.increments.iter().enumerate() {
            action.mul_assign(&mut w, &atoms[i as usize].elem);
            visit(k + 1, &w);
        }
    }

    /// `ω_k` for each requested `k` (in the order given).
    pub fn positions_at<A: GroupAction>(&self, measure: &WalkMeasure<A>, ks: &[usize]) -> Vec<A::Elem> {
        let mut out: Vec<Option<A::Elem>> = vec![None; ks.len()];
        self.walk(measure, |k, w| {
            for (slot, &want) in out.iter_mut().zip(ks) {
                if want == k {
                    *slot = Some(w.clone());
                }
            }
        });
        out.into_iter().map(|w| w.expect("requested step within path length")).collect()
    }

    pub fn final_position<A: GroupAction>(&self, measure: &WalkMeasure<A>) -> A::Elem {
        self.positions_at(measure, &[self.len()]).pop().expect("one position")
    }
}

/// Path `index` of the batch with master `seed`.
pub fn sample_path<A: GroupAction>(measure: &WalkMeasure<A>, n: usize, seed: u64, index: u64) -> SamplePath {
    let s = sub_seed(seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(s);
    let increments = (0..n).map(|_| measure.sampler().sample(&mut rng) as u16).collect();
    SamplePath { seed: s, increments }
}

/// `batch` independent paths of length `n`, generated in parallel; the
/// result does not depend on the thread count.
pub fn sample_paths<A: GroupAction>(measure: &WalkMeasure<A>, n: usize, batch: usize, seed: u64) -> Vec<SamplePath> {
    (0..batch as u64).into_par_iter().map(|i| sample_path(measure, n, seed, i)).collect()
}

#[derive(Serialize)]
struct PathLine<'a> {
    seed: u64,
    increments: Vec<&'a str>,
}

/// One JSON object per line: `{"seed": …, "increments": ["a", "B", …]}`.
pub fn write_paths_jsonl<A: GroupAction, W: Write>(measure: &WalkMeasure<A>, paths: &[SamplePath], mut out: W) -> Result<()> {
    let atoms = measure.atoms();
    for p in paths {
        let line = PathLine { seed: p.seed, increments: p.increments.iter().map(|&i| atoms[i as usize].label.as_str()).collect() };
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
