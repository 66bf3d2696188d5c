use std::collections::HashMap;

use hypdrift_groups::GroupAction;

use crate::error::{Result, WalkError};
use crate::measure::WalkMeasure;

/// An exact finitely supported distribution `μ^{*n}`, in deterministic
/// discovery order.
#[derive(Clone, Debug)]
pub struct Convolution<A: GroupAction> {
    step: usize,
    entries: Vec<(A::Elem, f64)>,
    index: HashMap<A::Key, u32>,
}

impl<A: GroupAction> Convolution<A> {
    fn point(action: &A, e: A::Elem) -> Self {
        let index = HashMap::from([(action.key(&e), 0)]);
        Convolution { step: 0, entries: vec![(e, 1.0)], index }
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(A::Elem, f64)] {
        &self.entries
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn prob(&self, key: &A::Key) -> f64 {
        self.index.get(key).map_or(0.0, |&i| self.entries[i as usize].1)
    }

    /// Shannon entropy `−Σ p log p`.
    pub fn entropy(&self) -> f64 {
        -self.entries.iter().filter(|e| e.1 > 0.0).map(|e| e.1 * e.1.ln()).sum::<f64>()
    }

    /// `μ^{*(n+1)} = μ^{*n} * μ`, i.e. the law of `ω_n·g`.
    pub fn advance(&self, measure: &WalkMeasure<A>, cap: usize) -> Result<Self> {
        let action = measure.action();
        let mut entries: Vec<(A::Elem, f64)> = Vec::with_capacity(self.entries.len() * 2);
        let mut index: HashMap<A::Key, u32> = HashMap::with_capacity(self.entries.len() * 2);
        for (x, p) in &self.entries {
            for a in measure.atoms() {
                let y = action.mul(x, &a.elem);
                let key = action.key(&y);
                match index.get(&key) {
                    Some(&i) => entries[i as usize].1 += p * a.prob,
                    None => {
                        if entries.len() >= cap {
                            return Err(WalkError::CapExceeded { cap });
                        }
                        index.insert(key, entries.len() as u32);
                        entries.push((y, p * a.prob));
                    }
                }
            }
        }
        Ok(Convolution { step: self.step + 1, entries, index })
    }
}

/// Exact `μ^{*n}` by iterated convolution with canonical-form dedup.
pub fn convolution_power<A: GroupAction>(measure: &WalkMeasure<A>, n: usize, cap: usize) -> Result<Convolution<A>> {
    let mut c = Convolution::point(measure.action(), measure.action().identity());
    for _ in 0..n {
        c = c.advance(measure, cap)?;
    }
    Ok(c)
}

/// Calls `visit` on `μ^{*0}, μ^{*1}, …, μ^{*n}`, stopping early (without
/// error) once the support would exceed `cap`. Returns the last step reached.
pub fn convolution_sequence<A: GroupAction>(
    measure: &WalkMeasure<A>,
    n: usize,
    cap: usize,
    mut visit: impl FnMut(&Convolution<A>),
) -> usize {
    let mut c = Convolution::point(measure.action(), measure.action().identity());
    visit(&c);
    for _ in 0..n {
        match c.advance(measure, cap) {
            Ok(next) => c = next,
            Err(_) => break,
        }
        visit(&c);
    }
    c.step()
}

/// `H(μ^{*k})` for `k = 0..=n`.
pub fn entropy_sequence<A: GroupAction>(measure: &WalkMeasure<A>, n: usize, cap: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(n + 1);
    let reached = convolution_sequence(measure, n, cap, |c| out.push(c.entropy()));
    if reached < n {
        return Err(WalkError::CapExceeded { cap });
    }
    Ok(out)
}
