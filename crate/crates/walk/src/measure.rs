use std::collections::{HashMap, HashSet};

use hypdrift_groups::{word_norms, GroupAction};
use rand::distributions::WeightedIndex;
use serde::Serialize;

use crate::error::{Result, WalkError};

/// One support point of a step measure.
#[derive(Clone, Debug)]
pub struct Atom<E> {
    pub elem: E,
    pub prob: f64,
    pub label: String,
    /// Word norm of the element.
    pub norm: usize,
}

/// `Σ c^‖g‖ μ(g)` for `c = 2, 4, 8`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentProfile {
    pub c2: f64,
    pub c4: f64,
    pub c8: f64,
}

/// A finitely supported probability measure on a group, with its action.
#[derive(Clone, Debug)]
pub struct WalkMeasure<A: GroupAction> {
    action: A,
    atoms: Vec<Atom<A::Elem>>,
    symmetric: bool,
    moments: MomentProfile,
    sampler: WeightedIndex<f64>,
}

const GENERATION_DEPTH: usize = 6;
const GENERATION_CAP: usize = 2_000_000;
const NORM_CAP: usize = 2_000_000;

/// Builds a measure from `(word, weight)` pairs. Weights are normalized and
/// repeated elements merged; the support must generate the group as a
/// semigroup.
pub fn make_measure<A, S>(action: &A, spec: &[(S, f64)]) -> Result<WalkMeasure<A>>
where
    A: GroupAction + Clone,
    S: AsRef<str>,
{
    let mut index: HashMap<A::Key, usize> = HashMap::new();
    let mut raw: Vec<(A::Elem, f64, String)> = Vec::new();
    for (word, weight) in spec {
        let word = word.as_ref().trim();
        if !(*weight > 0.0 && weight.is_finite()) {
            return Err(WalkError::BadWeight { word: word.to_string(), weight: *weight });
        }
        let elem = action.parse(word)?;
        let label = action.normal_form(&elem).unwrap_or_else(|| word.to_string());
        match index.get(&action.key(&elem)) {
            Some(&i) => raw[i].1 += weight,
            None => {
                index.insert(action.key(&elem), raw.len());
                raw.push((elem, *weight, label));
            }
        }
    }
    if raw.len() < 2 {
        return Err(WalkError::Degenerate);
    }
    let total: f64 = raw.iter().map(|r| r.1).sum();
    let elems: Vec<A::Elem> = raw.iter().map(|r| r.0.clone()).collect();
    let (norms, _) = word_norms(action, &elems, NORM_CAP)?;
    let atoms: Vec<Atom<A::Elem>> = raw
        .into_iter()
        .zip(norms)
        .map(|((elem, w, label), norm)| Atom { elem, prob: w / total, label, norm })
        .collect();
    check_generation(action, &atoms)?;
    Ok(WalkMeasure::from_atoms(action.clone(), atoms))
}

/// The uniform measure on the generating set (as listed, so repeated
/// generators such as `S = S⁻¹` carry extra weight).
pub fn uniform<A: GroupAction + Clone>(action: &A) -> Result<WalkMeasure<A>> {
    let spec: Vec<(String, f64)> = action.generators().iter().map(|g| (g.symbol.to_string(), 1.0)).collect();
    make_measure(action, &spec)
}

fn check_generation<A: GroupAction>(action: &A, atoms: &[Atom<A::Elem>]) -> Result<()> {
    let mut wanted: Vec<(A::Key, char)> = action.generators().iter().map(|g| (action.key(&g.elem), g.symbol)).collect();
    let mut seen: HashSet<A::Key> = HashSet::new();
    let mut layer: Vec<A::Elem> = Vec::new();
    for a in atoms {
        if seen.insert(action.key(&a.elem)) {
            layer.push(a.elem.clone());
        }
    }
    for _ in 1..GENERATION_DEPTH {
        wanted.retain(|(k, _)| !seen.contains(k));
        if wanted.is_empty() || seen.len() > GENERATION_CAP {
            break;
        }
        let mut next = Vec::new();
        for x in &layer {
            for a in atoms {
                let y = action.mul(x, &a.elem);
                if seen.insert(action.key(&y)) {
                    next.push(y);
                }
            }
        }
        layer = next;
    }
    wanted.retain(|(k, _)| !seen.contains(k));
    match wanted.first() {
        None => Ok(()),
        Some((_, symbol)) => Err(WalkError::NotGenerating { missing: symbol.to_string() }),
    }
}

impl<A: GroupAction> WalkMeasure<A> {
    fn from_atoms(action: A, atoms: Vec<Atom<A::Elem>>) -> Self {
        let probs: Vec<f64> = atoms.iter().map(|a| a.prob).collect();
        let sampler = WeightedIndex::new(&probs).expect("positive weights");
        let moment = |c: f64| atoms.iter().map(|a| c.powi(a.norm as i32) * a.prob).sum();
        let moments = MomentProfile { c2: moment(2.0), c4: moment(4.0), c8: moment(8.0) };
        let by_key: HashMap<A::Key, f64> = atoms.iter().map(|a| (action.key(&a.elem), a.prob)).collect();
        let symmetric = atoms.iter().all(|a| {
            let inv = action.key(&action.inverse(&a.elem));
            by_key.get(&inv).is_some_and(|p| (p - a.prob).abs() <= 1e-12)
        });
        WalkMeasure { action, atoms, symmetric, moments, sampler }
    }

    pub fn action(&self) -> &A {
        &self.action
    }

    pub fn atoms(&self) -> &[Atom<A::Elem>] {
        &self.atoms
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn moments(&self) -> MomentProfile {
        self.moments
    }

    pub(crate) fn sampler(&self) -> &WeightedIndex<f64> {
        &self.sampler
    }

    /// `(label, probability)` pairs in support order.
    pub fn weights(&self) -> Vec<(String, f64)> {
        self.atoms.iter().map(|a| (a.label.clone(), a.prob)).collect()
    }

    /// `Some(k)` when this is the uniform nearest-neighbor measure on a free
    /// action of rank `k`.
    pub fn nearest_neighbor_rank(&self) -> Option<usize> {
        let k = self.action.free_rank()?;
        let uniform = (self.atoms.len() == 2 * k)
            && self.atoms.iter().all(|a| a.norm == 1 && (a.prob - 1.0 / (2 * k) as f64).abs() <= 1e-12);
        uniform.then_some(k)
    }

    /// Largest word norm in the support.
    pub fn step_norm(&self) -> usize {
        self.atoms.iter().map(|a| a.norm).max().unwrap_or(0)
    }

    /// `Σ d(o, g·o) μ(g)`.
    pub fn mean_displacement(&self) -> f64 {
        self.atoms.iter().map(|a| a.prob * self.action.displacement(&a.elem)).sum()
    }
}

impl<A: GroupAction + Clone> WalkMeasure<A> {
    /// The reflected measure `μ̌(g) = μ(g⁻¹)`.
    pub fn reflect(&self) -> WalkMeasure<A> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                let elem = self.action.inverse(&a.elem);
                let label = self.action.normal_form(&elem).unwrap_or_else(|| inverse_label(&self.action, &a.label));
                Atom { elem, prob: a.prob, label, norm: a.norm }
            })
            .collect();
        WalkMeasure::from_atoms(self.action.clone(), atoms)
    }
}

fn inverse_label<A: GroupAction>(action: &A, label: &str) -> String {
    match action.parse_symbols(label) {
        Ok(gens) if !gens.is_empty() => {
            gens.iter().rev().map(|&g| action.generators()[action.generators()[g].inverse].symbol).collect()
        }
        _ => "e".into(),
    }
}
