use std::collections::HashMap;
use std::io::Write;

use hypdrift_stats::{growth_rate, Estimate};
use serde::Serialize;

use crate::action::GroupAction;
use crate::error::{GroupError, Result};

const NO_PARENT: u32 = u32::MAX;
/// Displacement ties (integer tree distances, symmetric plane points) are
/// resolved inclusively with this slack.
const TIE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct BallEntry<E> {
    pub elem: E,
    pub displacement: f64,
    parent: u32,
    generator: u8,
}

/// How completeness of an orbit ball was established.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BallCertificate {
    pub complete: bool,
    /// `exact-pruning` when every ball element has a parent chain inside the
    /// ball; `margin-stabilized` when the `R`-ball was unchanged between two
    /// pruning margins.
    pub method: String,
    pub margin: f64,
    pub max_word_length: usize,
    pub explored: usize,
    pub cap: usize,
}

/// The elements `g` with `d(o, g·o) ≤ R`, in breadth-first discovery order.
#[derive(Clone, Debug)]
pub struct OrbitBall<A: GroupAction> {
    radius: f64,
    entries: Vec<BallEntry<A::Elem>>,
    index: HashMap<A::Key, u32>,
    depth: Vec<u32>,
    certificate: BallCertificate,
    symbols: Vec<char>,
}

impl<A: GroupAction> OrbitBall<A> {
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BallEntry<A::Elem>] {
        &self.entries
    }

    pub fn certificate(&self) -> &BallCertificate {
        &self.certificate
    }

    pub fn is_complete(&self) -> bool {
        self.certificate.complete
    }

    pub fn index_of(&self, key: &A::Key) -> Option<usize> {
        self.index.get(key).map(|&i| i as usize)
    }

    pub fn contains(&self, key: &A::Key) -> bool {
        self.index.contains_key(key)
    }

    /// Generator indices of a word for entry `i`, first letter first. After
    /// margin pruning the chain may stop early; use [`OrbitBall::word`] then.
    pub fn word_indices(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.depth[i] as usize);
        let mut j = i;
        while self.entries[j].parent != NO_PARENT {
            out.push(self.entries[j].generator as usize);
            j = self.entries[j].parent as usize;
        }
        out
    }

    /// A word for entry `i` (`"e"` for the identity): the action's normal
    /// form when it has one, else the breadth-first word.
    pub fn word(&self, action: &A, i: usize) -> String {
        if let Some(w) = action.normal_form(&self.entries[i].elem) {
            return w;
        }
        let w: String = self.word_indices(i).into_iter().map(|g| self.symbols[g]).collect();
        if w.is_empty() {
            "e".into()
        } else {
            w
        }
    }

    /// Displacements in increasing order.
    pub fn sorted_displacements(&self) -> Vec<f64> {
        let mut d: Vec<f64> = self.entries.iter().map(|e| e.displacement).collect();
        d.sort_by(f64::total_cmp);
        d
    }

    /// `|{g : d(o, g·o) ≤ r}|`.
    pub fn count_within(&self, r: f64) -> usize {
        self.entries.iter().filter(|e| e.displacement <= r + TIE).count()
    }

    /// Number of elements with `n − 1 < d(o, g·o) ≤ n` for `n = 0, 1, …, ⌊R⌋`
    /// (shell 0 holds the displacement-zero elements).
    pub fn shell_counts(&self) -> Vec<usize> {
        let top = (self.radius + TIE).floor() as usize;
        let mut shells = vec![0usize; top + 1];
        for e in &self.entries {
            let n = (e.displacement - TIE).ceil().max(0.0) as usize;
            if n <= top {
                shells[n] += 1;
            }
        }
        shells
    }

    /// CSV with columns `word,displacement`, in discovery order.
    pub fn write_csv<W: Write>(&self, action: &A, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["word", "displacement"])?;
        for (i, e) in self.entries.iter().enumerate() {
            w.write_record([self.word(action, i), format!("{:.12}", e.displacement)])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

/// Entries, key index, and whether the exploration finished under the cap.
type Exploration<A> = (Vec<BallEntry<<A as GroupAction>::Elem>>, HashMap<<A as GroupAction>::Key, u32>, bool);

fn explore<A: GroupAction>(action: &A, bound: f64, cap: usize) -> Exploration<A> {
    let id = action.identity();
    let mut index = HashMap::new();
    index.insert(action.key(&id), 0u32);
    let mut entries = vec![BallEntry { displacement: action.displacement(&id), elem: id, parent: NO_PARENT, generator: 0 }];
    let gens = action.generators();
    let mut head = 0;
    while head < entries.len() {
        for (gi, g) in gens.iter().enumerate() {
            let next = action.mul(&g.elem, &entries[head].elem);
            let key = action.key(&next);
            if index.contains_key(&key) {
                continue;
            }
            let d = action.displacement(&next);
            if d > bound + TIE {
                continue;
            }
            if entries.len() >= cap {
                return (entries, index, false);
            }
            index.insert(key, entries.len() as u32);
            entries.push(BallEntry { elem: next, displacement: d, parent: head as u32, generator: gi as u8 });
        }
        head += 1;
    }
    (entries, index, true)
}

/// Breadth-first word length of every element within displacement `bound`,
/// searching only through such elements.
pub(crate) fn explore_depths<A: GroupAction>(action: &A, bound: f64, cap: usize) -> (HashMap<A::Key, u32>, bool) {
    let (entries, mut index, complete) = explore(action, bound, cap);
    let mut depth = vec![0u32; entries.len()];
    for i in 1..entries.len() {
        depth[i] = depth[entries[i].parent as usize] + 1;
    }
    for v in index.values_mut() {
        *v = depth[*v as usize];
    }
    (index, complete)
}

/// Breadth-first closure of `{e}` under left multiplication by generators,
/// pruned at displacement `R` (plus a margin when pruning is not provably
/// exact for the action).
///
/// Exceeding `cap` returns the partial ball with `complete = false`.
pub fn orbit_ball<A: GroupAction>(action: &A, radius: f64, cap: usize) -> Result<OrbitBall<A>> {
    let symbols = action.generators().iter().map(|g| g.symbol).collect();
    if action.pruning_is_exact() {
        let (entries, index, complete) = explore(action, radius, cap);
        let explored = entries.len();
        return Ok(finish(action, radius, entries, index, symbols, "exact-pruning", 0.0, complete, explored, cap));
    }
    let mut previous: Option<usize> = None;
    let mut margin = 1.0;
    loop {
        let (entries, index, complete) = explore(action, radius + margin, cap);
        let explored = entries.len();
        let inside = entries.iter().filter(|e| e.displacement <= radius + TIE).count();
        let stable = complete && previous == Some(inside);
        if stable || !complete || margin >= 8.0 {
            let (entries, index) = restrict(action, entries, index, radius);
            return Ok(finish(action, radius, entries, index, symbols, "margin-stabilized", margin, stable, explored, cap));
        }
        previous = Some(inside);
        margin *= 2.0;
    }
}

type Explored<A> = (Vec<BallEntry<<A as GroupAction>::Elem>>, HashMap<<A as GroupAction>::Key, u32>);

/// Drops entries beyond `radius`. An entry whose parent was dropped loses its
/// parent link; its word then comes from the action's normal form.
fn restrict<A: GroupAction>(
    action: &A,
    entries: Vec<BallEntry<A::Elem>>,
    _index: HashMap<A::Key, u32>,
    radius: f64,
) -> Explored<A> {
    let keep: Vec<bool> = entries.iter().map(|e| e.displacement <= radius + TIE).collect();
    let mut remap = vec![NO_PARENT; entries.len()];
    let mut out = Vec::new();
    let mut index = HashMap::new();
    for (i, e) in entries.into_iter().enumerate() {
        if !keep[i] {
            continue;
        }
        let parent = if e.parent == NO_PARENT { NO_PARENT } else { remap[e.parent as usize] };
        remap[i] = out.len() as u32;
        index.insert(action.key(&e.elem), out.len() as u32);
        out.push(BallEntry { parent, ..e });
    }
    (out, index)
}

#[allow(clippy::too_many_arguments)]
fn finish<A: GroupAction>(
    action: &A,
    radius: f64,
    entries: Vec<BallEntry<A::Elem>>,
    index: HashMap<A::Key, u32>,
    symbols: Vec<char>,
    method: &str,
    margin: f64,
    complete: bool,
    explored: usize,
    cap: usize,
) -> OrbitBall<A> {
    let mut depth = vec![0u32; entries.len()];
    for i in 0..entries.len() {
        let p = entries[i].parent;
        if p != NO_PARENT {
            depth[i] = depth[p as usize] + 1;
        }
    }
    // Dropped parents leave chains that stop early; recover the true word
    // length for free actions.
    let max_word_length = entries
        .iter()
        .zip(&depth)
        .map(|(e, &d)| action.exact_norm(&e.elem).unwrap_or(d as usize))
        .max()
        .unwrap_or(0);
    let certificate = BallCertificate { complete, method: method.into(), margin, max_word_length, explored, cap };
    OrbitBall { radius, entries, index, depth, certificate, symbols }
}

/// Radii whose ball holds fewer elements than this are left out of growth
/// fits: their log-counts are dominated by lower-order terms (`log(2·3^R − 1)`
/// for `F_2` is visibly curved below `R = 3`).
pub const MIN_FIT_COUNT: usize = 50;

/// Least-squares slope of `log |Γo ∩ B_R(o)|` against `R` at unit steps over
/// the window, with the slope difference between the two half-windows added
/// in quadrature to the stderr. Radii with fewer than [`MIN_FIT_COUNT`]
/// elements are skipped.
pub fn critical_exponent<A: GroupAction>(ball: &OrbitBall<A>, window: (f64, f64)) -> Result<Estimate> {
    let (lo, hi) = window;
    if !ball.is_complete() || hi > ball.radius() + TIE || lo < 0.0 || lo >= hi {
        return Err(GroupError::WindowTooLarge { lo, hi, radius: ball.radius() });
    }
    let d = ball.sorted_displacements();
    let steps = ((hi - lo) + TIE).floor() as usize;
    let (rs, logs): (Vec<f64>, Vec<f64>) = (0..=steps)
        .map(|k| lo + k as f64)
        .map(|r| (r, d.partition_point(|&x| x <= r + TIE)))
        .filter(|&(_, n)| n >= MIN_FIT_COUNT)
        .map(|(r, n)| (r, (n as f64).ln()))
        .unzip();
    if rs.len() < 4 {
        return Err(GroupError::TooFewShells { got: rs.len() });
    }
    let fit = growth_rate(&rs, &logs)?;
    Ok(Estimate::new(fit.slope, fit.slope_stderr, ball.len() as u64, 0, "orbit-growth-ols"))
}
