//! Cayley trees of free groups: reduced words, ends, and their metric kernels.
//!
//! Letters are encoded as `2i` for the `i`-th generator and `2i + 1` for its
//! inverse, so inversion is `x ^ 1`. Text form uses `a, b, c, …` for
//! generators and the uppercase letter for the inverse (`A = a⁻¹`).

use crate::error::{GeometryError, Result};
use std::cmp::Ordering;
use std::fmt;

/// Maximal number of generators representable in text form.
pub const MAX_RANK: usize = 26;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter(u8);

impl Letter {
    pub fn generator(i: usize) -> Self {
        assert!(i < MAX_RANK, "generator index {i} exceeds {MAX_RANK}");
        Letter((2 * i) as u8)
    }

    pub fn generator_inverse(i: usize) -> Self {
        Self::generator(i).inverse()
    }

    pub fn from_code(code: u8) -> Self {
        assert!((code as usize) < 2 * MAX_RANK);
        Letter(code)
    }

    pub fn code(self) -> u8 {
        self.0
    }

    /// Index of the underlying generator.
    pub fn index(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    pub fn to_char(self) -> char {
        let base = if self.is_inverse() { b'A' } else { b'a' };
        (base + self.index() as u8) as char
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a'..='z' => Some(Letter::generator(c as usize - 'a' as usize)),
            'A'..='Z' => Some(Letter::generator_inverse(c as usize - 'A' as usize)),
            _ => None,
        }
    }
}

/// A freely reduced word, i.e. a vertex of the Cayley tree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Multiplies the letters out, cancelling adjacent inverse pairs.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Accepts only words that are already reduced.
    pub fn from_reduced(letters: Vec<Letter>) -> Result<Self> {
        if letters.windows(2).any(|p| p[0] == p[1].inverse()) {
            return Err(GeometryError::NotReduced(letters.iter().map(|l| l.to_char()).collect()));
        }
        Ok(Word(letters))
    }

    /// Parses text such as `"aBa"`, `"ab⁻¹a"` or `"e"` (identity) and reduces it.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(Word::from_letters(parse_letters(s)?))
    }

    /// Like [`Word::parse`] but rejects unreduced input.
    pub fn parse_reduced(s: &str) -> Result<Self> {
        Word::from_reduced(parse_letters(s)?)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Right-multiplies by one letter, reducing.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn pop(&mut self) -> Option<Letter> {
        self.0.pop()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Group product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        let cancel = self
            .0
            .iter()
            .rev()
            .zip(&other.0)
            .take_while(|(a, b)| **a == b.inverse())
            .count();
        let mut out = Vec::with_capacity(self.len() + other.len() - 2 * cancel);
        out.extend_from_slice(&self.0[..self.len() - cancel]);
        out.extend_from_slice(&other.0[cancel..]);
        Word(out)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.len())].to_vec())
    }

    pub fn common_prefix_len(&self, other: &Word) -> usize {
        common_prefix(&self.0, &other.0)
    }

    /// Largest generator index used plus one.
    pub fn rank_needed(&self) -> usize {
        self.0.iter().map(|l| l.index() + 1).max().unwrap_or(0)
    }

    pub fn dist(&self, other: &Word) -> usize {
        self.len() + other.len() - 2 * self.common_prefix_len(other)
    }

    /// Vertex at integer distance `t` from `self` on the geodesic to `other`.
    pub fn geodesic_vertex(&self, other: &Word, t: usize) -> Result<Word> {
        let cp = self.common_prefix_len(other);
        let up = self.len() - cp;
        let total = up + other.len() - cp;
        if t > total {
            return Err(GeometryError::OutOfRange { t: t as f64, len: total as f64 });
        }
        Ok(if t <= up { self.prefix(self.len() - t) } else { other.prefix(cp + t - up) })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex order: by length, then lexicographically by letter code.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        self.0.iter().try_for_each(|l| write!(f, "{}", l.to_char()))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    let s = s.trim();
    if s == "e" || s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out: Vec<Letter> = Vec::with_capacity(s.len());
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '⁻' => {
                if chars.next() != Some('¹') {
                    return Err(GeometryError::InvalidSymbol(s.to_string()));
                }
                let last = out.pop().ok_or_else(|| GeometryError::InvalidSymbol(s.to_string()))?;
                out.push(last.inverse());
            }
            _ => out.push(Letter::from_char(c).ok_or_else(|| GeometryError::InvalidSymbol(c.to_string()))?),
        }
    }
    Ok(out)
}

fn common_prefix(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// An end of the tree: a reduced prefix followed by a periodic continuation,
/// trusted only up to `depth` letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TreeEnd {
    prefix: Word,
    period: Vec<Letter>,
    depth: usize,
}

impl TreeEnd {
    pub fn periodic(prefix: Word, period: Word, depth: usize) -> Result<Self> {
        let period = period.0;
        if period.is_empty() {
            return Err(GeometryError::InvalidBoundary("empty period"));
        }
        if depth == 0 {
            return Err(GeometryError::InvalidBoundary("resolution depth must be at least 1"));
        }
        if period[period.len() - 1] == period[0].inverse() {
            return Err(GeometryError::InvalidBoundary("period is not cyclically reduced"));
        }
        if prefix.last() == Some(period[0].inverse()) {
            return Err(GeometryError::InvalidBoundary("prefix and period cancel"));
        }
        Ok(TreeEnd { prefix, period, depth })
    }

    /// Parses `prefix` and `period` text, e.g. `("ab", "a")` for `abaaa…`.
    pub fn parse(prefix: &str, period: &str, depth: usize) -> Result<Self> {
        TreeEnd::periodic(Word::parse_reduced(prefix)?, Word::parse_reduced(period)?, depth)
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> Word {
        Word(self.period.clone())
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Letter at position `n` (0-based) of the infinite word.
    pub fn letter(&self, n: usize) -> Result<Letter> {
        if n >= self.depth {
            return Err(GeometryError::DepthExhausted { needed: n + 1, depth: self.depth });
        }
        let p = self.prefix.len();
        Ok(if n < p { self.prefix.0[n] } else { self.period[(n - p) % self.period.len()] })
    }

    /// The vertex formed by the first `n` letters.
    pub fn truncate(&self, n: usize) -> Result<Word> {
        if n > self.depth {
            return Err(GeometryError::DepthExhausted { needed: n, depth: self.depth });
        }
        Ok(Word((0..n).map(|i| self.letter(i).expect("within depth")).collect()))
    }

    /// Length of the common prefix with a vertex; needs `|w|` letters.
    pub fn common_prefix_with(&self, w: &Word) -> Result<usize> {
        for (i, l) in w.0.iter().enumerate() {
            if self.letter(i)? != *l {
                return Ok(i);
            }
        }
        Ok(w.len())
    }

    /// Length of the common prefix of two ends; fails if they agree to the
    /// full resolution depth of either.
    pub fn common_prefix_with_end(&self, other: &TreeEnd) -> Result<usize> {
        let depth = self.depth.min(other.depth);
        for i in 0..depth {
            if self.letter(i)? != other.letter(i)? {
                return Ok(i);
            }
        }
        Err(GeometryError::DepthExhausted { needed: depth + 1, depth })
    }

    /// Image under left multiplication by `g`.
    pub fn translate(&self, g: &Word) -> Result<TreeEnd> {
        let m = self.prefix.len().max(g.len() + 1);
        let head = self.truncate(m)?;
        let prefix = g.mul(&head);
        let shift = (m - self.prefix.len()) % self.period.len();
        let mut period = self.period.clone();
        period.rotate_left(shift);
        let depth = self.depth - m + prefix.len();
        TreeEnd::periodic(prefix, Word(period), depth)
    }
}

impl fmt::Display for TreeEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pre = if self.prefix.is_empty() { String::new() } else { self.prefix.to_string() };
        write!(f, "{pre}({})^∞", Word(self.period.clone()))
    }
}

/// Busemann function `β_ζ(x, y) = lim d(x, z) − d(y, z)` as `z → ζ`.
pub fn busemann(zeta: &TreeEnd, x: &Word, y: &Word) -> Result<i64> {
    let n = x.len().max(y.len()).max(1);
    let z = zeta.truncate(n)?;
    Ok(x.dist(&z) as i64 - y.dist(&z) as i64)
}

/// Distance from `p` to the geodesic segment `[x, y]`.
pub fn distance_to_segment(p: &Word, x: &Word, y: &Word) -> usize {
    (x.dist(p) + p.dist(y) - x.dist(y)) / 2
}

/// Distance from `p` to the ray from `x` to `zeta`.
pub fn distance_to_ray(p: &Word, x: &Word, zeta: &TreeEnd) -> Result<usize> {
    let xinv = x.inverse();
    let p1 = xinv.mul(p);
    let z1 = zeta.translate(&xinv)?;
    Ok(p1.len() - z1.common_prefix_with(&p1)?)
}
