use std::fmt::Debug;
use std::hash::Hash;

use hypdrift_geometry::{apply, Isometry, Matrix, Model, ModelPoint};
use serde::Serialize;

use crate::error::{GroupError, Result};

/// A generator: display symbol, its element, and the index of its inverse
/// in the same generator list.
#[derive(Clone, Debug)]
pub struct Generator<E> {
    pub symbol: char,
    pub elem: E,
    pub inverse: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ActionFlags {
    pub has_parabolics: bool,
    pub convex_cocompact: bool,
}

/// A finitely generated group acting isometrically on a model space, with a
/// chosen basepoint `o`.
///
/// `Key` is a canonical form used for deduplication: two elements are equal in
/// the group exactly when their keys are equal.
pub trait GroupAction: Send + Sync {
    type Elem: Clone + Debug + Send + Sync;
    type Key: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn name(&self) -> String;
    fn model(&self) -> Model;
    fn basepoint(&self) -> ModelPoint;
    fn flags(&self) -> ActionFlags;
    /// Symmetric generating set; `generators()[g.inverse]` is the inverse of `g`.
    fn generators(&self) -> &[Generator<Self::Elem>];

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
    /// `a ← a·b`; actions with growable normal forms override this to avoid
    /// copying long elements at every step of a walk.
    fn mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.mul(a, b);
    }
    fn key(&self, a: &Self::Elem) -> Self::Key;
    fn isometry(&self, a: &Self::Elem) -> Isometry;
    /// `d(o, a·o)`.
    fn displacement(&self, a: &Self::Elem) -> f64;

    /// `Some(k)` when the action is free on `k` generators with no relations,
    /// so reduced words are normal forms and word norm is reduced length.
    fn free_rank(&self) -> Option<usize> {
        None
    }

    /// Word length when it is known without search.
    fn exact_norm(&self, _a: &Self::Elem) -> Option<usize> {
        None
    }

    /// Canonical word text when the action has normal forms.
    fn normal_form(&self, _a: &Self::Elem) -> Option<String> {
        None
    }

    /// Whether `d(o, s·g·o) ≤ R` for some generator `s` forces `d(o, g·o) ≤ R`
    /// along some parent chain, so displacement-pruned search is complete.
    fn pruning_is_exact(&self) -> bool;

    fn orbit_point(&self, a: &Self::Elem) -> ModelPoint {
        apply(&self.isometry(a), &self.basepoint()).expect("action isometries match the basepoint model")
    }

    fn generator_index(&self, symbol: char) -> Option<usize> {
        self.generators().iter().position(|g| g.symbol == symbol)
    }

    /// Product of generators, left to right.
    fn word_elem(&self, gens: &[usize]) -> Self::Elem {
        gens.iter().fold(self.identity(), |acc, &i| self.mul(&acc, &self.generators()[i].elem))
    }

    /// Parses a word over the generator symbols. `e` or the empty string is the
    /// identity; a symbol followed by `⁻¹` or `^-1` is inverted.
    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let gens = self.parse_symbols(s)?;
        Ok(self.word_elem(&gens))
    }

    fn parse_symbols(&self, s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Vec::new());
        }
        let normalized = s.replace("⁻¹", "~").replace("^-1", "~");
        let mut out: Vec<usize> = Vec::new();
        for c in normalized.chars() {
            if c == '~' {
                let last = out.pop().ok_or_else(|| self.unknown(s))?;
                out.push(self.generators()[last].inverse);
            } else if !c.is_whitespace() {
                out.push(self.generator_index(c).ok_or_else(|| self.unknown(&c.to_string()))?);
            }
        }
        Ok(out)
    }

    #[doc(hidden)]
    fn unknown(&self, symbol: &str) -> GroupError {
        GroupError::UnknownSymbol { symbol: symbol.to_string(), action: self.name() }
    }
}

/// `d(i, g·i)` from the entries of a unit-determinant matrix:
/// `sinh²(d/2) = (a² + b² + c² + d² − 2)/4`.
pub fn displacement_at_i(m: &Matrix) -> f64 {
    let e = m.entries();
    let big = e.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if big > 1e50 {
        // acosh(N/2) = ln N up to e^{-100}; scaled to avoid overflow in N.
        let rest: f64 = e.iter().map(|v| (v / big).powi(2)).sum();
        return 2.0 * big.ln() + rest.ln();
    }
    let [a, b, c, d] = e;
    let q = ((a * a + b * b + c * c + d * d - 2.0) / 4.0).max(0.0);
    2.0 * q.sqrt().asinh()
}
