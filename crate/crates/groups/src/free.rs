use hypdrift_geometry::{Isometry, Letter, Model, ModelPoint, Word};

use crate::action::{ActionFlags, Generator, GroupAction};
use crate::error::{GroupError, Result};

/// The free group `F_k` acting on its Cayley tree, basepoint the identity vertex.
#[derive(Clone, Debug)]
pub struct FreeGroup {
    rank: usize,
    gens: Vec<Generator<Word>>,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Result<Self> {
        if !(2..=26).contains(&rank) {
            return Err(GroupError::BadRank(rank));
        }
        let gens = (0..2 * rank)
            .map(|code| {
                let l = Letter::from_code(code as u8);
                Generator { symbol: l.to_char(), elem: Word::from_letters([l]), inverse: code ^ 1 }
            })
            .collect();
        Ok(FreeGroup { rank, gens })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl GroupAction for FreeGroup {
    type Elem = Word;
    type Key = Word;

    fn name(&self) -> String {
        format!("free{}", self.rank)
    }

    fn model(&self) -> Model {
        Model::Tree
    }

    fn basepoint(&self) -> ModelPoint {
        ModelPoint::Tree(Word::identity())
    }

    fn flags(&self) -> ActionFlags {
        ActionFlags { has_parabolics: false, convex_cocompact: true }
    }

    fn generators(&self) -> &[Generator<Word>] {
        &self.gens
    }

    fn identity(&self) -> Word {
        Word::identity()
    }

    fn mul(&self, a: &Word, b: &Word) -> Word {
        a.mul(b)
    }

    fn mul_assign(&self, a: &mut Word, b: &Word) {
        for &l in b.letters() {
            a.push(l);
        }
    }

    fn inverse(&self, a: &Word) -> Word {
        a.inverse()
    }

    fn key(&self, a: &Word) -> Word {
        a.clone()
    }

    fn isometry(&self, a: &Word) -> Isometry {
        Isometry::Tree(a.clone())
    }

    fn displacement(&self, a: &Word) -> f64 {
        a.len() as f64
    }

    fn free_rank(&self) -> Option<usize> {
        Some(self.rank)
    }

    fn exact_norm(&self, a: &Word) -> Option<usize> {
        Some(a.len())
    }

    fn normal_form(&self, a: &Word) -> Option<String> {
        Some(a.to_string())
    }

    fn pruning_is_exact(&self) -> bool {
        true
    }

    fn orbit_point(&self, a: &Word) -> ModelPoint {
        ModelPoint::Tree(a.clone())
    }

    fn parse(&self, s: &str) -> Result<Word> {
        let w = Word::parse(s)?;
        if w.rank_needed() > self.rank {
            return Err(GroupError::UnknownSymbol { symbol: s.to_string(), action: self.name() });
        }
        Ok(w)
    }
}
