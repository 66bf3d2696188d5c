use std::f64::consts::FRAC_PI_4;

use hypdrift_geometry::plane::HBoundary;
use hypdrift_geometry::{Isometry, Letter, Matrix, Model, ModelPoint, PlanePoint, Word};

use crate::action::{displacement_at_i, ActionFlags, Generator, GroupAction};
use crate::domain::FundamentalDomain;
use crate::error::{GroupError, Result};

/// A closed half-disk of the upper half-plane bounded by a geodesic, given by
/// its boundary interval on the real line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Disk {
    /// Points with `|z − center| ≤ radius`.
    Inside { center: f64, radius: f64 },
    /// Points with `|z − center| ≥ radius`; contains `∞`.
    Outside { center: f64, radius: f64 },
}

impl Disk {
    fn from_ends(x: f64, y: f64, contains_infinity: bool) -> Disk {
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        let (center, radius) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
        if contains_infinity {
            Disk::Outside { center, radius }
        } else {
            Disk::Inside { center, radius }
        }
    }

    pub fn contains(&self, z: &PlanePoint) -> bool {
        match *self {
            Disk::Inside { center, radius } => (z.re() - center).hypot(z.im()) < radius,
            Disk::Outside { center, radius } => (z.re() - center).hypot(z.im()) > radius,
        }
    }

    fn ends(&self) -> (f64, f64) {
        match *self {
            Disk::Inside { center, radius } | Disk::Outside { center, radius } => (center - radius, center + radius),
        }
    }

    fn disjoint(&self, other: &Disk) -> bool {
        let ((a0, a1), (b0, b1)) = (self.ends(), other.ends());
        match (self, other) {
            (Disk::Inside { .. }, Disk::Inside { .. }) => a1 < b0 || b1 < a0,
            (Disk::Inside { .. }, Disk::Outside { .. }) => b0 < a0 && a1 < b1,
            (Disk::Outside { .. }, Disk::Inside { .. }) => a0 < b0 && b1 < a1,
            (Disk::Outside { .. }, Disk::Outside { .. }) => false,
        }
    }

    fn image(&self, m: &Matrix) -> Result<Disk> {
        let (x, y) = self.ends();
        let inner = match *self {
            Disk::Inside { center, .. } => HBoundary::Real(center),
            Disk::Outside { .. } => HBoundary::Infinity,
        };
        let real = |b: HBoundary<f64>| match b {
            HBoundary::Real(v) => Ok(v),
            HBoundary::Infinity => Err(GroupError::BadSchottky("disk boundary maps through infinity".into())),
        };
        let (u, v) = (real(m.apply_boundary(&HBoundary::Real(x)))?, real(m.apply_boundary(&HBoundary::Real(y)))?);
        let inside = match m.apply_boundary(&inner) {
            HBoundary::Infinity => true,
            HBoundary::Real(w) => w < u.min(v) || w > u.max(v),
        };
        Ok(Disk::from_ends(u, v, inside))
    }
}

/// A group element carried both as a reduced word and as a matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SchottkyElem {
    pub word: Word,
    pub matrix: Matrix,
}

/// A rank-two Schottky group on the plane, basepoint `i`.
///
/// `a = diag(λ, 1/λ)` and `b = R a R⁻¹` with `R` the rotation about `i` by
/// `2θ`. Generator `g` maps the complement of `disk(g⁻¹)` onto `disk(g)`, and
/// the four disks are pairwise disjoint, so the group is free on `a, b` by
/// ping-pong and its quotient is convex cocompact.
#[derive(Clone, Debug)]
pub struct SchottkyGroup {
    lambda: f64,
    theta: f64,
    gens: Vec<Generator<SchottkyElem>>,
    disks: [Disk; 4],
}

impl Default for SchottkyGroup {
    fn default() -> Self {
        Self::new(3.0, FRAC_PI_4).expect("default Schottky disks are disjoint")
    }
}

impl SchottkyGroup {
    pub fn new(lambda: f64, theta: f64) -> Result<Self> {
        if !(lambda > 1.0 && lambda.is_finite()) {
            return Err(GroupError::BadSchottky(format!("λ must exceed 1, got {lambda}")));
        }
        let a = Matrix::new(lambda, 0.0, 0.0, lambda.recip())?;
        let r = Matrix::rotation_about_i(theta);
        let b = r * a * r.inverse();
        let da_plus = Disk::Outside { center: 0.0, radius: lambda };
        let da_minus = Disk::Inside { center: 0.0, radius: lambda.recip() };
        let disks = [da_plus, da_minus, da_plus.image(&r)?, da_minus.image(&r)?];
        let mats = [a, a.inverse(), b, b.inverse()];
        for i in 0..4 {
            for j in i + 1..4 {
                if !disks[i].disjoint(&disks[j]) {
                    return Err(GroupError::BadSchottky(format!("disks {i} and {j} overlap")));
                }
            }
            let o = PlanePoint::i();
            if disks.iter().any(|d| d.contains(&o)) {
                return Err(GroupError::BadSchottky("basepoint lies in a disk".into()));
            }
            if !disks[i].contains(&mats[i].apply(&o)) {
                return Err(GroupError::BadSchottky(format!("generator {i} does not map o into its disk")));
            }
            let paired = disks[i ^ 1].image(&mats[i])?;
            let (p, q) = (paired.ends(), disks[i].ends());
            if (p.0 - q.0).abs().max((p.1 - q.1).abs()) > 1e-9 {
                return Err(GroupError::BadSchottky(format!("generator {i} does not pair its disks")));
            }
        }
        let gens = (0..4)
            .map(|code| {
                let l = Letter::from_code(code as u8);
                Generator {
                    symbol: l.to_char(),
                    elem: SchottkyElem { word: Word::from_letters([l]), matrix: mats[code] },
                    inverse: code ^ 1,
                }
            })
            .collect();
        Ok(SchottkyGroup { lambda, theta, gens, disks })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `disks()[code]` is the disk of the generator with letter code `code`
    /// (`a, A, b, B` in order).
    pub fn disks(&self) -> &[Disk; 4] {
        &self.disks
    }

    pub fn from_word(&self, word: Word) -> SchottkyElem {
        let matrix = word
            .letters()
            .iter()
            .fold(Matrix::identity(), |m, l| m * self.gens[l.code() as usize].elem.matrix)
            .renormalized();
        SchottkyElem { word, matrix }
    }
}

impl GroupAction for SchottkyGroup {
    type Elem = SchottkyElem;
    type Key = Word;

    fn name(&self) -> String {
        "schottky".into()
    }

    fn model(&self) -> Model {
        Model::Plane
    }

    fn basepoint(&self) -> ModelPoint {
        ModelPoint::Plane(PlanePoint::i())
    }

    fn flags(&self) -> ActionFlags {
        ActionFlags { has_parabolics: false, convex_cocompact: true }
    }

    fn generators(&self) -> &[Generator<SchottkyElem>] {
        &self.gens
    }

    fn identity(&self) -> SchottkyElem {
        SchottkyElem { word: Word::identity(), matrix: Matrix::identity() }
    }

    fn mul(&self, a: &SchottkyElem, b: &SchottkyElem) -> SchottkyElem {
        let word = a.word.mul(&b.word);
        if word.len() < a.word.len().max(b.word.len()) {
            // Cancellation: rebuild from letters rather than trust a product
            // of large nearly-inverse matrices.
            return self.from_word(word);
        }
        SchottkyElem { word, matrix: (a.matrix * b.matrix).renormalized() }
    }

    fn mul_assign(&self, a: &mut SchottkyElem, b: &SchottkyElem) {
        let before = a.word.len();
        for &l in b.word.letters() {
            a.word.push(l);
        }
        if a.word.len() < before.max(b.word.len()) {
            a.matrix = self.from_word(a.word.clone()).matrix;
        } else {
            a.matrix = (a.matrix * b.matrix).renormalized();
        }
    }

    fn inverse(&self, a: &SchottkyElem) -> SchottkyElem {
        SchottkyElem { word: a.word.inverse(), matrix: a.matrix.inverse() }
    }

    fn key(&self, a: &SchottkyElem) -> Word {
        a.word.clone()
    }

    fn isometry(&self, a: &SchottkyElem) -> Isometry {
        Isometry::Plane(a.matrix)
    }

    fn displacement(&self, a: &SchottkyElem) -> f64 {
        displacement_at_i(&a.matrix)
    }

    fn free_rank(&self) -> Option<usize> {
        Some(2)
    }

    fn exact_norm(&self, a: &SchottkyElem) -> Option<usize> {
        Some(a.word.len())
    }

    fn normal_form(&self, a: &SchottkyElem) -> Option<String> {
        Some(a.word.to_string())
    }

    fn pruning_is_exact(&self) -> bool {
        false
    }

    fn parse(&self, s: &str) -> Result<SchottkyElem> {
        let w = Word::parse(s)?;
        if w.rank_needed() > 2 {
            return Err(GroupError::UnknownSymbol { symbol: s.to_string(), action: self.name() });
        }
        Ok(self.from_word(w))
    }
}

impl FundamentalDomain for SchottkyGroup {
    /// Ping-pong: while `z` lies in `disk(g)`, replace it by `g⁻¹ z`.
    fn reduce_with(&self, z: &PlanePoint) -> (PlanePoint, Matrix) {
        let (mut w, mut m) = (*z, Matrix::identity());
        for _ in 0..100_000 {
            match self.disks.iter().position(|d| d.contains(&w)) {
                Some(k) => {
                    let g = self.gens[k ^ 1].elem.matrix;
                    w = g.apply(&w);
                    m = g * m;
                }
                None => break,
            }
        }
        (w, m)
    }
}
