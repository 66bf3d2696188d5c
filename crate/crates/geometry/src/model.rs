//! Model-agnostic points, ends and isometries, with the shared operations.

use crate::error::{GeometryError, Result};
use crate::plane::{self, HBoundary, HPoint, Mobius};
use crate::scalar::Scalar;
use crate::tree::{self, TreeEnd, Word};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Plane,
    Tree,
}

impl Model {
    /// Hyperbolicity constant used as tolerance for limit comparisons.
    pub fn delta(self) -> f64 {
        match self {
            Model::Plane => std::f64::consts::SQRT_2.ln_1p(),
            Model::Tree => 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModelPoint<T = f64> {
    Plane(HPoint<T>),
    Tree(Word),
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryPoint<T = f64> {
    Plane(HBoundary<T>),
    Tree(TreeEnd),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Isometry<T = f64> {
    Plane(Mobius<T>),
    Tree(Word),
}

/// Either an interior point or a point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum Locus<T = f64> {
    Point(ModelPoint<T>),
    End(BoundaryPoint<T>),
}

impl<T> From<ModelPoint<T>> for Locus<T> {
    fn from(p: ModelPoint<T>) -> Self {
        Locus::Point(p)
    }
}

impl<T> From<BoundaryPoint<T>> for Locus<T> {
    fn from(b: BoundaryPoint<T>) -> Self {
        Locus::End(b)
    }
}

impl<T: Scalar> ModelPoint<T> {
    pub fn plane(re: T, im: T) -> Result<Self> {
        HPoint::new(re, im).map(ModelPoint::Plane)
    }

    pub fn tree(word: &str) -> Result<Self> {
        Word::parse_reduced(word).map(ModelPoint::Tree)
    }

    pub fn model(&self) -> Model {
        match self {
            ModelPoint::Plane(_) => Model::Plane,
            ModelPoint::Tree(_) => Model::Tree,
        }
    }
}

impl<T: Scalar> BoundaryPoint<T> {
    pub fn infinity() -> Self {
        BoundaryPoint::Plane(HBoundary::Infinity)
    }

    pub fn real(x: T) -> Result<Self> {
        HBoundary::real(x).map(BoundaryPoint::Plane)
    }

    pub fn model(&self) -> Model {
        match self {
            BoundaryPoint::Plane(_) => Model::Plane,
            BoundaryPoint::Tree(_) => Model::Tree,
        }
    }
}

impl<T: Scalar> Isometry<T> {
    pub fn matrix(a: T, b: T, c: T, d: T) -> Result<Self> {
        Mobius::new(a, b, c, d).map(Isometry::Plane)
    }

    pub fn word(w: &str) -> Result<Self> {
        Word::parse(w).map(Isometry::Tree)
    }

    pub fn model(&self) -> Model {
        match self {
            Isometry::Plane(_) => Model::Plane,
            Isometry::Tree(_) => Model::Tree,
        }
    }

    pub fn compose(&self, other: &Isometry<T>) -> Result<Isometry<T>> {
        match (self, other) {
            (Isometry::Plane(a), Isometry::Plane(b)) => Ok(Isometry::Plane(*a * *b)),
            (Isometry::Tree(a), Isometry::Tree(b)) => Ok(Isometry::Tree(a.mul(b))),
            _ => Err(GeometryError::ModelMismatch),
        }
    }

    pub fn inverse(&self) -> Isometry<T> {
        match self {
            Isometry::Plane(m) => Isometry::Plane(m.inverse()),
            Isometry::Tree(w) => Isometry::Tree(w.inverse()),
        }
    }
}

/// A shadow `Sh_r(source, target)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Shadow<T = f64> {
    source: ModelPoint<T>,
    target: ModelPoint<T>,
    radius: T,
}

impl<T: Scalar> Shadow<T> {
    pub fn new(source: ModelPoint<T>, target: ModelPoint<T>, radius: T) -> Result<Self> {
        if source.model() != target.model() {
            return Err(GeometryError::ModelMismatch);
        }
        if radius < T::zero() || radius.is_nan() {
            return Err(GeometryError::NegativeRadius(radius.to_f64_lossy()));
        }
        if source == target {
            return Err(GeometryError::DegenerateShadow);
        }
        Ok(Shadow { source, target, radius })
    }

    pub fn source(&self) -> &ModelPoint<T> {
        &self.source
    }

    pub fn target(&self) -> &ModelPoint<T> {
        &self.target
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn translate(&self, g: &Isometry<T>) -> Result<Shadow<T>> {
        Shadow::new(apply(g, &self.source)?, apply(g, &self.target)?, self.radius)
    }

    /// Gate rule for interior points: the segment from the source to `p`
    /// passes within the radius of the target.
    pub fn admits(&self, p: &ModelPoint<T>) -> Result<bool> {
        Ok(distance_to_segment(&self.target, &self.source, p)? <= self.radius)
    }
}

fn usize_to<T: Scalar>(n: usize) -> T {
    T::c(n as f64)
}

pub fn dist<T: Scalar>(x: &ModelPoint<T>, y: &ModelPoint<T>) -> Result<T> {
    match (x, y) {
        (ModelPoint::Plane(a), ModelPoint::Plane(b)) => Ok(plane::dist(a, b)),
        (ModelPoint::Tree(a), ModelPoint::Tree(b)) => Ok(usize_to(a.dist(b))),
        _ => Err(GeometryError::ModelMismatch),
    }
}

/// The point at distance `t` from `x` on `[x, y]`. Tree points exist only at integer `t`.
pub fn geodesic_point<T: Scalar>(x: &ModelPoint<T>, y: &ModelPoint<T>, t: T) -> Result<ModelPoint<T>> {
    match (x, y) {
        (ModelPoint::Plane(a), ModelPoint::Plane(b)) => plane::Geodesic::segment(a, b).point_at(t).map(ModelPoint::Plane),
        (ModelPoint::Tree(a), ModelPoint::Tree(b)) => {
            let n = t.round();
            if (t - n).abs() > T::c(1e-9) {
                return Err(GeometryError::NotAVertex(t.to_f64_lossy()));
            }
            if n < T::zero() {
                return Err(GeometryError::OutOfRange { t: t.to_f64_lossy(), len: a.dist(b) as f64 });
            }
            let n = n.to_usize().ok_or(GeometryError::NonFinite)?;
            a.geodesic_vertex(b, n).map(ModelPoint::Tree)
        }
        _ => Err(GeometryError::ModelMismatch),
    }
}

pub fn busemann<T: Scalar>(zeta: &BoundaryPoint<T>, x: &ModelPoint<T>, y: &ModelPoint<T>) -> Result<T> {
    match (zeta, x, y) {
        (BoundaryPoint::Plane(z), ModelPoint::Plane(a), ModelPoint::Plane(b)) => Ok(plane::busemann(z, a, b)),
        (BoundaryPoint::Tree(z), ModelPoint::Tree(a), ModelPoint::Tree(b)) => {
            tree::busemann(z, a, b).map(|v| T::c(v as f64))
        }
        _ => Err(GeometryError::ModelMismatch),
    }
}

pub fn gromov_product<T: Scalar>(z: &ModelPoint<T>, x: &Locus<T>, y: &Locus<T>) -> Result<T> {
    use Locus::{End, Point};
    match z {
        ModelPoint::Plane(z) => {
            let pt = |l: &Locus<T>| match l {
                Point(ModelPoint::Plane(p)) => Ok(Some(*p)),
                End(BoundaryPoint::Plane(_)) => Ok(None),
                _ => Err(GeometryError::ModelMismatch),
            };
            let end = |l: &Locus<T>| match l {
                End(BoundaryPoint::Plane(b)) => *b,
                _ => unreachable!("checked by pt"),
            };
            match (pt(x)?, pt(y)?) {
                (Some(a), Some(b)) => Ok(plane::gromov_product(z, &a, &b)),
                (Some(a), None) => Ok(plane::gromov_product_boundary(z, &a, &end(y))),
                (None, Some(b)) => Ok(plane::gromov_product_boundary(z, &b, &end(x))),
                (None, None) => Ok(plane::gromov_product_ends(z, &end(x), &end(y))),
            }
        }
        ModelPoint::Tree(z) => {
            let zi = z.inverse();
            let value = match (x, y) {
                (Point(ModelPoint::Tree(a)), Point(ModelPoint::Tree(b))) => zi.mul(a).common_prefix_len(&zi.mul(b)),
                (Point(ModelPoint::Tree(a)), End(BoundaryPoint::Tree(e)))
                | (End(BoundaryPoint::Tree(e)), Point(ModelPoint::Tree(a))) => {
                    e.translate(&zi)?.common_prefix_with(&zi.mul(a))?
                }
                (End(BoundaryPoint::Tree(e)), End(BoundaryPoint::Tree(f))) => {
                    e.translate(&zi)?.common_prefix_with_end(&f.translate(&zi)?)?
                }
                _ => return Err(GeometryError::ModelMismatch),
            };
            Ok(usize_to(value))
        }
    }
}

/// Distance from `p` to the segment `[x, y]` (closed form in both models).
pub fn distance_to_segment<T: Scalar>(p: &ModelPoint<T>, x: &ModelPoint<T>, y: &ModelPoint<T>) -> Result<T> {
    match (p, x, y) {
        (ModelPoint::Plane(p), ModelPoint::Plane(x), ModelPoint::Plane(y)) => Ok(plane::distance_to_segment(p, x, y)),
        (ModelPoint::Tree(p), ModelPoint::Tree(x), ModelPoint::Tree(y)) => Ok(usize_to(tree::distance_to_segment(p, x, y))),
        _ => Err(GeometryError::ModelMismatch),
    }
}

/// Distance from `p` to the ray `[x, ζ)`.
pub fn distance_to_ray<T: Scalar>(p: &ModelPoint<T>, x: &ModelPoint<T>, zeta: &BoundaryPoint<T>) -> Result<T> {
    match (p, x, zeta) {
        (ModelPoint::Plane(p), ModelPoint::Plane(x), BoundaryPoint::Plane(z)) => Ok(plane::distance_to_ray(p, x, z)),
        (ModelPoint::Tree(p), ModelPoint::Tree(x), BoundaryPoint::Tree(z)) => tree::distance_to_ray(p, x, z).map(usize_to),
        _ => Err(GeometryError::ModelMismatch),
    }
}

pub fn in_shadow<T: Scalar>(s: &Shadow<T>, zeta: &BoundaryPoint<T>) -> Result<bool> {
    Ok(distance_to_ray(&s.target, &s.source, zeta)? <= s.radius)
}

/// Whether `z` lies in the open horoball `{z : β_ζ(z, x) < −t}`.
pub fn horoball_contains<T: Scalar>(x: &ModelPoint<T>, zeta: &BoundaryPoint<T>, t: T, z: &ModelPoint<T>) -> Result<bool> {
    Ok(busemann(zeta, z, x)? < -t)
}

pub fn apply<T: Scalar>(g: &Isometry<T>, x: &ModelPoint<T>) -> Result<ModelPoint<T>> {
    match (g, x) {
        (Isometry::Plane(m), ModelPoint::Plane(p)) => Ok(ModelPoint::Plane(m.apply(p))),
        (Isometry::Tree(w), ModelPoint::Tree(v)) => Ok(ModelPoint::Tree(w.mul(v))),
        _ => Err(GeometryError::ModelMismatch),
    }
}

pub fn apply_boundary<T: Scalar>(g: &Isometry<T>, zeta: &BoundaryPoint<T>) -> Result<BoundaryPoint<T>> {
    match (g, zeta) {
        (Isometry::Plane(m), BoundaryPoint::Plane(b)) => Ok(BoundaryPoint::Plane(m.apply_boundary(b))),
        (Isometry::Tree(w), BoundaryPoint::Tree(e)) => e.translate(w).map(BoundaryPoint::Tree),
        _ => Err(GeometryError::ModelMismatch),
    }
}

pub fn apply_locus<T: Scalar>(g: &Isometry<T>, l: &Locus<T>) -> Result<Locus<T>> {
    match l {
        Locus::Point(p) => apply(g, p).map(Locus::Point),
        Locus::End(b) => apply_boundary(g, b).map(Locus::End),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase", deny_unknown_fields)]
enum RawPoint {
    Plane { re: f64, im: f64 },
    Tree { word: String },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawAt {
    Finite(f64),
    Named(String),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase", deny_unknown_fields)]
enum RawBoundary {
    Plane { at: RawAt },
    Tree { prefix: String, period: String, depth: usize },
}

impl<T: Scalar> Serialize for ModelPoint<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ModelPoint::Plane(p) => RawPoint::Plane { re: p.re().to_f64_lossy(), im: p.im().to_f64_lossy() },
            ModelPoint::Tree(w) => RawPoint::Tree { word: w.to_string() },
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for ModelPoint<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPoint::deserialize(d)?;
        match raw {
            RawPoint::Plane { re, im } => ModelPoint::plane(T::c(re), T::c(im)),
            RawPoint::Tree { word } => ModelPoint::tree(&word),
        }
        .map_err(serde::de::Error::custom)
    }
}

impl<T: Scalar> Serialize for BoundaryPoint<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BoundaryPoint::Plane(HBoundary::Infinity) => RawBoundary::Plane { at: RawAt::Named("infinity".into()) },
            BoundaryPoint::Plane(HBoundary::Real(x)) => RawBoundary::Plane { at: RawAt::Finite(x.to_f64_lossy()) },
            BoundaryPoint::Tree(e) => RawBoundary::Tree {
                prefix: if e.prefix().is_empty() { String::new() } else { e.prefix().to_string() },
                period: e.period().to_string(),
                depth: e.depth(),
            },
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for BoundaryPoint<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        match RawBoundary::deserialize(d)? {
            RawBoundary::Plane { at: RawAt::Finite(x) } => BoundaryPoint::real(T::c(x)).map_err(D::Error::custom),
            RawBoundary::Plane { at: RawAt::Named(n) } if n == "infinity" || n == "inf" || n == "∞" => {
                Ok(BoundaryPoint::infinity())
            }
            RawBoundary::Plane { at: RawAt::Named(n) } => Err(D::Error::custom(format!("unknown boundary point {n:?}"))),
            RawBoundary::Tree { prefix, period, depth } => {
                TreeEnd::parse(&prefix, &period, depth).map(BoundaryPoint::Tree).map_err(D::Error::custom)
            }
        }
    }
}
