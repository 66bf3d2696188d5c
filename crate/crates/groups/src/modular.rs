use hypdrift_geometry::{Isometry, Matrix, Model, ModelPoint, PlanePoint};

use crate::action::{displacement_at_i, ActionFlags, Generator, GroupAction};
use crate::domain::FundamentalDomain;

/// `PSL(2, ℤ)` acting on the upper half-plane, basepoint `i`, generated by
/// `S: z ↦ −1/z` and `T: z ↦ z + 1`.
///
/// The generating set is `{S, S⁻¹, T, T⁻¹}` with `S = S⁻¹`, so a uniform
/// measure on it gives `S` weight 1/2. Elements are float matrices whose
/// entries stay exact integers below 2⁵³.
#[derive(Clone, Debug)]
pub struct ModularGroup {
    gens: Vec<Generator<Matrix>>,
}

impl Default for ModularGroup {
    fn default() -> Self {
        Self::new()
    }
}

impl ModularGroup {
    pub fn new() -> Self {
        let m = |a, b, c, d| Matrix::new(a, b, c, d).expect("integer generators have unit determinant");
        let s = m(0.0, -1.0, 1.0, 0.0);
        let gens = vec![
            Generator { symbol: 'S', elem: s, inverse: 1 },
            Generator { symbol: 's', elem: s, inverse: 0 },
            Generator { symbol: 'T', elem: m(1.0, 1.0, 0.0, 1.0), inverse: 3 },
            Generator { symbol: 't', elem: m(1.0, -1.0, 0.0, 1.0), inverse: 2 },
        ];
        ModularGroup { gens }
    }

    /// `Tⁿ` for any integer `n`.
    pub fn t_power(n: i64) -> Matrix {
        Matrix::new(1.0, n as f64, 0.0, 1.0).expect("unit determinant")
    }
}

impl GroupAction for ModularGroup {
    type Elem = Matrix;
    type Key = [i64; 4];

    fn name(&self) -> String {
        "modular".into()
    }

    fn model(&self) -> Model {
        Model::Plane
    }

    fn basepoint(&self) -> ModelPoint {
        ModelPoint::Plane(PlanePoint::i())
    }

    fn flags(&self) -> ActionFlags {
        ActionFlags { has_parabolics: true, convex_cocompact: false }
    }

    fn generators(&self) -> &[Generator<Matrix>] {
        &self.gens
    }

    fn identity(&self) -> Matrix {
        Matrix::identity()
    }

    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        *a * *b
    }

    fn inverse(&self, a: &Matrix) -> Matrix {
        a.inverse()
    }

    /// Canonical-sign integer entries; equal keys mean equal in `PSL(2, ℤ)`.
    fn key(&self, a: &Matrix) -> [i64; 4] {
        a.entries().map(|v| v.round() as i64)
    }

    fn isometry(&self, a: &Matrix) -> Isometry {
        Isometry::Plane(*a)
    }

    fn displacement(&self, a: &Matrix) -> f64 {
        displacement_at_i(a)
    }

    /// Every `g ≠ e, S` has a generator `s ∈ {S, T, T⁻¹}` with
    /// `d(i, s·g·i) ≤ d(i, g·i)` (the reduction algorithm for the
    /// fundamental domain `|Re z| ≤ 1/2, |z| ≥ 1`), so every element of the
    /// `R`-ball has a parent chain inside the ball.
    fn pruning_is_exact(&self) -> bool {
        true
    }
}

impl FundamentalDomain for ModularGroup {
    fn reduce_with(&self, z: &PlanePoint) -> (PlanePoint, Matrix) {
        let (mut x, mut y) = (z.re(), z.im());
        let [mut a, mut b, mut c, mut d] = [1.0, 0.0, 0.0, 1.0];
        for _ in 0..10_000 {
            let k = x.round();
            x -= k;
            (a, b) = (a - k * c, b - k * d);
            let r2 = x * x + y * y;
            if r2 >= 1.0 {
                break;
            }
            x = -x / r2;
            y /= r2;
            (a, b, c, d) = (-c, -d, a, b);
        }
        let m = Matrix::new(a, b, c, d).unwrap_or_else(|_| Matrix::identity());
        (PlanePoint::new(x, y).unwrap_or_else(|_| PlanePoint::i()), m)
    }
}
