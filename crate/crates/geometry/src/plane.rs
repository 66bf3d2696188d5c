//! The upper half-plane model of the hyperbolic plane.

use crate::error::{GeometryError, Result};
use crate::scalar::Scalar;
use std::ops::Mul;

/// Points with imaginary part at or below this value are rejected.
pub const MIN_IM: f64 = 1e-12;

/// A point `re + i·im` with `im > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HPoint<T> {
    re: T,
    im: T,
}

impl<T: Scalar> HPoint<T> {
    pub fn new(re: T, im: T) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if im <= T::c(MIN_IM) {
            return Err(GeometryError::NotInUpperHalfPlane(im.to_f64_lossy()));
        }
        Ok(HPoint { re, im })
    }

    pub fn i() -> Self {
        HPoint { re: T::zero(), im: T::one() }
    }

    pub fn re(&self) -> T {
        self.re
    }

    pub fn im(&self) -> T {
        self.im
    }

    fn abs2(&self) -> T {
        self.re * self.re + self.im * self.im
    }

    pub fn cast<U: Scalar>(&self) -> HPoint<U> {
        HPoint { re: U::c(self.re.to_f64_lossy()), im: U::c(self.im.to_f64_lossy()) }
    }
}

/// A point of `ℝ ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HBoundary<T> {
    Real(T),
    Infinity,
}

impl<T: Scalar> HBoundary<T> {
    pub fn real(x: T) -> Result<Self> {
        if x.is_finite() {
            Ok(HBoundary::Real(x))
        } else {
            Err(GeometryError::NonFinite)
        }
    }
}

/// An orientation-preserving isometry `z ↦ (az + b)/(cz + d)`, stored with
/// `ad − bc = 1` and a canonical sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mobius<T> {
    a: T,
    b: T,
    c: T,
    d: T,
}

impl<T: Scalar> Mobius<T> {
    /// Rescales to determinant one and fixes the sign: positive trace when the
    /// trace is nonzero, otherwise first nonzero entry positive.
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let det = a * d - b * c;
        if !det.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if det <= T::zero() {
            return Err(GeometryError::BadDeterminant(det.to_f64_lossy()));
        }
        let k = det.sqrt().recip();
        Ok(Mobius { a: a * k, b: b * k, c: c * k, d: d * k }.canonical())
    }

    pub fn identity() -> Self {
        Mobius { a: T::one(), b: T::zero(), c: T::zero(), d: T::one() }
    }

    /// Rotation by angle `2θ` about `i`.
    pub fn rotation_about_i(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Mobius { a: c, b: s, c: -s, d: c }.canonical()
    }

    /// The affine map `z ↦ (z − p.re)/p.im`, sending `p` to `i`.
    pub fn to_i(p: &HPoint<T>) -> Self {
        let s = p.im.sqrt();
        Mobius { a: s.recip(), b: -p.re / s, c: T::zero(), d: s }
    }

    fn canonical(self) -> Self {
        let tol = T::c(1e-12);
        let tr = self.a + self.d;
        let flip = if tr.abs() > tol {
            tr < T::zero()
        } else {
            [self.a, self.b, self.c, self.d]
                .into_iter()
                .find(|v| v.abs() > tol)
                .is_some_and(|v| v < T::zero())
        };
        if flip {
            Mobius { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
        } else {
            self
        }
    }

    pub fn entries(&self) -> [T; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> T {
        self.a + self.d
    }

    pub fn det(&self) -> T {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Self {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }.canonical()
    }

    /// Rescales to unit determinant, absorbing rounding drift from long products.
    /// Large matrices are returned unchanged: `ad − bc` cancels there, so the
    /// computed determinant says nothing about the drift.
    pub fn renormalized(&self) -> Self {
        let scale = (self.a * self.d).abs().max((self.b * self.c).abs());
        let det = self.det();
        if scale > T::c(1e8) || det <= T::zero() {
            return *self;
        }
        let k = det.sqrt().recip();
        Mobius { a: self.a * k, b: self.b * k, c: self.c * k, d: self.d * k }
    }

    pub fn apply(&self, z: &HPoint<T>) -> HPoint<T> {
        // w = (az + b)/(cz + d); Im w = Im z / |cz + d|² since det = 1.
        // The real part comes from the complex quotient; expanding it into
        // ac|z|² + (ad + bc)x + bd cancels badly for large entries.
        let qr = self.c * z.re + self.d;
        let qi = self.c * z.im;
        let q2 = qr * qr + qi * qi;
        let nr = self.a * z.re + self.b;
        let ni = self.a * z.im;
        HPoint { re: (nr * qr + ni * qi) / q2, im: z.im / q2 }
    }

    pub fn apply_boundary(&self, x: &HBoundary<T>) -> HBoundary<T> {
        match *x {
            HBoundary::Infinity => {
                if self.c == T::zero() {
                    HBoundary::Infinity
                } else {
                    HBoundary::Real(self.a / self.c)
                }
            }
            HBoundary::Real(x) => {
                let den = self.c * x + self.d;
                if den == T::zero() {
                    HBoundary::Infinity
                } else {
                    HBoundary::Real((self.a * x + self.b) / den)
                }
            }
        }
    }

    /// Argument of the derivative at `z`, i.e. the rotation applied to tangent directions.
    pub fn derivative_arg(&self, z: &HPoint<T>) -> T {
        let qr = self.c * z.re + self.d;
        let qi = self.c * z.im;
        -T::c(2.0) * qi.atan2(qr)
    }

    /// Largest absolute difference of entries, after matching projective signs.
    pub fn projective_distance(&self, other: &Self) -> T {
        let p = self.entries();
        let q = other.entries();
        let plus = (0..4).map(|k| (p[k] - q[k]).abs()).fold(T::zero(), T::max);
        let minus = (0..4).map(|k| (p[k] + q[k]).abs()).fold(T::zero(), T::max);
        plus.min(minus)
    }
}

impl<T: Scalar> Mul for Mobius<T> {
    type Output = Mobius<T>;

    fn mul(self, r: Mobius<T>) -> Mobius<T> {
        Mobius {
            a: self.a * r.a + self.b * r.c,
            b: self.a * r.b + self.b * r.d,
            c: self.c * r.a + self.d * r.c,
            d: self.c * r.b + self.d * r.d,
        }
        .canonical()
    }
}

/// Hyperbolic distance, `arccosh(1 + |z − w|²/(2 Im z Im w))` written as
/// `2 asinh(|z − w| / (2 √(Im z Im w)))` to avoid cancellation near zero.
pub fn dist<T: Scalar>(x: &HPoint<T>, y: &HPoint<T>) -> T {
    let e = (x.re - y.re).hypot(x.im - y.im);
    let two = T::c(2.0);
    two * (e / (two * (x.im * y.im).sqrt())).asinh()
}

/// `β_ξ(x, y)`, normalized so that `β_∞(i, 2i) = log 2`.
pub fn busemann<T: Scalar>(xi: &HBoundary<T>, x: &HPoint<T>, y: &HPoint<T>) -> T {
    match *xi {
        HBoundary::Infinity => y.im.ln() - x.im.ln(),
        HBoundary::Real(u) => {
            let rx = (x.re - u).hypot(x.im);
            let ry = (y.re - u).hypot(y.im);
            (y.im.ln() - x.im.ln()) - T::c(2.0) * (ry.ln() - rx.ln())
        }
    }
}

/// `ρ_z(x, y)` for interior points.
pub fn gromov_product<T: Scalar>(z: &HPoint<T>, x: &HPoint<T>, y: &HPoint<T>) -> T {
    ((dist(z, x) + dist(z, y) - dist(x, y)) / T::c(2.0)).max(T::zero())
}

/// `ρ_z(x, ξ) = (d(z, x) + β_ξ(z, x)) / 2`.
pub fn gromov_product_boundary<T: Scalar>(z: &HPoint<T>, x: &HPoint<T>, xi: &HBoundary<T>) -> T {
    ((dist(z, x) + busemann(xi, z, x)) / T::c(2.0)).max(T::zero())
}

/// `ρ_z(ξ, η) = −log(sin(θ/2))`, where `θ` is the visual angle at `z`.
/// Infinite when the two points coincide.
pub fn gromov_product_ends<T: Scalar>(z: &HPoint<T>, xi: &HBoundary<T>, eta: &HBoundary<T>) -> T {
    let m = Mobius::to_i(z);
    let p = disk_coordinate(&m.apply_boundary(xi));
    let q = disk_coordinate(&m.apply_boundary(eta));
    let chord = (p.0 - q.0).hypot(p.1 - q.1);
    if chord == T::zero() {
        return T::infinity();
    }
    (-(chord / T::c(2.0)).ln()).max(T::zero())
}

/// Image on the unit circle under `u ↦ (u − i)/(u + i)`.
fn disk_coordinate<T: Scalar>(u: &HBoundary<T>) -> (T, T) {
    match *u {
        HBoundary::Infinity => (T::one(), T::zero()),
        HBoundary::Real(x) => {
            let n = x * x + T::one();
            ((x * x - T::one()) / n, -T::c(2.0) * x / n)
        }
    }
}

/// Rotation about `i` that sends the unit-circle direction `(cx, cy)` (disk
/// model, centred at `i`) to `+1`, i.e. towards `∞`, composed after `pre`.
fn align_to_infinity<T: Scalar>(pre: Mobius<T>, cx: T, cy: T) -> Mobius<T> {
    // Rotation by angle 2θ about i acts on the disk as w ↦ e^{2iθ} w.
    let phi = cy.atan2(cx);
    let rot = Mobius::rotation_about_i(-phi / T::c(2.0));
    rot * pre
}

/// A geodesic segment or ray, carried to the imaginary axis by an isometry.
/// The start sits at `i` and the far end at `i·e^L` (or `∞` for a ray).
#[derive(Clone, Copy, Debug)]
pub struct Geodesic<T> {
    to_axis: Mobius<T>,
    from_axis: Mobius<T>,
    length: Option<T>,
}

impl<T: Scalar> Geodesic<T> {
    pub fn segment(x: &HPoint<T>, y: &HPoint<T>) -> Self {
        let pre = Mobius::to_i(x);
        let y1 = pre.apply(y);
        let len = dist(x, y);
        let to_axis = if len == T::zero() {
            pre
        } else {
            // Disk coordinate of y1 relative to i; only the direction matters.
            let n = y1.re * y1.re + (y1.im + T::one()) * (y1.im + T::one());
            let wx = (y1.re * y1.re + y1.im * y1.im - T::one()) / n;
            let wy = -T::c(2.0) * y1.re / n;
            align_to_infinity(pre, wx, wy)
        };
        Geodesic { to_axis, from_axis: to_axis.inverse(), length: Some(len) }
    }

    pub fn ray(x: &HPoint<T>, xi: &HBoundary<T>) -> Self {
        let pre = Mobius::to_i(x);
        let (cx, cy) = disk_coordinate(&pre.apply_boundary(xi));
        let to_axis = align_to_infinity(pre, cx, cy);
        Geodesic { to_axis, from_axis: to_axis.inverse(), length: None }
    }

    /// `None` for rays.
    pub fn length(&self) -> Option<T> {
        self.length
    }

    fn check(&self, t: T) -> Result<()> {
        let max = self.length.unwrap_or(T::infinity());
        if t < T::zero() || t > max || t.is_nan() {
            return Err(GeometryError::OutOfRange { t: t.to_f64_lossy(), len: max.to_f64_lossy() });
        }
        Ok(())
    }

    pub fn point_at(&self, t: T) -> Result<HPoint<T>> {
        self.check(t)?;
        Ok(self.from_axis.apply(&HPoint { re: T::zero(), im: t.exp() }))
    }

    /// Point together with the Euclidean angle of the unit tangent pointing forward.
    pub fn point_and_angle(&self, t: T) -> Result<(HPoint<T>, T)> {
        self.check(t)?;
        let w = HPoint { re: T::zero(), im: t.exp() };
        Ok((self.from_axis.apply(&w), T::FRAC_PI_2() + self.from_axis.derivative_arg(&w)))
    }

    /// Distance from `p` to the segment or ray (closed form).
    pub fn distance_to(&self, p: &HPoint<T>) -> T {
        let q = self.to_axis.apply(p);
        let h = q.abs2().sqrt();
        let start = HPoint::i();
        if h <= T::one() {
            return dist(&q, &start);
        }
        if let Some(len) = self.length {
            let top = len.exp();
            if h >= top {
                return dist(&q, &HPoint { re: T::zero(), im: top });
            }
        }
        (q.re.abs() / q.im).asinh()
    }
}

/// Distance from `p` to the geodesic segment `[x, y]`.
pub fn distance_to_segment<T: Scalar>(p: &HPoint<T>, x: &HPoint<T>, y: &HPoint<T>) -> T {
    Geodesic::segment(x, y).distance_to(p)
}

/// Distance from `p` to the geodesic ray `[x, ξ)`.
pub fn distance_to_ray<T: Scalar>(p: &HPoint<T>, x: &HPoint<T>, xi: &HBoundary<T>) -> T {
    Geodesic::ray(x, xi).distance_to(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(re: f64, im: f64) -> HPoint<f64> {
        HPoint::new(re, im).unwrap()
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(HPoint::new(0.0, 1e-13).is_err());
        assert!(HPoint::new(0.0, -1.0).is_err());
    }

    #[test]
    fn vertical_distance() {
        assert!((dist(&p(0.0, 1.0), &p(0.0, 2.0)) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn translate_distance_matches_arccosh() {
        let t = Mobius::new(1.0, 1.0, 0.0, 1.0).unwrap();
        let d = dist(&HPoint::i(), &t.apply(&HPoint::i()));
        assert!((d - 1.5f64.acosh()).abs() < 1e-14);
    }

    #[test]
    fn rotation_sign_convention() {
        // Rotation by 2θ about i acts on the disk as w ↦ e^{2iθ} w.
        let theta = 0.3;
        let r = Mobius::rotation_about_i(theta);
        let z = p(0.0, 3.0);
        let w = |z: HPoint<f64>| {
            let n = z.re * z.re + (z.im + 1.0).powi(2);
            ((z.re * z.re + z.im * z.im - 1.0) / n, -2.0 * z.re / n)
        };
        let (x0, y0) = w(z);
        let (x1, y1) = w(r.apply(&z));
        let a0 = y0.atan2(x0);
        let a1 = y1.atan2(x1);
        assert!((a1 - (a0 + 2.0 * theta)).abs() < 1e-12);
    }

    #[test]
    fn segment_frame_is_exact() {
        let x = p(-0.7, 0.2);
        let y = p(1.3, 2.5);
        let g = Geodesic::segment(&x, &y);
        let l = g.length().unwrap();
        assert!(dist(&g.point_at(0.0).unwrap(), &x) < 1e-10);
        assert!(dist(&g.point_at(l).unwrap(), &y) < 1e-9);
        let m = g.point_at(0.4 * l).unwrap();
        assert!((dist(&x, &m) - 0.4 * l).abs() < 1e-9);
    }

    #[test]
    fn ray_frame_heads_to_endpoint() {
        let x = p(0.3, 0.5);
        for xi in [HBoundary::Real(-2.0), HBoundary::Real(0.3), HBoundary::Infinity] {
            let g = Geodesic::ray(&x, &xi);
            let far = g.point_at(30.0).unwrap();
            match xi {
                HBoundary::Real(u) => assert!((far.re() - u).abs() < 1e-6 && far.im() < 1e-6),
                HBoundary::Infinity => assert!(far.im() > 1e6),
            }
        }
    }

    #[test]
    fn tangent_angle_vertical_and_circle() {
        let g = Geodesic::segment(&p(0.0, 1.0), &p(0.0, 5.0));
        let (_, a) = g.point_and_angle(0.5).unwrap();
        assert!((a - std::f64::consts::FRAC_PI_2).rem_euclid(2.0 * std::f64::consts::PI) < 1e-12);
        // On the unit semicircle from -1 towards +1 the top tangent points right.
        let g = Geodesic::ray(&p(0.0, 1.0), &HBoundary::Real(1.0));
        let (_, a) = g.point_and_angle(0.0).unwrap();
        assert!(a.sin().abs() < 1e-12 && a.cos() > 0.0);
    }

    #[test]
    fn boundary_gromov_product_of_axis_ends() {
        let v: f64 = gromov_product_ends(&HPoint::i(), &HBoundary::Real(0.0), &HBoundary::Infinity);
        assert!(v.abs() < 1e-12);
    }
}
