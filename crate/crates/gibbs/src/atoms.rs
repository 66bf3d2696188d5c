use std::io::Write;

use hypdrift_geometry::{distance_to_segment, Shadow};
use hypdrift_groups::{GroupAction, OrbitBall};
use serde::Serialize;

use crate::error::{GibbsError, Result};
use crate::potential::Potential;
use crate::pressure::fake_displacements;

/// Smallest admissible gap `s − v̂_F`.
pub const MIN_GAP: f64 = 0.02;

#[derive(Clone, Debug)]
pub struct GibbsAtom<E> {
    pub elem: E,
    /// Index of the element in the source ball.
    pub index: usize,
    pub displacement: f64,
    pub fake_distance: f64,
    pub weight: f64,
    pub mass: f64,
}

/// Atomic approximation `Q(s)⁻¹ Σ_g e^{d_F(o,go) − s·d(o,go)} δ_{go}` over an orbit ball.
#[derive(Clone, Debug)]
pub struct GibbsAtoms<E> {
    pub s: f64,
    pub v_f: f64,
    pub radius: f64,
    pub atoms: Vec<GibbsAtom<E>>,
    /// `Σ weights` over the ball.
    pub q: f64,
    /// Estimated weight beyond the ball.
    pub tail: f64,
    pub tail_fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtomSummary {
    pub s: f64,
    pub v_f: f64,
    pub radius: f64,
    pub atoms: usize,
    pub q: f64,
    pub tail: f64,
    pub tail_fraction: f64,
}

impl<E> GibbsAtoms<E> {
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }

    pub fn summary(&self) -> AtomSummary {
        AtomSummary {
            s: self.s,
            v_f: self.v_f,
            radius: self.radius,
            atoms: self.atoms.len(),
            q: self.q,
            tail: self.tail,
            tail_fraction: self.tail_fraction,
        }
    }
}

/// Builds the atoms at parameter `s` given the fitted pressure `v_f`.
///
/// The tail beyond the ball is estimated from the annulus sums
/// `a_n = Σ_{n−1 < d ≤ n} e^{d_F − v̂_F·d}` over the outer half of the ball:
/// `tail = max a_n · Σ_{n > R} e^{(v̂_F − s)n}`. Errors when the tail exceeds
/// `max_tail_fraction` of `Q + tail`.
pub fn patterson_atoms<A: GroupAction>(
    action: &A,
    ball: &OrbitBall<A>,
    f: &Potential,
    s: f64,
    v_f: f64,
    max_tail_fraction: f64,
) -> Result<GibbsAtoms<A::Elem>> {
    if !ball.is_complete() {
        return Err(GibbsError::IncompleteBall);
    }
    if s < v_f + MIN_GAP - 1e-12 {
        return Err(GibbsError::ParameterTooSmall { s, min: v_f + MIN_GAP });
    }
    let fake = fake_displacements(action, ball, f)?;
    let mut atoms: Vec<GibbsAtom<A::Elem>> = ball
        .entries()
        .iter()
        .zip(&fake)
        .enumerate()
        .map(|(index, (e, &df))| GibbsAtom {
            elem: e.elem.clone(),
            index,
            displacement: e.displacement,
            fake_distance: df,
            weight: (df - s * e.displacement).exp(),
            mass: 0.0,
        })
        .collect();
    let q: f64 = atoms.iter().map(|a| a.weight).sum();
    for a in &mut atoms {
        a.mass = a.weight / q;
    }

    let top = (ball.radius() + 1e-9).floor() as usize;
    let mut annuli = vec![0.0; top + 1];
    for a in &atoms {
        let n = (a.displacement - 1e-9).ceil().max(0.0) as usize;
        if n <= top {
            annuli[n] += (a.fake_distance - v_f * a.displacement).exp();
        }
    }
    let from = (top / 2).max(1);
    let shell_constant = annuli[from..=top].iter().copied().fold(0.0, f64::max);
    let eps = s - v_f;
    let tail = shell_constant * (-eps * (top as f64 + 1.0)).exp() / (1.0 - (-eps).exp());
    let tail_fraction = tail / (q + tail);
    if tail_fraction > max_tail_fraction {
        return Err(GibbsError::TailTooHeavy { fraction: tail_fraction, allowed: max_tail_fraction });
    }
    Ok(GibbsAtoms { s, v_f, radius: ball.radius(), atoms, q, tail, tail_fraction })
}

/// Normalized mass of the atoms `h·o` whose geodesic from `o` passes within
/// `r` of the shadow target.
pub fn gibbs_shadow_mass<A: GroupAction>(action: &A, atoms: &GibbsAtoms<A::Elem>, shadow: &Shadow) -> Result<f64> {
    let o = action.basepoint();
    if shadow.source() != &o {
        return Err(hypdrift_geometry::GeometryError::ModelMismatch.into());
    }
    let r = shadow.radius();
    let mut mass = 0.0;
    for a in &atoms.atoms {
        let p = action.orbit_point(&a.elem);
        if distance_to_segment(shadow.target(), &o, &p)? <= r + 1e-9 {
            mass += a.mass;
        }
    }
    Ok(mass)
}

/// CSV with header `element,displacement,fake_distance,weight,normalized_mass`.
pub fn write_atoms_csv<A: GroupAction, W: Write>(action: &A, ball: &OrbitBall<A>, atoms: &GibbsAtoms<A::Elem>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["element", "displacement", "fake_distance", "weight", "normalized_mass"])?;
    for a in &atoms.atoms {
        w.write_record([
            ball.word(action, a.index),
            format!("{:.12}", a.displacement),
            format!("{:.12}", a.fake_distance),
            format!("{:.12e}", a.weight),
            format!("{:.12e}", a.mass),
        ])?;
    }
    w.flush()?;
    Ok(())
}
