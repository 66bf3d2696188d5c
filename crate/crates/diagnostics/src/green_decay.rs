use std::collections::HashSet;

use hypdrift_groups::GroupAction;
use hypdrift_walk::{GreenOracle, WalkMeasure};
use serde::Serialize;

use crate::error::{DiagnosticsError, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreenDecayRow {
    pub label: String,
    pub norm: usize,
    pub green_distance: f64,
    /// `d_G(e, g)/‖g‖`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreenDecayCheck {
    pub band: (f64, f64),
    pub symmetric_measure: bool,
    pub rows: Vec<GreenDecayRow>,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub passes: bool,
}

/// Elements of word norm `1..=max_norm`, found breadth first, with their norms.
/// The identity is left out.
pub fn elements_by_norm<A: GroupAction>(action: &A, max_norm: usize, cap: usize) -> Result<Vec<(A::Elem, usize)>> {
    let e = action.identity();
    let mut seen: HashSet<A::Key> = HashSet::from([action.key(&e)]);
    let mut frontier = vec![e];
    let mut out = Vec::new();
    for norm in 1..=max_norm {
        let mut next = Vec::new();
        for g in &frontier {
            for s in action.generators() {
                let h = action.mul(g, &s.elem);
                if seen.insert(action.key(&h)) {
                    next.push(h);
                }
            }
        }
        out.extend(next.iter().cloned().map(|h| (h, norm)));
        if out.len() > cap {
            return Err(DiagnosticsError::Invalid(format!("more than {cap} elements within word norm {norm}")));
        }
        frontier = next;
    }
    Ok(out)
}

/// Ratios `d_G(e, g)/‖g‖`; passes when every ratio lies in `band`.
pub fn green_decay_check<A: GroupAction>(
    measure: &WalkMeasure<A>,
    green: &dyn GreenOracle<A>,
    elems: &[(A::Elem, usize)],
    band: (f64, f64),
) -> Result<GreenDecayCheck> {
    let action = measure.action();
    let rows: Vec<GreenDecayRow> = elems
        .iter()
        .filter(|(_, norm)| *norm > 0)
        .map(|(g, norm)| {
            let dg = green.green_metric(action, g)?;
            Ok(GreenDecayRow {
                label: action.normal_form(g).unwrap_or_else(|| format!("{g:?}")),
                norm: *norm,
                green_distance: dg,
                ratio: dg / *norm as f64,
            })
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(DiagnosticsError::Invalid("green decay needs elements of positive norm".into()));
    }
    let min_ratio = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let max_ratio = rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    Ok(GreenDecayCheck {
        band,
        symmetric_measure: measure.is_symmetric(),
        passes: min_ratio >= band.0 && max_ratio <= band.1,
        rows,
        min_ratio,
        max_ratio,
    })
}
