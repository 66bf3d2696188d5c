//! Text for `list` and `describe`.

use std::fmt::Write;

use hypdrift_geometry::Isometry;
use hypdrift_groups::{FreeGroup, GroupAction, ModularGroup, SchottkyGroup};

use crate::builtin::{builtin, builtins};
use crate::error::{CliError, Result};

const ACTIONS: [(&str, &str); 3] = [
    ("free(k)", "free group F_k on its 2k-regular tree; {\"kind\": \"free\", \"rank\": k}"),
    ("schottky", "Schottky group on the upper half-plane; {\"kind\": \"schottky\", \"lambda\": 3.0, \"theta\": 0.785}"),
    ("modular", "PSL(2,Z) on the upper half-plane, generated by S and T; {\"kind\": \"modular\"}"),
];

const MEASURES: [(&str, &str); 2] = [
    ("uniform", "equal weight on each generator and its inverse; {\"kind\": \"uniform\"}"),
    ("weights", "finitely supported, words with weights; {\"kind\": \"weights\", \"weights\": [[\"a\", 0.4], ...]}"),
];

const POTENTIALS: [(&str, &str); 3] = [
    ("zero", "F = 0; {\"kind\": \"zero\"}"),
    ("constant", "F = c; {\"kind\": \"constant\", \"c\": 1.0}"),
    ("bump", "F(z) = A exp(-d(z, orbit)^2), plane actions only; {\"kind\": \"bump\", \"amplitude\": 0.3}"),
];

fn table(rows: impl IntoIterator<Item = (String, String)>) -> String {
    let rows: Vec<(String, String)> = rows.into_iter().collect();
    let width = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
    rows.iter().fold(String::new(), |mut out, (n, d)| {
        let _ = writeln!(out, "{n:<width$}  {d}");
        out
    })
}

fn pairs(rows: &[(&str, &str)]) -> Vec<(String, String)> {
    rows.iter().map(|(n, d)| (n.to_string(), d.to_string())).collect()
}

/// `list actions|measures|potentials|configs`.
pub fn list(kind: &str) -> Result<String> {
    Ok(match kind {
        "actions" => table(pairs(&ACTIONS)),
        "measures" => table(pairs(&MEASURES)),
        "potentials" => table(pairs(&POTENTIALS)),
        "configs" => table(builtins().into_iter().map(|c| (c.name, c.description))),
        _ => return Err(CliError::Unknown { kind: "list kind", name: kind.into() }),
    })
}

fn generators<A: GroupAction>(action: &A) -> String {
    let mut out = format!("{}\n", action.name());
    for g in action.generators() {
        let _ = match action.isometry(&g.elem) {
            Isometry::Plane(m) => {
                let [a, b, c, d] = m.entries().map(|x| x + 0.0);
                writeln!(out, "  {}  [[{a}, {b}], [{c}, {d}]]", g.symbol)
            }
            Isometry::Tree(w) => writeln!(out, "  {}  {w}", g.symbol),
        };
    }
    out
}

fn lookup(rows: &[(&str, &str)], name: &str) -> Option<String> {
    rows.iter().find(|(n, _)| *n == name).map(|(n, d)| format!("{n}: {d}\n"))
}

/// Details for an action, measure, potential or builtin config.
pub fn describe(name: &str) -> Result<String> {
    match name {
        "modular" => return Ok(generators(&ModularGroup::new())),
        "schottky" => return Ok(generators(&SchottkyGroup::default())),
        "free" | "free(k)" => return Ok(generators(&FreeGroup::new(2)?)),
        _ => {}
    }
    if let Some(text) = lookup(&MEASURES, name).or_else(|| lookup(&POTENTIALS, name)) {
        return Ok(text);
    }
    match builtin(name) {
        Ok(config) => Ok(serde_json::to_string_pretty(&config)? + "\n"),
        Err(CliError::Unknown { .. }) => Err(CliError::Unknown { kind: "name", name: name.into() }),
        Err(e) => Err(e),
    }
}
