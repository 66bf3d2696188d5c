use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use hypdrift_diagnostics::{
    DeviationReport, DeviationTail, EntropyReport, GreenDecayCheck, InequalityReport, RatioTable,
};
use hypdrift_gibbs::{AtomSummary, PressureFit};
use serde::Serialize;

use crate::config::{ExperimentConfig, Expectations};
use crate::error::{CliError, Result};

/// Version of the report layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    /// The verdict was inconclusive or an estimator failed.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PressureSection {
    pub ball_size: usize,
    pub window: (f64, f64),
    pub fit: PressureFit,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Results {
    pub potential: String,
    pub measure: Vec<(String, f64)>,
    pub symmetric_measure: bool,
    pub pressure: PressureSection,
    pub inequality: Option<InequalityReport>,
    pub deviation: Option<DeviationReport>,
    pub tails: Option<DeviationTail>,
    pub atoms: Option<AtomSummary>,
    pub ratios: Option<RatioTable>,
    pub green_decay: Option<GreenDecayCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub config_fingerprint: String,
    pub modules: BTreeMap<&'static str, &'static str>,
    pub config: ExperimentConfig,
    pub status: Status,
    pub results: Results,
    pub checks: Vec<Check>,
    /// Unix seconds; the only field allowed to differ between identical runs.
    pub generated_at: u64,
}

pub fn module_versions() -> BTreeMap<&'static str, &'static str> {
    BTreeMap::from([
        ("hypdrift-cli", env!("CARGO_PKG_VERSION")),
        ("hypdrift-diagnostics", hypdrift_diagnostics::VERSION),
        ("hypdrift-geometry", hypdrift_geometry::VERSION),
        ("hypdrift-gibbs", hypdrift_gibbs::VERSION),
        ("hypdrift-groups", hypdrift_groups::VERSION),
        ("hypdrift-stats", hypdrift_stats::VERSION),
        ("hypdrift-walk", hypdrift_walk::VERSION),
    ])
}

impl Report {
    pub fn new(config: &ExperimentConfig, status: Status, results: Results, checks: Vec<Check>) -> Self {
        let mut config = config.clone();
        config.out = None;
        let generated_at = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            config_fingerprint: config.fingerprint(),
            modules: module_versions(),
            config,
            status,
            results,
            checks,
            generated_at,
        }
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Writes `report.json` and one CSV per present section into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        let path = dir.join("report.json");
        std::fs::write(&path, self.to_json() + "\n").map_err(|e| io_err(&path, e))?;

        let r = &self.results;
        write_csv(dir, "shells.csv", &r.pressure.fit.shells)?;
        if let Some(ineq) = &r.inequality {
            if let Some(d) = &ineq.drift {
                let rows = [("n/2", d.half.clone()), ("n", d.estimate.clone())].map(|(at, e)| EstimateRow::new(at, e));
                write_csv(dir, "drift.csv", &rows)?;
            }
            let convolution = [&ineq.entropy, &ineq.entropy_check].into_iter().find_map(|e| match e {
                Some(EntropyReport::ExactConvolution(c)) => Some(c),
                _ => None,
            });
            if let Some(c) = convolution {
                let rows: Vec<EntropyRow> = c
                    .per_step
                    .iter()
                    .zip(&c.increments)
                    .enumerate()
                    .map(|(i, (&per_step, &increment))| EntropyRow { n: i + 1, per_step, increment })
                    .collect();
                write_csv(dir, "entropy.csv", &rows)?;
            }
            if !ineq.buckets.is_empty() {
                write_csv(dir, "buckets.csv", &ineq.buckets)?;
            }
        }
        if let Some(d) = &r.deviation {
            write_csv(dir, "deviation.csv", &d.rows)?;
        }
        if let Some(t) = &r.tails {
            write_csv(dir, "tails.csv", &t.points)?;
        }
        if let Some(t) = &r.ratios {
            let rows: Vec<RatioCsvRow> = t.rows.iter().map(RatioCsvRow::from).collect();
            write_csv(dir, "ratios.csv", &rows)?;
        }
        if let Some(g) = &r.green_decay {
            write_csv(dir, "green_decay.csv", &g.rows)?;
        }
        Ok(())
    }
}

/// Strips the timestamp line so two report files can be compared.
pub fn without_timestamp(json: &str) -> String {
    json.lines().filter(|l| !l.trim_start().starts_with("\"generated_at\"")).collect::<Vec<_>>().join("\n")
}

fn io_err(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io { path: path.to_path_buf(), source }
}

fn write_csv<T: Serialize>(dir: &Path, name: &str, rows: &[T]) -> Result<()> {
    let path = dir.join(name);
    let file = File::create(&path).map_err(|e| io_err(&path, e))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    for row in rows {
        w.serialize(row)?;
    }
    w.into_inner().map_err(|e| io_err(&path, e.into_error()))?.flush().map_err(|e| io_err(&path, e))
}

#[derive(Serialize)]
struct EstimateRow {
    at: &'static str,
    value: f64,
    stderr: f64,
    n_samples: u64,
}

impl EstimateRow {
    fn new(at: &'static str, e: hypdrift_stats::Estimate) -> Self {
        EstimateRow { at, value: e.value, stderr: e.stderr, n_samples: e.n_samples }
    }
}

#[derive(Serialize)]
struct EntropyRow {
    n: usize,
    per_step: f64,
    increment: f64,
}

#[derive(Serialize)]
struct RatioCsvRow {
    n: usize,
    targets: usize,
    median_phi: f64,
    mean_phi: f64,
    mean_phi_stderr: f64,
    p_above_half: f64,
    median_psi: f64,
    psi_over_n: f64,
    cesaro_psi_over_n: f64,
    low_hits: usize,
    unbounded: usize,
    low_confidence: bool,
}

impl From<&hypdrift_diagnostics::RatioRow> for RatioCsvRow {
    fn from(r: &hypdrift_diagnostics::RatioRow) -> Self {
        RatioCsvRow {
            n: r.n,
            targets: r.targets,
            median_phi: r.median_phi,
            mean_phi: r.mean_phi.value,
            mean_phi_stderr: r.mean_phi.stderr,
            p_above_half: level(r, 0.5).unwrap_or(f64::NAN),
            median_psi: r.median_psi,
            psi_over_n: r.psi_over_n.value,
            cesaro_psi_over_n: r.cesaro_psi_over_n.value,
            low_hits: r.low_hits,
            unbounded: r.unbounded,
            low_confidence: r.low_confidence,
        }
    }
}

fn level(row: &hypdrift_diagnostics::RatioRow, c: f64) -> Option<f64> {
    row.above.iter().find(|l| l.c == c).map(|l| l.probability)
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.into(), passed, detail }
}

fn missing(name: &str, section: &str) -> Check {
    check(name, false, format!("no {section} section in the results"))
}

/// Evaluates the expectations. The Guivarc'h bound is checked whenever the
/// inequality section ran.
pub fn evaluate_checks(expect: &Expectations, r: &Results) -> Vec<Check> {
    let mut out = Vec::new();
    if let Some(ineq) = &r.inequality {
        let holds = ineq.guivarch_holds == Some(true);
        out.push(check("guivarch-bound", holds, format!("{:?}", ineq.guivarch_holds)));
    }
    if let Some(want) = expect.verdict {
        out.push(match &r.inequality {
            Some(ineq) => check(
                "verdict",
                ineq.verdict == want,
                format!("{:?} (gap {:?} ± {:?})", ineq.verdict, ineq.gap, ineq.gap_stderr),
            ),
            None => missing("verdict", "inequality"),
        });
    }
    if let Some(max) = expect.max_deviation {
        out.push(match &r.deviation {
            Some(d) => check("max-deviation", d.max_abs_deviation <= max, format!("{:e} ≤ {max:e}", d.max_abs_deviation)),
            None => missing("max-deviation", "deviation"),
        });
    }
    if let Some(max) = expect.max_tail_slope {
        out.push(match &r.tails {
            Some(t) => {
                let slope = t.fit.map(|f| f.slope);
                let passed = t.strictly_decreasing() && slope.is_some_and(|s| s <= max);
                check("tail-decay", passed, format!("slope {slope:?} ≤ {max}, decreasing {}", t.strictly_decreasing()))
            }
            None => missing("tail-decay", "tails"),
        });
    }
    if expect.green_decay_passes {
        out.push(match &r.green_decay {
            Some(g) => check("green-decay", g.passes, format!("ratios in [{:.3}, {:.3}], band {:?}", g.min_ratio, g.max_ratio, g.band)),
            None => missing("green-decay", "green_decay"),
        });
    }
    if let Some(min) = expect.min_phi_above_half {
        out.push(match &r.ratios {
            Some(t) => {
                let probs: Vec<f64> = t.rows.iter().map(|row| level(row, 0.5).unwrap_or(0.0)).collect();
                let passed = !probs.is_empty() && probs.iter().all(|&p| p >= min);
                check("phi-bounded-below", passed, format!("P(phi ≥ 0.5) = {probs:?} ≥ {min}"))
            }
            None => missing("phi-bounded-below", "ratios"),
        });
    }
    if expect.median_phi_decreasing {
        out.push(match &r.ratios {
            Some(t) => {
                let medians: Vec<f64> = t.rows.iter().map(|row| row.median_phi).collect();
                let passed = medians.len() >= 2 && medians.windows(2).all(|w| w[1] < w[0]);
                check("phi-median-decreasing", passed, format!("medians {medians:?}"))
            }
            None => missing("phi-median-decreasing", "ratios"),
        });
    }
    out
}
