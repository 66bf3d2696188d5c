use std::fmt::Write;
use std::path::Path;

use hypdrift_walk::derive_seed;

use crate::builtin::builtins;
use crate::error::Result;
use crate::report::Report;
use crate::runner::run_experiment;

pub struct SuiteOutcome {
    pub reports: Vec<Report>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(Report::all_checks_pass)
    }

    /// One line per check, grouped by config.
    pub fn table(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            for c in &r.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{mark}  {:<22} {:<22} {}", r.config.name, c.name, c.detail);
            }
        }
        let total: usize = self.reports.iter().map(|r| r.checks.len()).sum();
        let failed: usize = self.reports.iter().map(|r| r.checks.iter().filter(|c| !c.passed).count()).sum();
        let _ = writeln!(out, "{} of {total} checks passed", total - failed);
        out
    }
}

/// Runs every builtin config into `out/<name>/`. A master seed replaces each
/// config's seed with one derived from the master and the config name.
pub fn run_suite(out: &Path, master_seed: Option<u64>) -> Result<SuiteOutcome> {
    let mut reports = Vec::new();
    for mut config in builtins() {
        if let Some(m) = master_seed {
            config.seed = derive_seed(m, &config.name);
        }
        let report = run_experiment(&config)?;
        report.write(&out.join(&config.name))?;
        reports.push(report);
    }
    Ok(SuiteOutcome { reports })
}
