//! The acceptance blocks, by name, and their exit classes.

use std::path::Path;

use zomega::certificate::Record;
use zomega::suite::{coding, k0, mincompl, regsets, rhm, rnotshm, translate, Report};

use crate::config::SuiteConfig;
use crate::error::CliError;
use crate::store;

/// Suite names in criterion order.
pub const SUITES: [&str; 8] = ["regsets-oracle", "coding", "heights", "k0", "translateapart", "rnotshm", "rhm", "mincompl"];

/// Failures listed per suite in its certificate file.
const LISTED_FAILURES: usize = 50;

pub fn criterion(name: &str) -> Option<usize> {
    SUITES.iter().position(|s| *s == name).map(|i| i + 1)
}

/// Runs one named block.
pub fn run_one(name: &str, cfg: &SuiteConfig) -> Result<Report, CliError> {
    let seed = cfg.seed;
    let report = match name {
        "regsets-oracle" => regsets::run(seed, cfg.corpus_size),
        "coding" => coding::run(seed, 3, 8, 50),
        "heights" => coding::run_heights(4, 6, 12),
        "k0" => {
            let mut r = k0::run(12, 8, 3, 5);
            r.absorb(k0::run_clopen(10, 2, 3, 5));
            r
        }
        "translateapart" => translate::run(seed, 200, 200, 100, 100),
        "rnotshm" => rnotshm::run(seed, 20, cfg.max_depth, cfg.max_label_len, 3, 3, 200),
        "rhm" => rhm::run(seed, 10, cfg.max_label_len, 3, cfg.max_depth, cfg.budget("rhm")),
        "mincompl" => mincompl::run(seed, 200, 20, 10),
        other => return Err(CliError::UnknownSuite(other.to_string())),
    };
    Ok(report)
}

/// Names selected by `name`, which may be `all`.
pub fn select(name: &str) -> Result<Vec<&'static str>, CliError> {
    if name == "all" {
        return Ok(SUITES.to_vec());
    }
    SUITES
        .iter()
        .find(|s| **s == name)
        .map(|s| vec![*s])
        .ok_or_else(|| CliError::UnknownSuite(name.to_string()))
}

/// 2 for oracle mismatches, 1 for other failures, 3 for too many unknowns.
pub fn exit_class(r: &Report, cfg: &SuiteConfig) -> u8 {
    if r.mismatches > 0 {
        2
    } else if !r.failures.is_empty() {
        1
    } else if r.unknown > cfg.max_unknown {
        3
    } else {
        0
    }
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

fn summary(name: &str, r: &Report, cfg: &SuiteConfig) -> Record {
    let verdict = if exit_class(r, cfg) == 0 { "PASS" } else { "FAIL" };
    Record::summary(&[
        ("suite", name.to_string()),
        ("criterion", criterion(name).map(|c| c.to_string()).unwrap_or_default()),
        ("verdict", verdict.to_string()),
        ("seed", cfg.seed.to_string()),
        ("checks", r.checks.to_string()),
        ("failures", r.failures.len().to_string()),
        ("mismatches", r.mismatches.to_string()),
        ("unknown", r.unknown.to_string()),
        ("records", r.records.len().to_string()),
    ])
}

/// The file body for one suite: its summary, notes, listed failures, then
/// the evidence records.
pub fn records_for(name: &str, r: &Report, cfg: &SuiteConfig) -> Vec<Record> {
    let mut out = vec![summary(name, r, cfg)];
    out.extend(r.notes.iter().map(|n| Record::summary(&[("suite", name.to_string()), ("note", clean(n))])));
    out.extend(
        r.failures
            .iter()
            .take(LISTED_FAILURES)
            .map(|f| Record::summary(&[("suite", name.to_string()), ("failure", clean(f))])),
    );
    out.extend(r.records.iter().cloned());
    out
}

/// Outcome of `run-suite`.
#[derive(Debug)]
pub struct RunOutcome {
    pub reports: Vec<(&'static str, Report)>,
    pub exit: u8,
}

/// Runs the selected blocks, writing `<suite>.cert` files when `cfg.out`
/// is set. The exit code is the most severe class seen, ranking 2 above 1
/// above 3.
pub fn run_suite(name: &str, cfg: &SuiteConfig, mut progress: impl FnMut(&str, &Report)) -> Result<RunOutcome, CliError> {
    cfg.validate()?;
    let names = select(name)?;
    let mut reports = Vec::new();
    for n in names {
        let r = run_one(n, cfg)?;
        if let Some(dir) = &cfg.out {
            store::write_file(dir, n, &records_for(n, &r, cfg))?;
        }
        progress(n, &r);
        reports.push((n, r));
    }
    let rank = |c: u8| match c {
        2 => 3,
        1 => 2,
        3 => 1,
        _ => 0,
    };
    let exit = reports.iter().map(|(_, r)| exit_class(r, cfg)).max_by_key(|&c| rank(c)).unwrap_or(0);
    Ok(RunOutcome { reports, exit })
}

/// Exit code of `verify`: 0 when every record checks, 2 otherwise.
pub fn verify_exit(dir: &Path) -> Result<(store::VerifyReport, u8), CliError> {
    let report = store::verify_dir(dir)?;
    let code = if report.ok() { 0 } else { 2 };
    Ok((report, code))
}
