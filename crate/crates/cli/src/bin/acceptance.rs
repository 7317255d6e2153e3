//! Runs acceptance criteria 1–9 and prints one PASS/FAIL line for each.
//!
//! Criteria 1–8 are the named suites with seed 7. Criterion 9 repeats the
//! full run into a second directory, compares the two byte for byte,
//! verifies the first, and then checks that single-byte corruptions are
//! rejected with exit code 2.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use zomega_cli::suites::{self, exit_class, SUITES};
use zomega_cli::SuiteConfig;

/// Byte positions corrupted in each certificate file: first, middle, a
/// checksum digit, and the final newline.
fn positions(len: usize) -> Vec<usize> {
    let mut v = vec![0, len / 2, len.saturating_sub(2), len.saturating_sub(1)];
    v.sort_unstable();
    v.dedup();
    v
}

fn files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .map(|rd| rd.filter_map(|e| e.ok().map(|e| e.path())).collect())
        .unwrap_or_default();
    v.sort();
    v
}

fn same_tree(a: &Path, b: &Path) -> Result<(), String> {
    let (fa, fb) = (files(a), files(b));
    let names = |v: &[PathBuf]| v.iter().map(|p| p.file_name().map(|n| n.to_owned())).collect::<Vec<_>>();
    if names(&fa) != names(&fb) {
        return Err("file lists differ".into());
    }
    for (x, y) in fa.iter().zip(&fb) {
        if fs::read(x).ok() != fs::read(y).ok() {
            return Err(format!("{} differs", x.display()));
        }
    }
    Ok(())
}

/// Each corrupted file is verified alone: verification treats files
/// independently, so a rejected file means a rejected directory.
fn corruption_rejected(dir: &Path, scratch: &Path) -> Result<usize, String> {
    let mut tried = 0;
    for path in files(dir) {
        let bytes = fs::read(&path).map_err(|e| e.to_string())?;
        for pos in positions(bytes.len()) {
            let _ = fs::remove_dir_all(scratch);
            fs::create_dir_all(scratch).map_err(|e| e.to_string())?;
            let mut bad = bytes.clone();
            bad[pos] = if bad[pos] == b'0' { b'1' } else { b'0' };
            fs::write(scratch.join(path.file_name().expect("file")), &bad).map_err(|e| e.to_string())?;
            let (_, code) = suites::verify_exit(scratch).map_err(|e| e.to_string())?;
            if code != 2 {
                return Err(format!("{} with byte {pos} changed: exit {code}", path.display()));
            }
            tried += 1;
        }
    }
    Ok(tried)
}

fn criterion9(first: &Path, work: &Path, cfg: &SuiteConfig) -> Result<String, String> {
    let second = work.join("second");
    let again = SuiteConfig { out: Some(second.clone()), ..cfg.clone() };
    suites::run_suite("all", &again, |_, _| {}).map_err(|e| e.to_string())?;
    same_tree(first, &second)?;
    let (report, code) = suites::verify_exit(first).map_err(|e| e.to_string())?;
    if code != 0 {
        return Err(format!("verify exit {code}: {:?}", report.rejected.first()));
    }
    let tried = corruption_rejected(first, &work.join("scratch"))?;
    Ok(format!("files={} records={} corruptions={tried}", report.files, report.records))
}

fn main() -> ExitCode {
    let work = std::env::temp_dir().join(format!("zomega-acceptance-{}", std::process::id()));
    let _ = fs::remove_dir_all(&work);
    let first = work.join("first");
    let cfg = SuiteConfig { out: Some(first.clone()), ..SuiteConfig::default() };

    let mut all_pass = true;
    let mut line = |n: usize, name: &str, ok: bool, detail: String| {
        all_pass &= ok;
        println!("criterion {n} {name}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    };
    match suites::run_suite("all", &cfg, |_, _| {}) {
        Ok(outcome) => {
            for (i, (name, r)) in outcome.reports.iter().enumerate() {
                let ok = exit_class(r, &cfg) == 0;
                let detail = format!("checks={} failures={} unknown={}", r.checks, r.failures.len(), r.unknown);
                line(i + 1, name, ok, detail);
                for f in r.failures.iter().take(5) {
                    eprintln!("  {name}: {f}");
                }
            }
        }
        Err(e) => {
            for (i, name) in SUITES.iter().enumerate() {
                line(i + 1, name, false, e.to_string());
            }
        }
    }
    match criterion9(&first, &work, &cfg) {
        Ok(detail) => line(9, "reproducibility", true, detail),
        Err(e) => line(9, "reproducibility", false, e),
    }
    let _ = fs::remove_dir_all(&work);
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
