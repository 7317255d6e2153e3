//! Certificate files: one record per line, each sealed with the SHA-256 of
//! its canonical text.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use zomega::certificate::Record;

use crate::error::CliError;

const SEAL: &str = "\tsha256=";
pub const EXTENSION: &str = "cert";

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// `record` followed by its checksum.
pub fn seal(record: &Record) -> String {
    let text = record.to_string();
    let sum = digest(&text);
    format!("{text}{SEAL}{sum}")
}

/// Checks the checksum and parses the record.
pub fn unseal(line: &str) -> Result<Record, String> {
    let (text, sum) = line.rsplit_once(SEAL).ok_or("missing checksum")?;
    if digest(text) != sum {
        return Err("checksum mismatch".into());
    }
    text.parse().map_err(|e: zomega::Error| e.to_string())
}

/// Writes `records` to `dir/name.cert`, replacing any previous file.
pub fn write_file(dir: &Path, name: &str, records: &[Record]) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(format!("{name}.{EXTENSION}"));
    let mut body = String::new();
    for r in records {
        body.push_str(&seal(r));
        body.push('\n');
    }
    fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub files: usize,
    pub records: usize,
    /// `file:line: reason` for every rejected line.
    pub rejected: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.rejected.is_empty()
    }
}

fn check_line(line: &str) -> Result<(), String> {
    let record = unseal(line)?;
    match record.verify() {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("{} record does not verify", record.kind.tag())),
        Err(e) => Err(format!("{} record: {e}", record.kind.tag())),
    }
}

/// Re-verifies every record of every `.cert` file under `dir`.
pub fn verify_dir(dir: &Path) -> Result<VerifyReport, CliError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == EXTENSION))
        .collect();
    paths.sort();
    let mut report = VerifyReport::default();
    for path in paths {
        report.files += 1;
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let bytes = fs::read(&path).map_err(|e| CliError::io(&path, e))?;
        let Ok(text) = String::from_utf8(bytes) else {
            report.rejected.push(format!("{name}: not UTF-8"));
            continue;
        };
        let Some(body) = text.strip_suffix('\n') else {
            if !text.is_empty() {
                report.rejected.push(format!("{name}: missing final newline"));
            }
            continue;
        };
        let lines: Vec<&str> = body.split('\n').collect();
        report.records += lines.len();
        let bad: Vec<String> = lines
            .par_iter()
            .enumerate()
            .filter_map(|(i, line)| check_line(line).err().map(|e| format!("{name}:{}: {e}", i + 1)))
            .collect();
        report.rejected.extend(bad);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seals_detect_edits() {
        let r = Record::summary(&[("suite", "demo".into()), ("checks", "3".into())]);
        let line = seal(&r);
        assert_eq!(unseal(&line).unwrap(), r);
        let edited = line.replacen("3", "4", 1);
        assert!(unseal(&edited).is_err());
        assert!(unseal("summary\tsuite=demo").is_err());
    }
}
