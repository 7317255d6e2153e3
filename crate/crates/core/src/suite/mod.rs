//! Composed verification suites.
//!
//! Each suite runs a seeded family of checks and returns a [`Report`] that
//! counts the checks performed and records every failure verbatim.

use std::fmt;

use crate::certificate::Record;

pub mod coding;
pub mod k0;
pub mod mincompl;
pub mod regsets;
pub mod rhm;
pub mod rnotshm;
pub mod translate;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checks: u64,
    pub unknown: u64,
    /// Failed comparisons against an independent oracle, also listed in
    /// `failures`.
    pub mismatches: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(name: &str) -> Self {
        Report { name: name.to_string(), ..Default::default() }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Like [`check`](Self::check), for agreement with an oracle.
    pub fn oracle(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.mismatches += 1;
        }
        self.check(ok, what);
    }

    pub fn record(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.unknown == 0
    }

    pub fn absorb(&mut self, other: Report) {
        self.checks += other.checks;
        self.unknown += other.unknown;
        self.mismatches += other.mismatches;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
        self.records.extend(other.records);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {} checks={} failures={} unknown={}",
            self.name,
            self.checks,
            self.failures.len(),
            self.unknown
        )
    }
}
