//! Run configuration shared by `run-suite` and the acceptance target.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::error::CliError;

/// Default per-step coordinate budget of the shrinking step in `rhm`.
pub const RHM_BUDGET: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Compacts in the `regsets-oracle` corpus.
    pub corpus_size: usize,
    /// Cover depth for `rnotshm` and `rhm`.
    pub max_depth: usize,
    /// Longest label `s` in `rnotshm` and `rhm`.
    pub max_label_len: usize,
    /// Per-operation budgets, by name (`rhm`).
    pub budgets: BTreeMap<String, u64>,
    /// Unknown answers tolerated before exit code 3.
    pub max_unknown: u64,
    pub out: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            corpus_size: 1000,
            max_depth: 6,
            max_label_len: 2,
            budgets: BTreeMap::from([("rhm".to_string(), RHM_BUDGET)]),
            max_unknown: 0,
            out: None,
        }
    }
}

impl SuiteConfig {
    pub fn budget(&self, op: &str) -> u64 {
        self.budgets.get(op).copied().unwrap_or(RHM_BUDGET)
    }

    /// Applies `op=n` overrides.
    pub fn set_budgets<S: AsRef<str>>(&mut self, specs: &[S]) -> Result<(), CliError> {
        for spec in specs {
            let spec = spec.as_ref();
            let (op, n) = spec.split_once('=').ok_or_else(|| CliError::Budget(spec.to_string()))?;
            let n = n.trim().parse().map_err(|_| CliError::Budget(spec.to_string()))?;
            self.budgets.insert(op.trim().to_string(), n);
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.corpus_size == 0 || self.max_depth == 0 {
            return Err(CliError::Config("counts must be positive".into()));
        }
        Ok(())
    }
}
