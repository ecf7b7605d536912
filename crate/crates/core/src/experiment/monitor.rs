use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::budget::{checked_binomial, Budget};
use crate::certify::{l1_certificate, Verdict};
use crate::error::{Error, Result};
use crate::oracle::{Oracle, SearchMethod};

/// An ℓ1 certificate that was issued and then checked against the oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonitorEntry {
    pub trial: u64,
    #[serde(rename = "L")]
    pub l: usize,
    pub epsilon: f64,
    pub t: usize,
    pub max_list: usize,
    pub witness: Vec<u8>,
    pub violation: bool,
}

/// Append-only log of certify-then-oracle checks shared by all trials.
#[derive(Debug)]
pub struct SoundnessMonitor {
    sparsities: Vec<usize>,
    subset_limit: u128,
    log: Mutex<Vec<MonitorEntry>>,
}

impl SoundnessMonitor {
    /// Checks exact ℓ1 certificates at each sparsity whose subset count is
    /// at most `subset_limit`.
    pub fn new(sparsities: Vec<usize>, subset_limit: u128) -> Self {
        Self {
            sparsities,
            subset_limit,
            log: Mutex::new(Vec::new()),
        }
    }

    /// Issues certificates for the oracle's code at `epsilon` and confirms
    /// every one that holds.
    pub fn check(&self, trial: u64, oracle: &Oracle<'_>, epsilon: f64, budget: &Budget) -> Result<()> {
        let code = oracle.code();
        let n_cols = oracle.codebook().len();
        for &l in &self.sparsities {
            if l == 0 || l > n_cols {
                continue;
            }
            if checked_binomial(n_cols as u128, l).is_none_or(|c| c > self.subset_limit) {
                continue;
            }
            let cert = l1_certificate(code, l, epsilon, budget)?;
            let Some(t) = cert.radius.filter(|_| cert.verdict == Verdict::Holds) else {
                continue;
            };
            let report = match oracle.worst_case(t, SearchMethod::Coset) {
                Ok(r) => r,
                Err(Error::SizeOverBudget { .. }) => continue,
                Err(e) => return Err(e),
            };
            let entry = MonitorEntry {
                trial,
                l,
                epsilon,
                t,
                max_list: report.max_list,
                witness: report.witness,
                violation: report.max_list > l - 1,
            };
            self.log.lock().expect("monitor lock").push(entry);
        }
        Ok(())
    }

    /// Entries sorted by trial, independent of completion order.
    pub fn entries(&self) -> Vec<MonitorEntry> {
        let mut v = self.log.lock().expect("monitor lock").clone();
        v.sort_by_key(|a| (a.trial, a.l));
        v
    }

    /// Fails with a diagnostic dump of every violation, if any.
    pub fn verify(&self) -> Result<serde_json::Value> {
        let entries = self.entries();
        let violations: Vec<_> = entries.iter().filter(|e| e.violation).collect();
        if !violations.is_empty() {
            let dump = serde_json::to_string_pretty(&violations)?;
            return Err(Error::SoundnessViolation(format!(
                "{} certified instance(s) refuted by the oracle:\n{dump}",
                violations.len()
            )));
        }
        Ok(serde_json::json!({
            "certificates_checked": entries.len(),
            "violations": 0,
            "sparsities": self.sparsities,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::LinearCode;

    #[test]
    fn confirms_and_logs() {
        let code = LinearCode::from_rows(2, &[vec![1, 1, 1, 1, 1]], 5).unwrap();
        let b = Budget::default();
        let oracle = Oracle::new(&code, b).unwrap();
        let m = SoundnessMonitor::new(vec![2], 1000);
        m.check(0, &oracle, 0.5, &b).unwrap();
        let summary = m.verify().unwrap();
        assert_eq!(summary["certificates_checked"], 1);
        assert_eq!(m.entries()[0].max_list, 1);
    }
}
