//! Work limits for every exhaustive routine.
//!
//! All brute-force operations check the relevant limit before doing any work
//! and return [`Error::SizeOverBudget`] instead of running away.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on enumerated codewords (q^k) and on enumerated words (q^n).
pub const DEFAULT_ENUMERATION: u128 = 1 << 24;
/// Default cap on enumerated L-subsets of columns.
pub const DEFAULT_SUBSETS: u128 = 10_000_000;
/// Default cap on cosets visited by the coset method.
pub const DEFAULT_COSETS: u128 = 1 << 24;
/// Default cap on stored generator entries k * n.
pub const DEFAULT_GENERATOR_ENTRIES: u128 = 1 << 28;
/// Default cap on codeword/word distance evaluations in one oracle call.
pub const DEFAULT_DISTANCE_EVALS: u128 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of codewords q^k that may be enumerated.
    pub codewords: u128,
    /// Maximum number of received words q^n for exhaustive search.
    pub words: u128,
    /// Maximum number of column subsets for certificate enumeration.
    pub subsets: u128,
    /// Maximum number of cosets q^(n-k).
    pub cosets: u128,
    /// Maximum number of distance evaluations in one worst-case search.
    pub distance_evals: u128,
    /// Maximum number of generator entries a constructor may allocate.
    pub generator_entries: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            codewords: DEFAULT_ENUMERATION,
            words: DEFAULT_ENUMERATION,
            subsets: DEFAULT_SUBSETS,
            cosets: DEFAULT_COSETS,
            distance_evals: DEFAULT_DISTANCE_EVALS,
            generator_entries: DEFAULT_GENERATOR_ENTRIES,
        }
    }
}

impl Budget {
    pub fn with_subsets(mut self, subsets: u128) -> Self {
        self.subsets = subsets;
        self
    }

    pub(crate) fn check(what: &'static str, needed: Option<u128>, limit: u128) -> Result<u128> {
        match needed {
            Some(n) if n <= limit => Ok(n),
            Some(n) => Err(Error::over_budget(what, n, limit)),
            None => Err(Error::over_budget(what, u128::MAX, limit)),
        }
    }
}

/// `base^exp` without overflow, `None` past `u128::MAX`.
pub fn checked_pow(base: u64, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

/// Binomial coefficient C(n, r) without overflow, `None` past `u128::MAX`.
pub fn checked_binomial(n: u128, r: usize) -> Option<u128> {
    let r = r as u128;
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}
