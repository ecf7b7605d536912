use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{decoding_radius, exact_decimal};
use crate::error::{Error, Result};

/// Code parameters that make the ℓ1 certificate hold with the
/// concentration constant `c0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamPlan {
    pub epsilon: f64,
    pub q: u32,
    pub c0: f64,
    pub k: usize,
    /// `⌈(2/ε)²⌉`.
    #[serde(rename = "L")]
    pub l: usize,
    /// `max(k, ⌈(2c0)²·k·ln q / ε²⌉)`.
    pub n: usize,
    /// `⌊(1-1/q)(1-ε)n⌋`.
    pub t: usize,
    /// `n/√L + c0·√(n ln N)` with `N = q^k`.
    pub lhs: f64,
    /// `nε`.
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
}

impl ParamPlan {
    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}

pub fn plan_parameters(epsilon: f64, q: u32, c0: f64, k: usize) -> Result<ParamPlan> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::invalid(format!("epsilon must lie in (0, 1], got {epsilon}")));
    }
    if !(c0 > 0.0 && c0.is_finite()) {
        return Err(Error::invalid(format!("C0 must be positive, got {c0}")));
    }
    if q < 2 {
        return Err(Error::invalid("q must be at least 2"));
    }
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let eps = exact_decimal(epsilon)?;
    let four = BigRational::from_integer(4.into());
    let l = (four / (&eps * &eps)).ceil().to_integer().to_usize().expect("L fits");
    let ln_q = (q as f64).ln();
    let n_real = (2.0 * c0).powi(2) * k as f64 * ln_q / (epsilon * epsilon);
    let n = (n_real.ceil() as usize).max(k);
    let t = decoding_radius(q, n, epsilon)?.expect("epsilon <= 1");
    let ln_n = k as f64 * ln_q;
    let lhs = n as f64 / (l as f64).sqrt() + c0 * (n as f64 * ln_n).sqrt();
    let rhs = n as f64 * epsilon;
    debug_assert!(eps <= BigRational::one());
    Ok(ParamPlan {
        epsilon,
        q,
        c0,
        k,
        l,
        n,
        t,
        lhs,
        rhs,
        margin: rhs - lhs,
        satisfied: lhs < rhs,
    })
}
