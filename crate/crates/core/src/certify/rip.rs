use serde::{Deserialize, Serialize};

use super::jacobi::{symmetric_eigenvalues, OFF_DIAGONAL_TOLERANCE};
use super::{best_subset, CertificateReport, Verdict};
use crate::budget::{checked_binomial, Budget};
use crate::code::{Codebook, LinearCode};
use crate::error::{Error, Result};
use crate::simplex::{inner_product_from_distance, SparsePattern};

/// Decoding radius implied by a restricted isometry constant at sparsity L.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RipImplied {
    #[serde(rename = "L")]
    pub l: usize,
    pub q: u32,
    pub delta: f64,
    /// `(1-1/q)(1 - (1+δ)/√L)`.
    pub radius: f64,
    /// `(1-1/q)(1 - 3/(2√L))`, present when δ ≤ 1/2 and positive.
    pub boxed_radius: Option<f64>,
    pub list: usize,
}

impl RipImplied {
    /// Largest integer `t` with `t < radius·n`. The underlying ℓ1 condition
    /// is strict, so a radius landing exactly on an integer is excluded.
    pub fn t(&self, n: usize) -> usize {
        let x = self.radius * n as f64;
        let m = x.round();
        let t = if (x - m).abs() < 1e-9 { m - 1.0 } else { x.floor() };
        t.max(0.0) as usize
    }

    /// `⌊n(1-1/q)(1 - 3/(2√L))⌋` computed exactly, when the boxed radius applies.
    pub fn boxed_t(&self, n: usize) -> Option<usize> {
        self.boxed_radius?;
        Some(boxed_floor(n, self.q, self.l))
    }
}

/// Largest `m` with `m ≤ P - Q/√L`, where `P = n(q-1)/q` and
/// `Q = 3n(q-1)/(2q)`. Scaled by `2q` every quantity is an integer.
fn boxed_floor(n: usize, q: u32, l: usize) -> usize {
    let (n, q, l) = (n as i128, q as i128, l as i128);
    let p = 2 * n * (q - 1);
    let qq = 3 * n * (q - 1);
    let mut m = p / (2 * q);
    while m > 0 {
        let gap = p - 2 * q * m;
        if gap >= 0 && gap * gap * l >= qq * qq {
            break;
        }
        m -= 1;
    }
    m as usize
}

/// Radius and list size implied by δ at sparsity L; `None` when the
/// general radius is not positive.
pub fn rip_implied_decodability(delta: f64, l: usize, q: u32) -> Option<RipImplied> {
    if delta.is_nan() || delta < 0.0 || l < 2 || q < 2 {
        return None;
    }
    let scale = 1.0 - 1.0 / q as f64;
    let root = (l as f64).sqrt();
    let radius = scale * (1.0 - (1.0 + delta) / root);
    if radius <= 0.0 {
        return None;
    }
    let boxed = scale * (1.0 - 1.5 / root);
    Some(RipImplied {
        l,
        q,
        delta,
        radius,
        boxed_radius: (delta <= 0.5 && boxed > 0.0).then_some(boxed),
        list: l - 1,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RipReport {
    pub s: usize,
    /// max over size-s column subsets of ‖Φ̃_S*Φ̃_S - I‖₂ for Φ̃ = Φ/√(n(q-1)).
    pub delta: f64,
    pub witness: SparsePattern,
    pub implied: Option<RipImplied>,
}

impl RipReport {
    pub fn to_report(&self) -> CertificateReport {
        CertificateReport {
            kind: "rip".into(),
            l: self.s,
            value: self.delta,
            threshold: 0.5,
            verdict: Verdict::strict_below(self.delta, 0.5, OFF_DIAGONAL_TOLERANCE),
            witness: self.witness.support().to_vec(),
            mode: "exact".into(),
            tolerance: OFF_DIAGONAL_TOLERANCE,
            details: serde_json::json!({ "implied": self.implied }),
        }
    }
}

/// Restricted isometry constant of the normalized simplex matrix at
/// sparsity `s`, maximized over all size-s column subsets.
pub fn rip_constant(code: &LinearCode, s: usize, budget: &Budget) -> Result<RipReport> {
    if s == 0 {
        return Err(Error::invalid("sparsity s must be at least 1"));
    }
    let book = Codebook::new(code, budget)?;
    let n_cols = book.len();
    if s > n_cols {
        return Err(Error::invalid(format!("s = {s} exceeds the {n_cols} codewords")));
    }
    Budget::check("s-subsets", checked_binomial(n_cols as u128, s), budget.subsets)?;
    let (q, n) = (code.q(), code.n());
    let scale = (n * (q as usize - 1)) as f64;
    let deviation = |support: &[usize]| -> f64 {
        let mut gram = vec![0.0; s * s];
        for (a, &i) in support.iter().enumerate() {
            gram[a * s + a] = 1.0;
            for (b, &j) in support.iter().enumerate().skip(a + 1) {
                let g = inner_product_from_distance(q, n, book.distance(i, j)) as f64 / scale;
                gram[a * s + b] = g;
                gram[b * s + a] = g;
            }
        }
        let eig = symmetric_eigenvalues(&mut gram, s);
        (eig[s - 1] - 1.0).max(1.0 - eig[0])
    };
    // equal deviations up to rounding count as ties, keeping the lex-least subset
    let (delta, support) =
        best_subset(n_cols, s, deviation, |a, b| *a > *b + 1e-12).expect("s <= n_cols");
    let delta = delta.max(0.0);
    Ok(RipReport {
        s,
        delta,
        witness: SparsePattern::new(support, n_cols)?,
        implied: rip_implied_decodability(delta, s, q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::random_generator;

    #[test]
    fn unit_columns() {
        let code = random_generator(3, 2, 4, 1).unwrap();
        let r = rip_constant(&code, 1, &Budget::default()).unwrap();
        assert_eq!(r.delta, 0.0);
        assert!(r.implied.is_none());
    }

    #[test]
    fn full_and_repetition_codes() {
        let full = LinearCode::from_rows(2, &[vec![1, 0], vec![0, 1]], 2).unwrap();
        let r = rip_constant(&full, 2, &Budget::default()).unwrap();
        assert!((r.delta - 1.0).abs() < 1e-12);
        assert_eq!(r.witness.support(), &[0, 3]);
        let rep = LinearCode::from_rows(2, &[vec![1, 1]], 2).unwrap();
        let r = rip_constant(&rep, 2, &Budget::default()).unwrap();
        assert!((r.delta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn implied_radii() {
        let r = rip_implied_decodability(0.5, 4, 2).unwrap();
        assert!((r.radius - 0.125).abs() < 1e-15);
        assert!((r.boxed_radius.unwrap() - 0.125).abs() < 1e-15);
        assert_eq!(r.list, 3);
        let r = rip_implied_decodability(0.0, 4, 2).unwrap();
        assert!((r.radius - 0.25).abs() < 1e-15);
        assert!(rip_implied_decodability(1.0, 4, 2).is_none());
        assert!(rip_implied_decodability(0.7, 4, 2).unwrap().boxed_radius.is_none());
    }

    #[test]
    fn integer_thresholds() {
        let r = rip_implied_decodability(0.0, 4, 2).unwrap();
        // radius·n = 2 exactly: strictness excludes t = 2
        assert_eq!(r.t(8), 1);
        let r = rip_implied_decodability(0.5, 4, 2).unwrap();
        assert_eq!(r.boxed_t(8), Some(1));
        assert_eq!(r.boxed_t(7), Some(0));
        assert_eq!(boxed_floor(100, 2, 9), 25);
        assert_eq!(boxed_floor(100, 3, 16), 41);
    }

    #[test]
    fn delta_grows_with_sparsity() {
        for seed in 0..5 {
            let code = random_generator(2, 3, 9, seed).unwrap();
            let mut prev = 0.0;
            for s in 1..=4 {
                let d = rip_constant(&code, s, &Budget::default()).unwrap().delta;
                assert!(d + 1e-9 >= prev);
                prev = d;
            }
        }
    }
}
