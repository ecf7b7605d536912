//! Code ensembles: uniform random generators, Reed-Muller codes, random
//! puncturing and the Wozencraft ensemble.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::{checked_binomial, Budget};
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{BinaryExtField, PrimeField};

/// The generator used everywhere a seed turns into randomness.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A k x n generator with i.i.d. uniform entries, filled column by column so
/// that the columns `t_1, ..., t_n` are independent draws.
pub fn random_generator(q: u32, k: usize, n: usize, seed: u64) -> Result<LinearCode> {
    let mut rng = rng_from_seed(seed);
    random_generator_with(q, k, n, &mut rng)
}

pub fn random_generator_with<R: Rng + ?Sized>(
    q: u32,
    k: usize,
    n: usize,
    rng: &mut R,
) -> Result<LinearCode> {
    PrimeField::new(q)?;
    if k == 0 || n == 0 {
        return Err(Error::invalid("random_generator needs k >= 1 and n >= 1"));
    }
    let mut g = vec![0u8; k * n];
    for col in 0..n {
        for row in 0..k {
            g[row * n + col] = rng.gen_range(0..q) as u8;
        }
    }
    LinearCode::from_flat(q, k, n, g)
}

/// Largest m accepted by [`reed_muller`].
pub const MAX_RM_VARIABLES: u32 = 20;

/// Dimension of RM(r, m): sum of C(m, i) for i <= r.
pub fn reed_muller_dimension(r: u32, m: u32) -> u128 {
    (0..=r.min(m))
        .map(|i| checked_binomial(m as u128, i as usize).unwrap_or(u128::MAX))
        .sum()
}

/// Monomials of degree <= r in m variables: by degree, then lexicographic on
/// the sorted variable sets.
fn monomials(r: u32, m: u32) -> Vec<Vec<u32>> {
    fn combos(start: u32, m: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..m {
            cur.push(v);
            combos(v + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=r.min(m) {
        combos(0, m, d, &mut Vec::new(), &mut out);
    }
    out
}

/// The binary Reed-Muller code RM(r, m).
///
/// Rows are evaluation vectors of the monomials of degree <= r on the points
/// of F_2^m, the points being the m-bit integers in ascending order with
/// variable `x_j` read from bit `j`.
pub fn reed_muller(r: u32, m: u32, budget: &Budget) -> Result<LinearCode> {
    if r > m || m > MAX_RM_VARIABLES {
        return Err(Error::invalid(format!(
            "reed_muller needs 0 <= r <= m <= {MAX_RM_VARIABLES}, got r={r}, m={m}"
        )));
    }
    let k = reed_muller_dimension(r, m);
    let n = 1usize << m;
    Budget::check("Reed-Muller generator entries", Some(k * n as u128), budget.generator_entries)?;
    let mut g = Vec::with_capacity(k as usize * n);
    for mono in monomials(r, m) {
        let mask: usize = mono.iter().map(|&v| 1usize << v).sum();
        g.extend((0..n).map(|p| u8::from(p & mask == mask)));
    }
    LinearCode::from_flat(2, k as usize, n, g)
}

/// How the coordinate multiset T of a punctured code is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PunctureMode {
    /// `n_out` i.i.d. uniform coordinates, with replacement.
    #[default]
    WithReplacement,
    /// Keep each coordinate independently with probability `n_out / n`;
    /// the output length is random.
    Bernoulli,
}

/// Random puncturing: coordinates `t_1..t_{n_out}` drawn uniformly with
/// replacement, kept in draw order. The declared dimension is unchanged.
pub fn puncture(code: &LinearCode, n_out: usize, seed: u64) -> Result<LinearCode> {
    puncture_with_mode(code, n_out, seed, PunctureMode::WithReplacement)
}

pub fn puncture_with_mode(
    code: &LinearCode,
    n_out: usize,
    seed: u64,
    mode: PunctureMode,
) -> Result<LinearCode> {
    let mut rng = rng_from_seed(seed);
    let coords = draw_coordinates(code.n(), n_out, mode, &mut rng)?;
    puncture_at(code, &coords)
}

pub fn draw_coordinates<R: Rng + ?Sized>(
    n: usize,
    n_out: usize,
    mode: PunctureMode,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if n_out == 0 {
        return Err(Error::invalid("puncture needs n_out >= 1"));
    }
    Ok(match mode {
        PunctureMode::WithReplacement => (0..n_out).map(|_| rng.gen_range(0..n)).collect(),
        PunctureMode::Bernoulli => {
            let p = (n_out as f64 / n as f64).min(1.0);
            let kept: Vec<usize> = (0..n).filter(|_| rng.gen_bool(p)).collect();
            if kept.is_empty() {
                vec![rng.gen_range(0..n)]
            } else {
                kept
            }
        }
    })
}

/// Restricts `code` to the coordinate multiset `coords`, in the given order.
pub fn puncture_at(code: &LinearCode, coords: &[usize]) -> Result<LinearCode> {
    let n_out = coords.len();
    let mut g = Vec::with_capacity(code.k() * n_out);
    for row in 0..code.k() {
        let src = code.row(row);
        for &c in coords {
            if c >= code.n() {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    len: code.n(),
                });
            }
            g.push(src[c]);
        }
    }
    LinearCode::from_flat(code.q(), code.k(), n_out, g)
}

/// A member of the Wozencraft ensemble with random multipliers.
///
/// The message `x` (bit `i` = message symbol `i`) is read as an element of
/// GF(2^k) and encoded as the bit expansion of `(x, a_1 x, ..., a_r x)`, each
/// block little-endian. Length `(r + 1) k`, dimension `k`.
pub fn wozencraft(k: u32, r: usize, seed: u64) -> Result<LinearCode> {
    let field = BinaryExtField::new(k)?;
    let mut rng = rng_from_seed(seed);
    let alphas: Vec<u32> = (0..r).map(|_| rng.gen_range(0..field.size())).collect();
    wozencraft_with_multipliers(&field, &alphas)
}

pub fn wozencraft_with_multipliers(field: &BinaryExtField, alphas: &[u32]) -> Result<LinearCode> {
    let k = field.degree() as usize;
    if let Some(&bad) = alphas.iter().find(|&&a| a >= field.size()) {
        return Err(Error::invalid(format!("multiplier {bad} outside GF(2^{k})")));
    }
    let n = (alphas.len() + 1) * k;
    let mut g = Vec::with_capacity(k * n);
    for i in 0..k {
        let x = 1u32 << i;
        let blocks = std::iter::once(x).chain(alphas.iter().map(|&a| field.mul(a, x)));
        for b in blocks {
            g.extend((0..k).map(|j| ((b >> j) & 1) as u8));
        }
    }
    LinearCode::from_flat(2, k, n, g)
}
