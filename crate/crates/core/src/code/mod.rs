//! Linear codes over prime fields and the ensembles built from them.

mod codebook;
mod construct;
mod genfile;
pub mod linalg;
mod linear;
mod weights;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

pub use codebook::{Codebook, Probe, PACKED_MAX_LEN};
pub use construct::{
    draw_coordinates, puncture, puncture_at, puncture_with_mode, random_generator,
    random_generator_with, reed_muller, reed_muller_dimension, rng_from_seed, wozencraft,
    wozencraft_with_multipliers, PunctureMode, SeededRng, MAX_RM_VARIABLES,
};
pub use genfile::{load_gen, parse_gen, store_gen, to_gen_string};
pub use linear::{enumerate_codewords, Codeword, LinearCode, Word, MAX_ALPHABET};
pub use weights::{low_weight_count, min_distance, weight_profile, weight_profile_of, WeightProfile};

use crate::error::{Error, Result};

/// Hamming distance as a count and as an exact fraction of the length.
pub fn hamming_distance(x: &[u8], y: &[u8]) -> Result<(usize, Ratio<usize>)> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let count = x.iter().zip(y).filter(|(a, b)| a != b).count();
    let relative = if x.is_empty() {
        Ratio::from_integer(0)
    } else {
        Ratio::new(count, x.len())
    };
    Ok((count, relative))
}

/// Probability that a uniformly random k x n matrix over F_q has rank k:
/// the product of `1 - q^(r - n)` for `r` in `0..k`. Zero when `k > n`.
pub fn full_rank_probability(q: u32, k: usize, n: usize) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let q = BigInt::from(q);
    (0..k).fold(BigRational::one(), |acc, r| {
        let denom = num_traits::pow(q.clone(), n - r);
        acc * BigRational::new(&denom - 1, denom)
    })
}
