use serde::{Deserialize, Serialize};

use crate::budget::{checked_pow, Budget};
use crate::code::linalg;
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// A received word or codeword: one symbol in `0..q` per coordinate.
pub type Word = Vec<u8>;

/// Largest supported alphabet; symbols are stored as bytes.
pub const MAX_ALPHABET: u32 = 251;

/// A q-ary linear code given by a k x n generator matrix.
///
/// The code is the multiset `{ xG : x in F_q^k }`: it always has `q^k`
/// members, with repeats when `G` is rank deficient. Messages are indexed in
/// lexicographic order, the first message symbol being the most significant
/// digit of the index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearCode {
    field: PrimeField,
    k: usize,
    n: usize,
    /// row-major, `k * n` entries
    generator: Vec<u8>,
}

/// A codeword together with the message that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codeword {
    pub symbols: Word,
    pub message: Vec<u8>,
}

impl LinearCode {
    /// Builds a code from generator rows. Every row must have length `n`.
    pub fn from_rows(q: u32, rows: &[Vec<u8>], n: usize) -> Result<Self> {
        let mut generator = Vec::with_capacity(rows.len() * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    left: row.len(),
                    right: n,
                });
            }
            generator.extend_from_slice(row);
        }
        Self::from_flat(q, rows.len(), n, generator)
    }

    /// Builds a code from a row-major `k * n` generator.
    pub fn from_flat(q: u32, k: usize, n: usize, generator: Vec<u8>) -> Result<Self> {
        let field = PrimeField::new(q)?;
        if q > MAX_ALPHABET {
            return Err(Error::invalid(format!(
                "alphabet {q} exceeds the supported maximum {MAX_ALPHABET}"
            )));
        }
        if k == 0 || n == 0 {
            return Err(Error::invalid("codes need k >= 1 and n >= 1"));
        }
        if generator.len() != k * n {
            return Err(Error::LengthMismatch {
                left: generator.len(),
                right: k * n,
            });
        }
        for (pos, &s) in generator.iter().enumerate() {
            if s as u32 >= q {
                return Err(Error::SymbolOutOfRange {
                    symbol: s as u32,
                    position: pos,
                    q,
                });
            }
        }
        Ok(Self {
            field,
            k,
            n,
            generator,
        })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.order()
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Dimension as declared: the number of generator rows.
    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Codewords are always counted with multiplicity.
    pub fn multiset_semantics(&self) -> bool {
        true
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn generator(&self) -> &[u8] {
        &self.generator
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.generator[i * self.n..(i + 1) * self.n]
    }

    /// Column `j` of the generator, i.e. the vector `t_j` in F_q^k.
    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.k).map(|i| self.generator[i * self.n + j]).collect()
    }

    /// `N = q^k`, `None` if it overflows `u128`.
    pub fn size(&self) -> Option<u128> {
        checked_pow(self.q() as u64, self.k)
    }

    /// Checks `q^k` against the enumeration budget and returns it.
    pub fn checked_size(&self, budget: &Budget) -> Result<usize> {
        Budget::check("codeword enumeration", self.size(), budget.codewords).map(|n| n as usize)
    }

    /// Rank of the generator over F_q.
    pub fn rank(&self) -> usize {
        linalg::rank(self.field, &self.generator, self.k, self.n)
    }

    /// Message with lexicographic index `index`.
    pub fn message(&self, mut index: u128) -> Vec<u8> {
        let q = self.q() as u128;
        let mut msg = vec![0u8; self.k];
        for slot in msg.iter_mut().rev() {
            *slot = (index % q) as u8;
            index /= q;
        }
        msg
    }

    /// `xG` for a message `x` of length k.
    pub fn encode(&self, message: &[u8]) -> Result<Word> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch {
                left: message.len(),
                right: self.k,
            });
        }
        let q = self.q();
        for (pos, &s) in message.iter().enumerate() {
            if s as u32 >= q {
                return Err(Error::SymbolOutOfRange {
                    symbol: s as u32,
                    position: pos,
                    q,
                });
            }
        }
        Ok(self.encode_unchecked(message))
    }

    pub(crate) fn encode_unchecked(&self, message: &[u8]) -> Word {
        let q = self.q();
        let mut acc = vec![0u32; self.n];
        for (i, &m) in message.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for (a, &g) in acc.iter_mut().zip(self.row(i)) {
                *a += m as u32 * g as u32;
            }
        }
        acc.into_iter().map(|a| (a % q) as u8).collect()
    }

    /// Codeword for the message of lexicographic index `index`.
    pub fn codeword(&self, index: u128) -> Codeword {
        let message = self.message(index);
        let symbols = self.encode_unchecked(&message);
        Codeword { symbols, message }
    }

    /// Sum of two words in F_q^n.
    pub fn add_words(&self, a: &[u8], b: &[u8]) -> Word {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.field.add(x as u32, y as u32) as u8)
            .collect()
    }
}

/// All `q^k` codewords in message order, repeats retained.
pub fn enumerate_codewords(code: &LinearCode, budget: &Budget) -> Result<Vec<Codeword>> {
    let size = code.checked_size(budget)?;
    Ok((0..size as u128).map(|i| code.codeword(i)).collect())
}
