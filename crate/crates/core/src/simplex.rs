//! The simplex encoding and the matrix Φ it induces on a code.
//!
//! A symbol `s` in `[q]` maps to the `(q-1)`-vector `(ω^{s·1}, ..., ω^{s·(q-1)})`
//! with `ω = e^{2πi/q}`; a word maps to the concatenation of its symbols'
//! images. The Hermitian inner product of two encoded words depends only on
//! their Hamming distance `d`: `⟨φ(x), φ(y)⟩ = (q-1)n - q·d`.
//!
//! Φ has one column per codeword (message order) and is never stored; columns
//! are regenerated from the generator on demand.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::code::{Codebook, LinearCode};
use crate::error::{Error, Result};

/// `ω^j` for `j in 0..q`.
pub fn roots_of_unity(q: u32) -> Vec<Complex64> {
    (0..q)
        .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / q as f64))
        .collect()
}

/// A dense complex vector with the norms the certificates need.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexVec {
    pub entries: Vec<Complex64>,
}

impl ComplexVec {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn l1_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).sum()
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Hermitian inner product `Σ a_i conj(b_i)`.
    pub fn dot(&self, other: &ComplexVec) -> Complex64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b.conj())
            .sum()
    }
}

fn check_symbols(q: u32, x: &[u8]) -> Result<()> {
    match x.iter().position(|&s| s as u32 >= q) {
        Some(position) => Err(Error::SymbolOutOfRange {
            symbol: x[position] as u32,
            position,
            q,
        }),
        None => Ok(()),
    }
}

/// φ(x): block `i` holds `(ω^{x_i·1}, ..., ω^{x_i·(q-1)})`.
pub fn encode_word(q: u32, x: &[u8]) -> Result<ComplexVec> {
    check_symbols(q, x)?;
    let roots = roots_of_unity(q);
    let mut entries = Vec::with_capacity(x.len() * (q as usize - 1));
    for &s in x {
        for alpha in 1..q {
            entries.push(roots[((s as u32 * alpha) % q) as usize]);
        }
    }
    Ok(ComplexVec { entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerProductMode {
    /// Count disagreements and apply `(q-1)n - q·d`; exact.
    #[default]
    AgreementCount,
    /// Sum `φ(x)_j conj(φ(y)_j)` in floating point; cross-check only.
    ComplexSum,
}

/// Exact simplex inner product `(q-1)n - q·d(x, y)·n` with `d` relative.
pub fn simplex_inner_product(q: u32, x: &[u8], y: &[u8]) -> Result<i64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    check_symbols(q, x)?;
    check_symbols(q, y)?;
    let d = x.iter().zip(y).filter(|(a, b)| a != b).count() as i64;
    Ok(inner_product_from_distance(q, x.len(), d as usize))
}

#[inline]
pub fn inner_product_from_distance(q: u32, n: usize, d: usize) -> i64 {
    (q as i64 - 1) * n as i64 - q as i64 * d as i64
}

/// Direct Hermitian sum of the encoded vectors.
pub fn simplex_inner_product_complex(q: u32, x: &[u8], y: &[u8]) -> Result<Complex64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(encode_word(q, x)?.dot(&encode_word(q, y)?))
}

/// Real part of the inner product computed by the requested route.
pub fn simplex_inner_product_with(q: u32, x: &[u8], y: &[u8], mode: InnerProductMode) -> Result<f64> {
    match mode {
        InnerProductMode::AgreementCount => simplex_inner_product(q, x, y).map(|v| v as f64),
        InnerProductMode::ComplexSum => simplex_inner_product_complex(q, x, y).map(|z| z.re),
    }
}

/// A binary vector with exactly L ones, stored as its support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SparsePattern {
    support: Vec<usize>,
}

impl SparsePattern {
    /// `support` must be strictly increasing and below `columns`.
    pub fn new(support: Vec<usize>, columns: usize) -> Result<Self> {
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("pattern support must be strictly increasing"));
        }
        if let Some(&last) = support.last() {
            if last >= columns {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    len: columns,
                });
            }
        }
        Ok(Self { support })
    }

    /// Sorts and deduplicates; fails if duplicates were present.
    pub fn from_unsorted(mut support: Vec<usize>, columns: usize) -> Result<Self> {
        support.sort_unstable();
        Self::new(support, columns)
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Sparsity L.
    pub fn size(&self) -> usize {
        self.support.len()
    }
}

/// Φ = φ(C) for a code, evaluated lazily.
#[derive(Debug, Clone)]
pub struct SimplexMatrix<'a> {
    code: &'a LinearCode,
    budget: Budget,
}

impl<'a> SimplexMatrix<'a> {
    pub fn new(code: &'a LinearCode, budget: Budget) -> Self {
        Self { code, budget }
    }

    pub fn code(&self) -> &LinearCode {
        self.code
    }

    /// `n(q-1)`.
    pub fn rows(&self) -> usize {
        self.code.n() * (self.code.q() as usize - 1)
    }

    /// `N = q^k`, checked against the enumeration budget.
    pub fn columns(&self) -> Result<usize> {
        self.code.checked_size(&self.budget)
    }

    /// Column for the codeword with message index `index`.
    pub fn column(&self, index: usize) -> Result<ComplexVec> {
        let cols = self.columns()?;
        if index >= cols {
            return Err(Error::IndexOutOfRange { index, len: cols });
        }
        encode_word(self.code.q(), &self.code.codeword(index as u128).symbols)
    }

    /// Φx: the sum of the selected columns.
    pub fn apply(&self, pattern: &SparsePattern) -> Result<ComplexVec> {
        let cols = self.columns()?;
        if let Some(&last) = pattern.support().last() {
            if last >= cols {
                return Err(Error::IndexOutOfRange { index: last, len: cols });
            }
        }
        let q = self.code.q();
        let roots = roots_of_unity(q);
        let mut acc = vec![Complex64::new(0.0, 0.0); self.rows()];
        for &j in pattern.support() {
            let word = self.code.codeword(j as u128).symbols;
            for (i, &s) in word.iter().enumerate() {
                for alpha in 1..q {
                    acc[i * (q as usize - 1) + alpha as usize - 1] +=
                        roots[((s as u32 * alpha) % q) as usize];
                }
            }
        }
        Ok(ComplexVec { entries: acc })
    }
}

/// Φx for a pattern; see [`SimplexMatrix::apply`].
pub fn phi_apply(matrix: &SimplexMatrix<'_>, pattern: &SparsePattern) -> Result<ComplexVec> {
    matrix.apply(pattern)
}

/// Fast ‖Φx‖₁ and ‖Φx‖₂² for column subsets of a materialized codebook.
///
/// Binary codebooks use bit-sliced coordinate counts; other alphabets sum
/// characters coordinate by coordinate.
#[derive(Debug, Clone)]
pub struct PatternNorms<'b> {
    book: &'b Codebook,
    roots: Vec<Complex64>,
    packed: Option<&'b [u128]>,
}

impl<'b> PatternNorms<'b> {
    pub fn new(book: &'b Codebook) -> Self {
        Self {
            book,
            roots: roots_of_unity(book.q()),
            packed: book.packed_words(),
        }
    }

    pub fn codebook(&self) -> &Codebook {
        self.book
    }

    /// ‖Φx‖₁ for the columns in `support`.
    pub fn l1(&self, support: &[usize]) -> f64 {
        if let Some(words) = &self.packed {
            return binary_norm(words, self.book.n(), support, |v| v.unsigned_abs() as f64);
        }
        let q = self.book.q();
        let n = self.book.n();
        let cols: Vec<_> = support.iter().map(|&j| self.book.symbols(j)).collect();
        let mut total = 0.0;
        for i in 0..n {
            for alpha in 1..q {
                let z: Complex64 = cols
                    .iter()
                    .map(|c| self.roots[((c[i] as u32 * alpha) % q) as usize])
                    .sum();
                total += z.norm();
            }
        }
        total
    }

    /// ‖Φx‖₂², exact, via the Gram expansion of the selected columns.
    pub fn l2_sq(&self, support: &[usize]) -> i64 {
        if let Some(words) = &self.packed {
            return binary_norm(words, self.book.n(), support, |v| v * v);
        }
        let (q, n) = (self.book.q(), self.book.n());
        let mut total = 0i64;
        for &a in support {
            for &b in support {
                total += inner_product_from_distance(q, n, self.book.distance(a, b));
            }
        }
        total
    }
}

/// Σ_i f(L - 2 h_i) where `h_i` counts ones at coordinate `i`.
fn binary_norm<T>(words: &[u128], n: usize, support: &[usize], f: impl Fn(i64) -> T) -> T
where
    T: std::iter::Sum<T> + std::ops::Mul<T, Output = T> + From<u32>,
{
    let l = support.len();
    let full: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let bits = (usize::BITS - l.leading_zeros()) as usize;
    let mut planes = vec![0u128; bits.max(1)];
    for &j in support {
        let mut carry = words[j];
        for p in planes.iter_mut() {
            let next = *p & carry;
            *p ^= carry;
            carry = next;
            if carry == 0 {
                break;
            }
        }
    }
    (0..=l)
        .map(|h| {
            let mut mask = full;
            for (b, p) in planes.iter().enumerate() {
                mask &= if (h >> b) & 1 == 1 { *p } else { !*p };
            }
            T::from(mask.count_ones()) * f(l as i64 - 2 * h as i64)
        })
        .sum()
}
