//! Exhaustive ground truth for list decodability.
//!
//! A code is (t/n, L)-list decodable when every word of `[q]^n` has at most L
//! codewords (counted with multiplicity) within Hamming distance `t`. The
//! worst case is found either by scanning all `q^n` words or, for a full-rank
//! generator, by scanning one representative per coset of the code: the
//! multiset of distances from `w` to a linear code depends only on `w + C`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{checked_pow, Budget};
use crate::code::{linalg, Codebook, LinearCode, Probe, Word};
use crate::error::{Error, Result};
use crate::simplex::{encode_word, ComplexVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    Coset,
    Exhaustive,
}

/// Worst-case list size at radius `t` and a word attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListDecodingReport {
    pub t: usize,
    pub max_list: usize,
    pub witness: Word,
    /// Method actually used (rank-deficient codes fall back to exhaustive).
    pub method: SearchMethod,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decodability {
    pub decodable: bool,
    pub max_list: usize,
    pub witness: Option<Word>,
}

/// Which coordinates a search enumerates; the rest stay zero.
#[derive(Debug, Clone)]
struct SearchSpace {
    q: u32,
    n: usize,
    free: Vec<usize>,
}

impl SearchSpace {
    fn size(&self) -> Option<u128> {
        checked_pow(self.q as u64, self.free.len())
    }

    /// Word for `index`; the first free position is the most significant
    /// digit, so index order is lexicographic order.
    fn fill(&self, mut index: u64, buf: &mut [u8]) {
        let q = self.q as u64;
        for &pos in self.free.iter().rev() {
            buf[pos] = (index % q) as u8;
            index /= q;
        }
    }

    fn packed(&self, mut index: u64) -> u128 {
        let mut w = 0u128;
        for &pos in self.free.iter().rev() {
            w |= ((index & 1) as u128) << pos;
            index >>= 1;
        }
        w
    }
}

/// Exhaustive list-size oracle over a materialized codebook.
#[derive(Debug, Clone)]
pub struct Oracle<'c> {
    code: &'c LinearCode,
    book: Codebook,
    budget: Budget,
}

impl<'c> Oracle<'c> {
    pub fn new(code: &'c LinearCode, budget: Budget) -> Result<Self> {
        let book = Codebook::new(code, &budget)?;
        Ok(Self { code, book, budget })
    }

    pub fn code(&self) -> &'c LinearCode {
        self.code
    }

    pub fn codebook(&self) -> &Codebook {
        &self.book
    }

    fn check_radius(&self, t: usize) -> Result<()> {
        if t > self.code.n() {
            return Err(Error::invalid(format!(
                "radius {t} exceeds block length {}",
                self.code.n()
            )));
        }
        Ok(())
    }

    /// Codewords (with multiplicity) within distance `t` of `w`.
    pub fn list_size_at(&self, w: &[u8], t: usize) -> Result<usize> {
        if w.len() != self.code.n() {
            return Err(Error::LengthMismatch {
                left: w.len(),
                right: self.code.n(),
            });
        }
        self.code.field().check(w.iter().copied().max().unwrap_or(0) as u32)?;
        self.check_radius(t)?;
        Ok(self.book.count_within(&self.book.probe(w), t))
    }

    /// Coordinates outside the pivot set of the reduced generator, and
    /// whether the generator has full rank.
    fn transversal(&self) -> (Vec<usize>, bool) {
        let (k, n) = (self.code.k(), self.code.n());
        let mut g = self.code.generator().to_vec();
        let pivots = linalg::row_reduce(self.code.field(), &mut g, k, n);
        let free = (0..n).filter(|c| !pivots.contains(c)).collect();
        (free, pivots.len() == k)
    }

    /// The enumerated space for `method`. A rank-deficient generator falls
    /// back to the full space when that fits the budget; otherwise the
    /// transversal of its row space is still exact, since the distance
    /// multiset to the code depends only on the coset of the row space.
    fn plan_search(&self, method: SearchMethod) -> Result<(SearchSpace, SearchMethod)> {
        let (q, n) = (self.code.q(), self.code.n());
        let n_cols = self.book.len() as u128;
        let evals = |space: &SearchSpace| space.size().and_then(|s| s.checked_mul(n_cols));
        let full = self.full_space();
        let (space, used, limit, what) = match method {
            SearchMethod::Exhaustive => (full, SearchMethod::Exhaustive, self.budget.words, "exhaustive word enumeration"),
            SearchMethod::Coset => {
                let (free, full_rank) = self.transversal();
                let fits = |s: &SearchSpace| {
                    s.size().is_some_and(|w| w <= self.budget.words)
                        && evals(s).is_some_and(|e| e <= self.budget.distance_evals)
                };
                if !full_rank && fits(&full) {
                    (full, SearchMethod::Exhaustive, self.budget.words, "exhaustive word enumeration")
                } else {
                    (SearchSpace { q, n, free }, SearchMethod::Coset, self.budget.cosets, "coset enumeration")
                }
            }
        };
        Budget::check(what, space.size(), limit)?;
        Budget::check("distance evaluations", evals(&space), self.budget.distance_evals)?;
        Ok((space, used))
    }

    pub fn worst_case(&self, t: usize, method: SearchMethod) -> Result<ListDecodingReport> {
        self.check_radius(t)?;
        let (space, used) = self.plan_search(method)?;
        let total = space.size().expect("checked by plan_search") as u64;
        let (max_list, best) = self.search(&space, total, t);
        let mut witness = vec![0u8; self.code.n()];
        space.fill(best, &mut witness);
        Ok(ListDecodingReport {
            t,
            max_list,
            witness,
            method: used,
        })
    }

    fn full_space(&self) -> SearchSpace {
        SearchSpace {
            q: self.code.q(),
            n: self.code.n(),
            free: (0..self.code.n()).collect(),
        }
    }

    /// Max count over the space, ties broken towards the smaller index.
    fn search(&self, space: &SearchSpace, total: u64, t: usize) -> (usize, u64) {
        let better = |a: (usize, u64), b: (usize, u64)| {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        };
        let book = &self.book;
        if book.packed_words().is_some() {
            (0..total)
                .into_par_iter()
                .map(|idx| (book.count_within(&Probe::Packed(space.packed(idx)), t), idx))
                .reduce(|| (0, u64::MAX), better)
        } else {
            (0..total)
                .into_par_iter()
                .map_init(
                    || vec![0u8; space.n],
                    |buf, idx| {
                        space.fill(idx, buf);
                        (book.count_within(&Probe::Symbols(buf), t), idx)
                    },
                )
                .reduce(|| (0, u64::MAX), better)
        }
    }

    pub fn is_list_decodable(&self, t: usize, list: usize) -> Result<Decodability> {
        let report = self.worst_case(t, SearchMethod::Coset)?;
        let decodable = report.max_list <= list;
        Ok(Decodability {
            decodable,
            max_list: report.max_list,
            witness: (!decodable).then_some(report.witness),
        })
    }

    /// For each radius `t` in `radii`, whether `d(w, c) <= t` and
    /// `⟨φ(w), φ(c)⟩ >= (q-1)n - q·t` agree for every word and codeword. The
    /// inner products are summed directly in complex arithmetic.
    pub fn char_equivalence(&self, radii: &[usize]) -> Result<Vec<bool>> {
        for &t in radii {
            self.check_radius(t)?;
        }
        let space = self.full_space();
        let total = Budget::check("exhaustive word enumeration", space.size(), self.budget.words)? as u64;
        let (q, n) = (self.code.q(), self.code.n());
        let columns: Vec<ComplexVec> = (0..self.book.len())
            .map(|i| encode_word(q, &self.book.word(i)))
            .collect::<Result<_>>()?;
        let thresholds: Vec<f64> = radii
            .iter()
            .map(|&t| ((q as i64 - 1) * n as i64 - q as i64 * t as i64) as f64)
            .collect();
        let ok = (0..total)
            .into_par_iter()
            .map_init(
                || vec![0u8; n],
                |buf, idx| {
                    space.fill(idx, buf);
                    let phi_w = encode_word(q, buf).expect("symbols in range");
                    let mut ok = vec![true; radii.len()];
                    for (c, col) in columns.iter().enumerate() {
                        let ip = phi_w.dot(col).re;
                        let d = self.book.distance_to(&self.book.probe(buf), c);
                        for (slot, (&t, &thr)) in ok.iter_mut().zip(radii.iter().zip(&thresholds)) {
                            // inner products are integers; half a unit separates the classes
                            if (d <= t) != (ip >= thr - 0.5) {
                                *slot = false;
                            }
                        }
                    }
                    ok
                },
            )
            .reduce(
                || vec![true; radii.len()],
                |a, b| a.iter().zip(&b).map(|(x, y)| *x && *y).collect(),
            );
        Ok(ok)
    }
}

pub fn list_size_at(code: &LinearCode, w: &[u8], t: usize, budget: &Budget) -> Result<usize> {
    Oracle::new(code, *budget)?.list_size_at(w, t)
}

pub fn worst_case_list_size(
    code: &LinearCode,
    t: usize,
    method: SearchMethod,
    budget: &Budget,
) -> Result<ListDecodingReport> {
    Oracle::new(code, *budget)?.worst_case(t, method)
}

/// Whether the code is (t/n, L)-list decodable; a witness word when not.
pub fn is_list_decodable(code: &LinearCode, t: usize, list: usize, budget: &Budget) -> Result<Decodability> {
    Oracle::new(code, *budget)?.is_list_decodable(t, list)
}

/// Distance and inner-product characterizations classify every
/// (word, codeword) pair identically at radius `t`.
pub fn char_equivalence_check(code: &LinearCode, t: usize, budget: &Budget) -> Result<bool> {
    Ok(Oracle::new(code, *budget)?.char_equivalence(&[t])?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::random_generator;

    fn repetition() -> LinearCode {
        LinearCode::from_rows(2, &[vec![1, 1]], 2).unwrap()
    }

    fn full22() -> LinearCode {
        LinearCode::from_rows(2, &[vec![1, 0], vec![0, 1]], 2).unwrap()
    }

    #[test]
    fn list_size_examples() {
        let b = Budget::default();
        assert_eq!(list_size_at(&repetition(), &[0, 1], 1, &b).unwrap(), 2);
        assert_eq!(list_size_at(&repetition(), &[1, 1], 0, &b).unwrap(), 1);
        for w in [[0u8, 0], [0, 1], [1, 0], [1, 1]] {
            assert_eq!(list_size_at(&full22(), &w, 1, &b).unwrap(), 3);
        }
        assert!(list_size_at(&repetition(), &[0], 1, &b).is_err());
        assert!(list_size_at(&repetition(), &[0, 2], 1, &b).is_err());
        assert!(list_size_at(&repetition(), &[0, 1], 3, &b).is_err());
    }

    #[test]
    fn duplicate_codewords_count_twice() {
        let b = Budget::default();
        let code = LinearCode::from_rows(2, &[vec![1, 0, 1], vec![0, 0, 0]], 3).unwrap();
        assert_eq!(list_size_at(&code, &[1, 0, 1], 0, &b).unwrap(), 2);
        let rep = worst_case_list_size(&code, 0, SearchMethod::Coset, &b).unwrap();
        assert_eq!(rep.method, SearchMethod::Exhaustive);
        assert_eq!(rep.max_list, 2);
    }

    #[test]
    fn worst_case_examples() {
        let b = Budget::default();
        for method in [SearchMethod::Coset, SearchMethod::Exhaustive] {
            let r = worst_case_list_size(&repetition(), 1, method, &b).unwrap();
            assert_eq!(r.max_list, 2);
            assert_eq!(r.witness, vec![0, 1]);
            let r = worst_case_list_size(&full22(), 1, method, &b).unwrap();
            assert_eq!(r.max_list, 3);
            assert_eq!(r.witness, vec![0, 0]);
        }
        let code = random_generator(3, 2, 5, 4).unwrap();
        let r = worst_case_list_size(&code, 5, SearchMethod::Coset, &b).unwrap();
        assert_eq!(r.max_list, 9);
    }

    #[test]
    fn decodability_examples() {
        let b = Budget::default();
        assert!(is_list_decodable(&repetition(), 1, 2, &b).unwrap().decodable);
        let d = is_list_decodable(&repetition(), 1, 1, &b).unwrap();
        assert!(!d.decodable);
        assert_eq!(d.witness, Some(vec![0, 1]));
        let code = random_generator(3, 2, 4, 9).unwrap();
        assert!(is_list_decodable(&code, 0, 9, &b).unwrap().decodable);
    }

    #[test]
    fn equivalence_examples() {
        let b = Budget::default();
        assert!(char_equivalence_check(&repetition(), 1, &b).unwrap());
        for t in 0..=2 {
            assert!(char_equivalence_check(&full22(), t, &b).unwrap());
        }
    }

    #[test]
    fn budgets_are_enforced() {
        let code = random_generator(2, 2, 30, 1).unwrap();
        let tight = Budget {
            cosets: 1 << 10,
            ..Budget::default()
        };
        assert!(matches!(
            worst_case_list_size(&code, 3, SearchMethod::Coset, &tight),
            Err(Error::SizeOverBudget { .. })
        ));
        assert!(matches!(
            worst_case_list_size(&code, 3, SearchMethod::Exhaustive, &Budget::default()),
            Err(Error::SizeOverBudget { .. })
        ));
    }

    #[test]
    fn rank_deficient_code_past_word_budget() {
        let row: Vec<u8> = (0..20).map(|i| (i % 2) as u8).collect();
        let code = LinearCode::from_rows(2, &[row.clone(), row], 20).unwrap();
        let b = Budget {
            words: 1 << 10,
            ..Budget::default()
        };
        let r = worst_case_list_size(&code, 5, SearchMethod::Coset, &b).unwrap();
        assert_eq!((r.max_list, r.method), (4, SearchMethod::Coset));
        let r = worst_case_list_size(&code, 4, SearchMethod::Coset, &b).unwrap();
        assert_eq!(r.max_list, 2);
        assert_eq!(list_size_at(&code, &r.witness, 4, &b).unwrap(), 2);
    }

    #[test]
    fn witness_attains_max() {
        let b = Budget::default();
        for seed in 0..20 {
            let code = random_generator(3, 2, 5, seed).unwrap();
            let oracle = Oracle::new(&code, b).unwrap();
            for t in 0..=5 {
                let r = oracle.worst_case(t, SearchMethod::Coset).unwrap();
                assert_eq!(oracle.list_size_at(&r.witness, t).unwrap(), r.max_list);
                let e = oracle.worst_case(t, SearchMethod::Exhaustive).unwrap();
                assert_eq!(e.max_list, r.max_list);
            }
        }
    }
}
