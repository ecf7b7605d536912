use crate::budget::Budget;
use crate::code::{LinearCode, Word};
use crate::error::Result;

/// Binary words of length up to 128 are packed into one `u128`, bit `i`
/// holding coordinate `i`.
pub const PACKED_MAX_LEN: usize = 128;

#[derive(Debug, Clone)]
enum Repr {
    Packed(Vec<u128>),
    Symbols(Vec<u8>),
}

/// All `q^k` codewords of a code, materialized in message order.
#[derive(Debug, Clone)]
pub struct Codebook {
    q: u32,
    n: usize,
    len: usize,
    repr: Repr,
}

/// A received word prepared for repeated distance queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Probe<'a> {
    Packed(u128),
    Symbols(&'a [u8]),
}

pub(crate) fn pack(word: &[u8]) -> u128 {
    word.iter()
        .enumerate()
        .fold(0u128, |acc, (i, &s)| acc | ((s as u128 & 1) << i))
}

impl Codebook {
    pub fn new(code: &LinearCode, budget: &Budget) -> Result<Self> {
        let len = code.checked_size(budget)?;
        let (q, n, k) = (code.q(), code.n(), code.k());
        // the most recently folded row becomes the most significant digit,
        // so folding rows last-to-first yields lexicographic message order
        let repr = if q == 2 && n <= PACKED_MAX_LEN {
            let mut words = Vec::with_capacity(len);
            words.push(0u128);
            for i in (0..k).rev() {
                let row = pack(code.row(i));
                let cur = words.len();
                for j in 0..cur {
                    words.push(words[j] ^ row);
                }
            }
            Repr::Packed(words)
        } else {
            let mut symbols = Vec::with_capacity(len * n);
            symbols.extend(std::iter::repeat_n(0u8, n));
            let field = code.field();
            for i in (0..k).rev() {
                let row = code.row(i);
                let cur = symbols.len() / n;
                for d in 1..q {
                    for j in 0..cur {
                        for c in 0..n {
                            let v = field.add(symbols[j * n + c] as u32, field.mul(d, row[c] as u32));
                            symbols.push(v as u8);
                        }
                    }
                }
            }
            Repr::Symbols(symbols)
        };
        Ok(Self { q, n, len, repr })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Bit-packed codewords when the codebook is binary and short enough.
    pub fn packed_words(&self) -> Option<&[u128]> {
        match &self.repr {
            Repr::Packed(w) => Some(w),
            Repr::Symbols(_) => None,
        }
    }

    pub fn word(&self, i: usize) -> Word {
        match &self.repr {
            Repr::Packed(w) => (0..self.n).map(|b| ((w[i] >> b) & 1) as u8).collect(),
            Repr::Symbols(s) => s[i * self.n..(i + 1) * self.n].to_vec(),
        }
    }

    pub fn symbols(&self, i: usize) -> std::borrow::Cow<'_, [u8]> {
        match &self.repr {
            Repr::Packed(_) => std::borrow::Cow::Owned(self.word(i)),
            Repr::Symbols(s) => std::borrow::Cow::Borrowed(&s[i * self.n..(i + 1) * self.n]),
        }
    }

    pub fn weight(&self, i: usize) -> usize {
        match &self.repr {
            Repr::Packed(w) => w[i].count_ones() as usize,
            Repr::Symbols(s) => s[i * self.n..(i + 1) * self.n].iter().filter(|&&x| x != 0).count(),
        }
    }

    /// Hamming distance between codewords `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> usize {
        match &self.repr {
            Repr::Packed(w) => (w[i] ^ w[j]).count_ones() as usize,
            Repr::Symbols(s) => {
                let (a, b) = (&s[i * self.n..(i + 1) * self.n], &s[j * self.n..(j + 1) * self.n]);
                a.iter().zip(b).filter(|(x, y)| x != y).count()
            }
        }
    }

    pub fn probe<'a>(&self, word: &'a [u8]) -> Probe<'a> {
        match self.repr {
            Repr::Packed(_) => Probe::Packed(pack(word)),
            Repr::Symbols(_) => Probe::Symbols(word),
        }
    }

    /// Number of codewords (with multiplicity) within distance `t` of the probe.
    pub fn count_within(&self, probe: &Probe<'_>, t: usize) -> usize {
        match (&self.repr, probe) {
            (Repr::Packed(words), Probe::Packed(p)) => words
                .iter()
                .filter(|&&c| ((c ^ p).count_ones() as usize) <= t)
                .count(),
            (Repr::Symbols(s), Probe::Symbols(w)) => s
                .chunks_exact(self.n)
                .filter(|c| within(c, w, t))
                .count(),
            (Repr::Symbols(s), Probe::Packed(p)) => {
                let w: Vec<u8> = (0..self.n).map(|b| ((p >> b) & 1) as u8).collect();
                s.chunks_exact(self.n).filter(|c| within(c, &w, t)).count()
            }
            (Repr::Packed(words), Probe::Symbols(w)) => {
                let p = pack(w);
                words
                    .iter()
                    .filter(|&&c| ((c ^ p).count_ones() as usize) <= t)
                    .count()
            }
        }
    }

    /// Distance from the probe to codeword `i`.
    pub fn distance_to(&self, probe: &Probe<'_>, i: usize) -> usize {
        match (&self.repr, probe) {
            (Repr::Packed(words), Probe::Packed(p)) => (words[i] ^ p).count_ones() as usize,
            _ => {
                let w = self.word(i);
                match probe {
                    Probe::Packed(p) => (0..self.n)
                        .filter(|&b| ((p >> b) & 1) as u8 != w[b])
                        .count(),
                    Probe::Symbols(s) => s.iter().zip(&w).filter(|(a, b)| a != b).count(),
                }
            }
        }
    }
}

/// Early-exit check of `d(a, b) <= t`.
#[inline]
fn within(a: &[u8], b: &[u8], t: usize) -> bool {
    let mut d = 0;
    for (x, y) in a.iter().zip(b) {
        if x != y {
            d += 1;
            if d > t {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{random_generator, reed_muller};

    #[test]
    fn matches_direct_encoding() {
        for (q, k, n, seed) in [(2u32, 4usize, 9usize, 1u64), (3, 3, 5, 2), (5, 2, 4, 3), (2, 3, 130, 4)] {
            let code = random_generator(q, k, n, seed).unwrap();
            let book = Codebook::new(&code, &Budget::default()).unwrap();
            assert_eq!(book.len(), code.size().unwrap() as usize);
            for i in 0..book.len() {
                assert_eq!(book.word(i), code.codeword(i as u128).symbols);
            }
        }
    }

    #[test]
    fn counts_and_distances() {
        let rm = reed_muller(1, 3, &Budget::default()).unwrap();
        let book = Codebook::new(&rm, &Budget::default()).unwrap();
        let zero = vec![0u8; 8];
        let p = book.probe(&zero);
        assert_eq!(book.count_within(&p, 3), 1);
        assert_eq!(book.count_within(&p, 4), 15);
        assert_eq!(book.count_within(&p, 8), 16);
        assert_eq!(book.distance_to(&p, 15), book.weight(15));
        assert_eq!(book.distance(0, 15), book.weight(15));
    }
}
