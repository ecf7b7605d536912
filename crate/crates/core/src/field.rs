//! Exact arithmetic in prime fields F_q and in binary extension fields GF(2^k).
//!
//! Elements of F_q are residues `0..q`; the symbol alphabet `[q]` of a code is
//! identified with F_q by the natural bijection `i <-> i`. Elements of GF(2^k)
//! are k-bit masks, bit `j` holding the coefficient of `x^j`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    q: u32,
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;

    fn try_from(q: u32) -> Result<Self> {
        PrimeField::new(q)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.q
    }
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::NonPrimeModulus(q as u64));
        }
        Ok(Self { q })
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn check(&self, a: u32) -> Result<u32> {
        if a < self.q {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange {
                value: a as u64,
                order: self.q as u64,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q as u64 - b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.q;
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.q) {
            return Err(Error::InverseOfZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow,
}

/// One-shot prime field operation. For [`FieldOp::Inv`] the second operand
/// is ignored; for [`FieldOp::Pow`] it is the exponent.
pub fn prime_field_op(q: u32, op: FieldOp, a: u32, b: u32) -> Result<u32> {
    let f = PrimeField::new(q)?;
    f.check(a)?;
    match op {
        FieldOp::Add => Ok(f.add(a, f.check(b)?)),
        FieldOp::Sub => Ok(f.sub(a, f.check(b)?)),
        FieldOp::Mul => Ok(f.mul(a, f.check(b)?)),
        FieldOp::Inv => f.inv(a),
        FieldOp::Pow => Ok(f.pow(a, b as u64)),
    }
}

/// Default irreducible modulus for each degree 1..=16, bit `k` set.
const DEFAULT_MODULI: [u32; 16] = [
    0b11,     // x + 1
    0b111,    // x^2 + x + 1
    0xB,      // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x43,     // x^6 + x + 1
    0x83,     // x^7 + x + 1
    0x11D,    // x^8 + x^4 + x^3 + x^2 + 1
    0x211,    // x^9 + x^4 + 1
    0x409,    // x^10 + x^3 + 1
    0x805,    // x^11 + x^2 + 1
    0x1053,   // x^12 + x^6 + x^4 + x + 1
    0x201B,   // x^13 + x^4 + x^3 + x + 1
    0x4443,   // x^14 + x^10 + x^6 + x + 1
    0x8003,   // x^15 + x + 1
    0x1100B,  // x^16 + x^12 + x^3 + x + 1
];

fn degree(p: u32) -> u32 {
    31 - p.leading_zeros()
}

/// Remainder of carry-less division `a mod b`, `b != 0`.
fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= db {
        let shift = (63 - a.leading_zeros()) - db;
        a ^= b << shift;
    }
    a
}

fn is_irreducible(modulus: u32, k: u32) -> bool {
    if degree(modulus) != k {
        return false;
    }
    // any factorization has a factor of degree <= k/2
    for d in 1..=k / 2 {
        for divisor in (1u64 << d)..(2u64 << d) {
            if poly_rem(modulus as u64, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

/// GF(2^k) as F_2[x] modulo an irreducible polynomial of degree k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryExtField {
    k: u32,
    modulus: u32,
}

impl BinaryExtField {
    /// The field with the built-in modulus for degree `k`.
    pub fn new(k: u32) -> Result<Self> {
        if !(1..=16).contains(&k) {
            return Err(Error::UnsupportedDegree(k));
        }
        Self::with_modulus(k, DEFAULT_MODULI[k as usize - 1])
    }

    /// The field with a caller-supplied modulus (bit `k` must be set).
    pub fn with_modulus(k: u32, modulus: u32) -> Result<Self> {
        if !(1..=16).contains(&k) {
            return Err(Error::UnsupportedDegree(k));
        }
        if !is_irreducible(modulus, k) {
            return Err(Error::ReducibleModulus { modulus, degree: k });
        }
        Ok(Self { k, modulus })
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn size(&self) -> u32 {
        1 << self.k
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    /// Carry-less product reduced modulo the field polynomial.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut prod: u64 = 0;
        let (a, mut b) = (a as u64, b as u64);
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                prod ^= a << shift;
            }
            b >>= 1;
            shift += 1;
        }
        poly_rem(prod, self.modulus as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse via a^(2^k - 2).
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(self.pow(a, (1u64 << self.k) - 2))
    }
}

/// Product `a * b` in `field`.
pub fn ext_field_mul(field: &BinaryExtField, a: u32, b: u32) -> u32 {
    field.mul(a, b)
}
