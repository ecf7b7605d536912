//! Gaussian elimination over F_q.

use crate::field::PrimeField;

/// Reduced row echelon form of a row-major `rows x cols` matrix.
///
/// Returns the pivot column of each nonzero row, in increasing order.
/// Pivots are chosen greedily, lowest column first.
pub fn row_reduce(field: PrimeField, m: &mut [u8], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(m[r * cols + c] as u32).expect("pivot is nonzero");
        for j in 0..cols {
            m[r * cols + j] = field.mul(m[r * cols + j] as u32, inv) as u8;
        }
        for i in 0..rows {
            let f = m[i * cols + c];
            if i == r || f == 0 {
                continue;
            }
            for j in 0..cols {
                let v = field.mul(f as u32, m[r * cols + j] as u32);
                m[i * cols + j] = field.sub(m[i * cols + j] as u32, v) as u8;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: PrimeField, m: &[u8], rows: usize, cols: usize) -> usize {
    let mut work = m.to_vec();
    row_reduce(field, &mut work, rows, cols).len()
}
