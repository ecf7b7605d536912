//! The simplex encoding turns Hamming distance into an inner product.
use ldlab::simplex::{encode_word, simplex_inner_product, simplex_inner_product_complex};

fn main() -> ldlab::Result<()> {
    let q = 5;
    let x = [0u8, 1, 2, 3, 4, 0];
    let y = [0u8, 4, 2, 1, 4, 3];
    let d = x.iter().zip(&y).filter(|(a, b)| a != b).count();

    let exact = simplex_inner_product(q, &x, &y)?;
    let summed = simplex_inner_product_complex(q, &x, &y)?;
    println!("d = {d}, (q-1)n - q d = {}", (q as i64 - 1) * 6 - q as i64 * d as i64);
    println!("agreement count: {exact}, complex sum: {:.12} + {:.1e}i", summed.re, summed.im);

    let phi = encode_word(q, &x)?;
    println!("‖φ(x)‖₂² = {:.6} = n(q-1) = {}", phi.l2_norm_sq(), 6 * (q - 1));
    Ok(())
}
