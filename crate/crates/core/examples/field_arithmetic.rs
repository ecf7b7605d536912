//! Prime fields and binary extension fields.
use ldlab::field::{BinaryExtField, PrimeField};

fn main() -> ldlab::Result<()> {
    let f7 = PrimeField::new(7)?;
    println!("in F_7: 3 + 5 = {}, 3 * 5 = {}, 3^-1 = {}", f7.add(3, 5), f7.mul(3, 5), f7.inv(3)?);

    let gf256 = BinaryExtField::new(8)?;
    let (a, b) = (0x53, 0xCA);
    println!(
        "in GF(2^8) mod {:#x}: {a:#x} * {b:#x} = {:#x}, {a:#x}^-1 = {:#x}",
        gf256.modulus(),
        gf256.mul(a, b),
        gf256.inv(a)?
    );
    Ok(())
}
