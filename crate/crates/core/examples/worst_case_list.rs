//! Exact worst-case list sizes by coset and exhaustive search.
use ldlab::code::random_generator;
use ldlab::oracle::{Oracle, SearchMethod};
use ldlab::Budget;

fn main() -> ldlab::Result<()> {
    let code = random_generator(2, 6, 18, 11)?;
    let oracle = Oracle::new(&code, Budget::default())?;
    for t in 0..=6 {
        let report = oracle.worst_case(t, SearchMethod::Coset)?;
        println!("t = {t}: worst list {:>3} at {:?}", report.max_list, report.witness);
    }
    let small = random_generator(3, 2, 5, 2)?;
    let oracle = Oracle::new(&small, Budget::default())?;
    let agree = (0..=5).all(|t| {
        oracle.worst_case(t, SearchMethod::Coset).unwrap().max_list
            == oracle.worst_case(t, SearchMethod::Exhaustive).unwrap().max_list
    });
    println!("coset and exhaustive search agree on a ternary code: {agree}");
    println!("distance and inner-product balls agree: {:?}", oracle.char_equivalence(&[0, 1, 2, 3, 4, 5])?);
    Ok(())
}
