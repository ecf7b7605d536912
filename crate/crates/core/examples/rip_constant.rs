//! Restricted isometry constant of the normalized simplex matrix.
use ldlab::certify::{rip_constant, rip_implied_decodability};
use ldlab::code::random_generator;
use ldlab::Budget;

fn main() -> ldlab::Result<()> {
    let code = random_generator(2, 4, 24, 5)?;
    for s in 1..=4 {
        let report = rip_constant(&code, s, &Budget::default())?;
        println!("s = {s}: delta = {:.6}, witness {:?}", report.delta, report.witness.support());
        if let Some(implied) = report.implied {
            println!("  implies radius {:.4} with list {}", implied.radius, implied.list);
        }
    }
    let boxed = rip_implied_decodability(0.5, 16, 2).expect("positive radius");
    println!("delta = 1/2, L = 16: boxed radius {:?}", boxed.boxed_radius);
    Ok(())
}
