//! Random, Reed-Muller, Wozencraft and punctured codes, and the .gen format.
use ldlab::code::{
    min_distance, parse_gen, puncture, random_generator, reed_muller, to_gen_string, weight_profile, wozencraft,
};
use ldlab::Budget;

fn main() -> ldlab::Result<()> {
    let budget = Budget::default();

    let random = random_generator(3, 2, 6, 42)?;
    println!("random [6, 2] code over F_3, rank {}:\n{}", random.rank(), to_gen_string(&random));

    let rm = reed_muller(1, 3, &budget)?;
    let profile = weight_profile(&rm, &budget)?;
    println!("RM(1,3) weights: {:?}", profile.counts);
    println!("RM(1,3) minimum distance: {:?}", min_distance(&rm, &budget)?);

    let woz = wozencraft(4, 2, 7)?;
    println!("Wozencraft code: k = {}, n = {}, rate {:.3}", woz.k(), woz.n(), woz.rate());

    let punctured = puncture(&rm, 12, 1)?;
    println!("RM(1,3) punctured to n = {}:\n{}", punctured.n(), to_gen_string(&punctured));

    let text = to_gen_string(&punctured);
    assert_eq!(to_gen_string(&parse_gen(&text)?), text);
    Ok(())
}
