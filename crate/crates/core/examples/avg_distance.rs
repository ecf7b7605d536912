//! Average pairwise distance over L-sets and the ε it supports.
use ldlab::certify::avg_distance_certificate;
use ldlab::code::reed_muller;
use ldlab::Budget;

fn main() -> ldlab::Result<()> {
    let budget = Budget::default();
    let rm = reed_muller(1, 4, &budget)?;
    for l in [2, 3, 4] {
        let cert = avg_distance_certificate(&rm, l, &budget)?;
        println!(
            "RM(1,4), L = {l}: min average distance {}, eta {}, epsilon^2 {} (epsilon {:.4}{})",
            cert.min_avg_distance,
            cert.eta,
            cert.epsilon_sq,
            cert.epsilon,
            if cert.vacuous { ", vacuous" } else { "" }
        );
    }
    Ok(())
}
