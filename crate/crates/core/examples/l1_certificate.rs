//! Certify list decodability with the ℓ1 condition, then confirm with the oracle.
use ldlab::certify::{l1_certificate, l1_certificate_with, L1Mode, Verdict};
use ldlab::code::random_generator;
use ldlab::oracle::{worst_case_list_size, SearchMethod};
use ldlab::Budget;

fn main() -> ldlab::Result<()> {
    let budget = Budget::default();
    let mut certified = 0;
    for seed in 0..200 {
        let code = random_generator(2, 3, 10, seed)?;
        let cert = l1_certificate(&code, 2, 0.8, &budget)?;
        if cert.verdict != Verdict::Holds {
            continue;
        }
        certified += 1;
        let t = cert.radius.expect("epsilon < 1");
        let report = worst_case_list_size(&code, t, SearchMethod::Coset, &budget)?;
        assert!(report.max_list <= cert.list_bound());
        if certified == 1 {
            println!("seed {seed}: {}", serde_json::to_string_pretty(&cert.to_report())?);
            println!("oracle at t = {t}: worst list {}", report.max_list);
        }
    }
    println!("{certified} of 200 random [10, 3] codes certified; all confirmed");

    let code = random_generator(2, 8, 20, 3)?;
    let greedy = l1_certificate_with(&code, 4, 0.5, L1Mode::GreedyLowerBound, &budget)?;
    println!("greedy lower bound on a [20, 8] code: {:.3} ({:?})", greedy.value, greedy.verdict);
    Ok(())
}
