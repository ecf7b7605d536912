//! Choose L and n for a target ε from a concentration constant.
use ldlab::certify::plan_parameters;

fn main() -> ldlab::Result<()> {
    for eps in [0.5, 0.25, 0.1] {
        let plan = plan_parameters(eps, 2, 0.66, 10)?;
        println!(
            "epsilon {eps}: L = {}, n = {}, t = {}, rate {:.4}, margin {:.4}",
            plan.l,
            plan.n,
            plan.t,
            plan.rate(),
            plan.margin
        );
    }
    Ok(())
}
