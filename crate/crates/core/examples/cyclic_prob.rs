//! Probability vectors of the cyclic ansatz and the fiducial they assemble into.
use mubsic::format::fmt_g;
use mubsic::sic::{diagonal_taus, fiducial_from_mu_pom, qutrit_family, solve_cyclic_probability};
use mubsic::weyl::build_mub;

fn main() -> mubsic::Result<()> {
    for d in [2, 3, 5] {
        let sols = solve_cyclic_probability(d, 7, 20)?;
        println!(
            "d = {d}: {} solutions, qutrit range {:?}",
            sols.solutions.len(),
            sols.family_range
        );
        let mub = build_mub(d)?;
        for p in sols.solutions.iter().take(2) {
            let cand = fiducial_from_mu_pom(&mub, &diagonal_taus(&mub, p)?)?;
            let e: Vec<String> = p.entries().iter().map(|&x| fmt_g(x)).collect();
            println!(
                "  p = [{}], rank {}, rank one {}",
                e.join(", "),
                cand.rank,
                cand.is_rank_one()
            );
        }
    }
    let p = qutrit_family(0.25).expect("inside the admissible range");
    println!(
        "qutrit family at p_1 = 0.25: residual {}",
        fmt_g(p.cyclic_residual())
    );
    Ok(())
}
