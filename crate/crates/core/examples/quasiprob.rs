//! Quasi-probabilities of a mixed qutrit state on the dual plane, and its line probabilities.
use mubsic::frames::{point_frame_from_mub, quasi_distribution};
use mubsic::plane::{build_dapg, Point};
use mubsic::weyl::build_mub;
use mubsic::HermitianOp;
use num_complex::Complex64;

fn main() -> mubsic::Result<()> {
    let d = 3;
    let s = 1.0 / 3f64.sqrt();
    let plus = [Complex64::new(s, 0.0); 3];
    let zero = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ];
    let rho = HermitianOp::projector(&plus)
        .scale(0.7)
        .add(&HermitianOp::projector(&zero).scale(0.3));

    let pf = point_frame_from_mub(&build_mub(d)?)?;
    let geom = build_dapg(d)?;
    let q = quasi_distribution(&rho, &pf)?;
    for j in 0..=d {
        let col: Vec<String> = (0..d)
            .map(|m| format!("{:.4}", q.get(Point { m, j })))
            .collect();
        println!("column {j}: {}", col.join(" "));
    }
    let p = q.line_probabilities(&geom)?;
    println!("line probabilities sum to {:.12}", p.iter().sum::<f64>());
    Ok(())
}
