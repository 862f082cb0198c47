//! Built-in qubit and qutrit fiducials: the SIC they generate and the MU-POMs inside it.
use mubsic::format::fmt_g;
use mubsic::plane::build_dapg;
use mubsic::sic::{extract_mu_pom, generate_hw_sic, verify_sic, Fiducial, SIC_TOL};

fn main() -> mubsic::Result<()> {
    for fid in [Fiducial::qubit(), Fiducial::qutrit()] {
        let d = fid.d();
        let sic = generate_hw_sic(&fid);
        println!("d = {d}: SIC deviation {}", fmt_g(verify_sic(&sic)?));
        let mupom = extract_mu_pom(&sic, &build_dapg(d)?, SIC_TOL)?;
        println!("  MU-POM deviation {}", fmt_g(mupom.verify()?));
        for j in 0..=d {
            let s: Vec<String> = mupom
                .spectrum(0, j)
                .values
                .iter()
                .map(|&x| fmt_g(x))
                .collect();
            println!("  column {j}: {}", s.join(" "));
        }
    }
    Ok(())
}
