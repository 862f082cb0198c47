//! Clock/shift pair, the d + 1 mutually unbiased bases and the h/g operator basis.
use mubsic::format::fmt_g;
use mubsic::weyl::{
    build_hg_basis, build_mub, build_weyl_pair, commuting_classes, verify_mub,
    verify_rotation_action,
};

fn main() -> mubsic::Result<()> {
    let d = 5;
    let wp = build_weyl_pair(d)?;
    let mub = build_mub(d)?;
    println!(
        "d = {d}: {} bases, unbiasedness deviation {}",
        mub.bases.len(),
        fmt_g(verify_mub(&mub))
    );

    for class in commuting_classes(&wp)? {
        println!("class {:?}", class.members(d));
    }

    let hg = build_hg_basis(&wp, None, (0.5 / d as f64).sqrt())?;
    println!(
        "rotation law deviation {}",
        fmt_g(verify_rotation_action(&hg))
    );
    Ok(())
}
