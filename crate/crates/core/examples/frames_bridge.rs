//! Point operators from MUB projectors or the h/g basis, lifted to line operators and back.
use mubsic::format::fmt_g;
use mubsic::frames::{
    line_ops_from_points, point_frame_from_hg, point_frame_from_mub, point_ops_from_lines,
    scaled_so, so_deviation, verify_point_line_products,
};
use mubsic::plane::build_dapg;
use mubsic::weyl::{build_hg_basis, build_mub, build_weyl_pair};

fn main() -> mubsic::Result<()> {
    let d = 5;
    let geom = build_dapg(d)?;

    let pf = point_frame_from_mub(&build_mub(d)?)?;
    let lf = line_ops_from_points(&pf, &geom)?;
    println!(
        "MUB points: beta {}, line alpha {}",
        fmt_g(pf.beta()),
        fmt_g(lf.alpha())
    );
    let report = verify_point_line_products(&pf, &lf, &geom)?;
    println!(
        "point-line products deviation {}",
        fmt_g(report.max_deviation())
    );

    let back = point_ops_from_lines(&lf, &geom)?;
    let err = pf
        .traceless_ops()
        .iter()
        .zip(back.traceless_ops())
        .map(|(a, b)| a.mat().max_abs_diff(b.mat()))
        .fold(0.0, f64::max);
    println!("round trip deviation {}", fmt_g(err));

    let hg = point_frame_from_hg(&build_hg_basis(
        &build_weyl_pair(d)?,
        None,
        (0.5 / d as f64).sqrt(),
    )?)?;
    println!(
        "h/g points: beta {}, frame deviation {}",
        fmt_g(hg.beta()),
        fmt_g(hg.verify()?)
    );
    // with h/g points the scaled line operators are orthonormal
    let hg_lines = line_ops_from_points(&hg, &geom)?;
    println!(
        "scaled line operators orthonormality {}",
        fmt_g(so_deviation(&scaled_so(&hg_lines)?)?)
    );
    Ok(())
}
