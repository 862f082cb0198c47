//! Affine and dual affine planes of order 3, checked and exported.
use mubsic::plane::{
    build_apg, build_dapg, export_apg, export_incidence, verify_incidence, ExportFormat, Point,
};

fn main() -> mubsic::Result<()> {
    let apg = build_apg(3)?;
    println!(
        "affine plane: {} points, {} lines, violations {:?}",
        apg.num_points(),
        apg.num_lines(),
        apg.verify()
    );

    let dapg = build_dapg(3)?;
    let report = verify_incidence(&dapg);
    println!(
        "dual plane: {} points, {} lines, passed {}",
        dapg.num_points(),
        dapg.num_lines(),
        report.passed()
    );
    println!(
        "lines through (1, 0): {:?}",
        dapg.lines_through(Point { m: 1, j: 0 })?
    );

    println!("{}", export_incidence(&dapg, ExportFormat::Dot));
    println!("{}", export_apg(&apg, ExportFormat::Json));
    Ok(())
}
