//! MU-POM spectra of the d = 5 fixture and the grouping of columns by spectrum.
use mubsic::plane::build_dapg;
use mubsic::sic::{
    assert_column_constant, extract_mu_pom, generate_hw_sic, group_columns_by_spectrum,
    read_fiducial, GROUP_TOL, SIC_TOL,
};

fn main() -> mubsic::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/fiducials/5.json");
    let fid = read_fiducial(path)?;
    let mupom = extract_mu_pom(&generate_hw_sic(&fid), &build_dapg(fid.d())?, SIC_TOL)?;
    let table = mupom.spectra_table();
    print!("{}", table.to_csv_string());
    println!(
        "columns constant: {}",
        assert_column_constant(&table, GROUP_TOL).passed()
    );
    let grouping = group_columns_by_spectrum(&table, GROUP_TOL);
    println!(
        "group sizes {:?}, partition {:?}",
        grouping.sizes(),
        grouping.partition()
    );
    Ok(())
}
