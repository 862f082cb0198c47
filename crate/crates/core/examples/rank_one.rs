//! Full and reduced rank-one conditions on a fiducial and on a random ket.
use mubsic::sic::{rank_one_conditions, read_fiducial, search::random_start};

fn main() -> mubsic::Result<()> {
    let fid = read_fiducial(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/fiducials/7a.json"
    ))?;
    let r = rank_one_conditions(fid.ket());
    println!("fiducial: full {:e}, reduced {:e}", r.full, r.reduced);
    let r = rank_one_conditions(&random_start(7, 42, 0));
    println!("random:   full {:e}, reduced {:e}", r.full, r.reduced);
    Ok(())
}
