//! Seeded numerical search for a Weyl-Heisenberg fiducial.
use mubsic::format::fmt_g;
use mubsic::sic::{overlap_deviation, search_fiducial, SearchConfig};

fn main() -> mubsic::Result<()> {
    let d = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let cfg = SearchConfig {
        seed: 1,
        ..SearchConfig::default()
    };
    let out = search_fiducial(d, &cfg)?;
    println!(
        "d = {d}: success {} after {} restarts, F = {}",
        out.success,
        out.restarts_run,
        fmt_g(out.objective)
    );
    println!(
        "overlap deviation {}",
        fmt_g(overlap_deviation(out.fiducial.ket()))
    );
    println!(
        "{}",
        serde_json::to_string(&out.fiducial.to_json()).expect("serializable")
    );
    Ok(())
}
