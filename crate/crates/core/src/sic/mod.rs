//! SIC families and the mutually unbiased POMs they induce.
//!
//! A fiducial ket generates `λ_{a,b} = X^{†b} Z^a |ψ><ψ| Z^{†a} X^b`. Treating these as the
//! trace-one line operators of the dual plane gives the point operators `τ_m^{(j)}`, whose
//! spectra are constant along each column. Conversely a rank-one `Σ_b τ_0^{(b)} - 1` built
//! from diagonal probability operators is a fiducial projector.

mod family;
mod fiducial;
mod mupom;
mod prob;
mod rank;
pub mod search;

pub use family::{generate_hw_sic, overlap_deviation, overlaps, verify_sic, SicFamily};
pub use fiducial::{
    ingest_fiducial, parse_fiducial, read_fiducial, Fiducial, FiducialJson, FiducialSource,
};
pub use mupom::{
    assert_column_constant, extract_mu_pom, group_columns_by_spectrum, match_columns,
    spectra_table, ColumnMatch, ColumnReport, Grouping, MuPomFamily, SpectraRow, SpectraTable,
    GROUP_TOL, SIC_TOL,
};
pub use prob::{
    diagonal_taus, fiducial_from_mu_pom, qutrit_family, solve_cyclic_probability, CyclicSolutions,
    FiducialCandidate, ProbabilityVector,
};
pub use rank::{
    build_sigma0_from_phases, phases_from_fiducial, rank_one_conditions, sigma0_diagonal,
    RankOneReport,
};
pub use search::{local_descent, search_fiducial, SearchConfig, SearchOutcome};
