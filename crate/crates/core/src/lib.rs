//! Mutually unbiased operators, symmetric operators and the dual affine plane that ties them
//! together in prime dimension.
//!
//! Points of a dual affine plane of order `d` carry operators `t_m^{(j)}` forming `d + 1`
//! mutually orthogonal regular simplexes; lines carry the sums of the point operators on them
//! and form one `(d² - 1)`-simplex. With projectors onto mutually unbiased bases as points the
//! lines are an orthogonal operator basis; with SIC projectors as lines the points are `d + 1`
//! mutually unbiased POMs. The crate builds both directions, the Weyl-Heisenberg machinery
//! that generates lines from a fiducial line, and a numerical fiducial search.
//!
//! Modules:
//! - [`matrix`]: dense complex matrices, Hermitian operators, Jacobi eigensolver.
//! - [`weyl`]: clock/shift pair, monomials, MUBs, commuting classes, `h`/`g` basis.
//! - [`plane`]: affine and dual affine planes of prime order.
//! - [`frames`]: point and line frames, the bridges between them, quasi-probabilities.
//! - [`sic`]: SIC generation, MU-POM extraction and spectra, fiducial construction and search.
//! - [`cli`]: the `mubsic` command-line front end.

pub mod cli;
pub mod error;
pub mod format;
pub mod frames;
pub mod matrix;
pub mod plane;
pub mod sic;
pub mod weyl;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, HermitianOp, Spectrum};
