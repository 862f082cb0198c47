use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianOp};
use crate::weyl::{monomial_unchecked, require_odd_prime};

use super::family::overlaps;

/// Class generator `M_{j,k}`: `X^k Z^{kj}` for `j < d`, `Z^k` for `j = d`.
fn generator(d: usize, j: usize, k: usize) -> ComplexMatrix {
    if j == d {
        monomial_unchecked(d, 0, k as i64)
    } else {
        monomial_unchecked(d, k as i64, (k * j) as i64)
    }
}

/// `σ_0 = (1/d)[1 + (1/√(d+1)) Σ_{j,k} (e^{iφ_{j,k}} M_{j,k} + h.c.)]`, `phases[j][k-1]` for
/// `j = 0..=d`, `k = 1..=(d-1)/2`.
///
/// In the computational basis the diagonal is `(1/d)[1 + (2/√(d+1)) Σ_k cos(φ_{d,k} + 2πkn/d)]`
/// and `(σ_0)_{n⊕k, n} = (1/(d√(d+1))) Σ_{j<d} e^{iφ_{j,k}} ω^{njk}`.
pub fn build_sigma0_from_phases(d: usize, phases: &[Vec<f64>]) -> Result<HermitianOp> {
    require_odd_prime(d)?;
    let half = (d - 1) / 2;
    let count: usize = phases.iter().map(Vec::len).sum();
    if phases.len() != d + 1 || phases.iter().any(|p| p.len() != half) {
        return Err(Error::PhaseCount {
            expected: (d + 1) * half,
            found: count,
        });
    }
    let c = 1.0 / (d as f64 + 1.0).sqrt();
    let mut acc = ComplexMatrix::identity(d);
    for (j, row) in phases.iter().enumerate() {
        for (idx, &phi) in row.iter().enumerate() {
            let term = generator(d, j, idx + 1).scale(Complex64::from_polar(c, phi));
            acc = &(&acc + &term) + &term.adjoint();
        }
    }
    HermitianOp::new(acc.scale_re(1.0 / d as f64))
}

/// `φ_{j,k} = arg <ψ|M_{j,k}†|ψ>`, so that `build_sigma0_from_phases` reproduces `|ψ><ψ|`
/// whenever `ψ` is a fiducial.
pub fn phases_from_fiducial(ket: &[Complex64]) -> Result<Vec<Vec<f64>>> {
    let d = ket.len();
    require_odd_prime(d)?;
    let half = (d - 1) / 2;
    Ok((0..=d)
        .map(|j| {
            (1..=half)
                .map(|k| {
                    let m = generator(d, j, k).adjoint();
                    crate::matrix::inner(ket, &m.apply(ket)).arg()
                })
                .collect()
        })
        .collect())
}

/// Deviations of `|<ψ|X^a Z^b|ψ>|²` from `1/(d+1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankOneReport {
    /// Max over all `(a, b) ≠ (0, 0)`.
    pub full: f64,
    /// Max over the `d(d-1)/2` monomials `X^k Z^{-mk}`, `k = 1..(d-1)/2`, `m = 0..d-1`.
    pub reduced: f64,
}

impl RankOneReport {
    pub fn full_passes(&self, tol: f64) -> bool {
        self.full <= tol
    }

    pub fn reduced_passes(&self, tol: f64) -> bool {
        self.reduced <= tol
    }
}

/// Both deviation sets for a unit ket. For `d = 2` the reduced set is the full set.
pub fn rank_one_conditions(ket: &[Complex64]) -> RankOneReport {
    let d = ket.len();
    let target = 1.0 / (d + 1) as f64;
    let c = overlaps(ket);
    let dev = |a: usize, b: usize| (c[a * d + b].norm_sqr() - target).abs();
    let full = (0..d * d)
        .skip(1)
        .map(|i| dev(i / d, i % d))
        .fold(0.0, f64::max);
    if d == 2 {
        return RankOneReport {
            full,
            reduced: full,
        };
    }
    // |<X^k Z^{-mk}>| = |<X^{†k} Z^{mk}>| = |c_{mk, k}|
    let mut reduced: f64 = 0.0;
    for k in 1..=(d - 1) / 2 {
        for m in 0..d {
            reduced = reduced.max(dev((m * k) % d, k));
        }
    }
    RankOneReport { full, reduced }
}

/// Closed form of `(σ_0)_{n,n}` from the class-`d` phases `φ_{d,k}`.
pub fn sigma0_diagonal(d: usize, phases_d: &[f64], n: usize) -> f64 {
    let c = 2.0 / (d as f64 + 1.0).sqrt();
    let s: f64 = phases_d
        .iter()
        .enumerate()
        .map(|(i, &phi)| (phi + 2.0 * PI * ((i + 1) * n) as f64 / d as f64).cos())
        .sum();
    (1.0 + c * s) / d as f64
}
