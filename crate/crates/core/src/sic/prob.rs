use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigensystem, matrix_rank, third_moment, HermitianOp, Spectrum};
use crate::weyl::{require_prime, MubFamily};

use super::fiducial::{Fiducial, FiducialSource};

/// Diagonal of a probability operator in its own basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityVector {
    entries: Vec<f64>,
}

impl ProbabilityVector {
    /// Entries must be `>= -1e-12` and sum to `1` within `1e-12`; small negatives are clamped.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Invalid("empty probability vector".into()));
        }
        if entries.iter().any(|p| !p.is_finite() || *p < -1e-12) {
            return Err(Error::Invalid(
                "probability entries must be nonnegative".into(),
            ));
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Invalid(format!("probabilities sum to {sum}, not 1")));
        }
        Ok(Self {
            entries: entries.into_iter().map(|p| p.max(0.0)).collect(),
        })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ_k p_k p_{k⊕m}`
    pub fn autocorrelation(&self, m: usize) -> f64 {
        let d = self.entries.len();
        (0..d)
            .map(|k| self.entries[k] * self.entries[(k + m) % d])
            .sum()
    }

    /// Max residual of `Σ_k p_k p_{k⊕m} = 2/(d+1)` (m = 0) and `1/(d+1)` (m = 1..(d-1)/2).
    pub fn cyclic_residual(&self) -> f64 {
        let d = self.entries.len();
        let t = 1.0 / (d + 1) as f64;
        (0..=d / 2)
            .map(|m| {
                let target = if m == 0 { 2.0 * t } else { t };
                (self.autocorrelation(m) - target).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Solutions of the cyclic-ansatz conditions for a given `d`.
#[derive(Clone, Debug)]
pub struct CyclicSolutions {
    pub d: usize,
    /// Distinct solutions up to cyclic shift and reflection.
    pub solutions: Vec<ProbabilityVector>,
    /// For `d = 3`, the admissible range of `p_1` for [`qutrit_family`].
    pub family_range: Option<(f64, f64)>,
}

/// `d = 3` family: `p_0 = (1 - p_1 + √(2p_1 - 3p_1²))/2`, `p_2 = 1 - p_0 - p_1`, for
/// `p_1 ∈ [0, 2/3]`.
pub fn qutrit_family(p1: f64) -> Option<ProbabilityVector> {
    let disc = 2.0 * p1 - 3.0 * p1 * p1;
    if !(0.0..=2.0 / 3.0).contains(&p1) || disc < -1e-15 {
        return None;
    }
    let p0 = (1.0 - p1 + disc.max(0.0).sqrt()) / 2.0;
    let p2 = 1.0 - p0 - p1;
    ProbabilityVector::new(vec![p0, p1, p2]).ok()
}

/// Solve `Σ_k p_k p_{k⊕m} = 2/(d+1)` for `m = 0` and `1/(d+1)` for `m = 1..(d-1)/2`.
///
/// Closed forms for `d = 2, 3`. For `d ≥ 5` the solution set is a continuum; seeded
/// Levenberg-Marquardt solves from `attempts` random starts are returned, deduplicated up to
/// cyclic shift and reflection. Solutions outside the cyclic ansatz are not sought.
pub fn solve_cyclic_probability(d: usize, seed: u64, attempts: usize) -> Result<CyclicSolutions> {
    require_prime(d)?;
    match d {
        2 => {
            let hi = (3.0 + 3f64.sqrt()) / 6.0;
            Ok(CyclicSolutions {
                d,
                solutions: vec![
                    ProbabilityVector::new(vec![hi, 1.0 - hi])?,
                    ProbabilityVector::new(vec![1.0 - hi, hi])?,
                ],
                family_range: None,
            })
        }
        3 => Ok(CyclicSolutions {
            d,
            solutions: vec![ProbabilityVector::new(vec![0.5, 0.5, 0.0])?],
            family_range: Some((0.0, 2.0 / 3.0)),
        }),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut found: Vec<Vec<f64>> = Vec::new();
            for _ in 0..attempts {
                let q0: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
                if let Some(p) = lm_solve(d, q0) {
                    let c = canonical_dihedral(&p);
                    if !found.iter().any(|f| max_diff(f, &c) < 1e-8) {
                        found.push(c);
                    }
                }
            }
            found.sort_by(|a, b| lex_cmp(b, a));
            let solutions = found
                .into_iter()
                .map(ProbabilityVector::new)
                .collect::<Result<Vec<_>>>()?;
            Ok(CyclicSolutions {
                d,
                solutions,
                family_range: None,
            })
        }
    }
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Lexicographically largest image under the dihedral group acting on indices.
fn canonical_dihedral(p: &[f64]) -> Vec<f64> {
    let d = p.len();
    let mut best: Option<Vec<f64>> = None;
    for s in 0..d {
        for refl in [false, true] {
            let v: Vec<f64> = (0..d)
                .map(|k| {
                    let idx = if refl { (s + d - k) % d } else { (s + k) % d };
                    p[idx]
                })
                .collect();
            let better = best.as_ref().is_none_or(|b| lex_cmp(&v, b).is_gt());
            if better {
                best = Some(v);
            }
        }
    }
    best.unwrap_or_default()
}

// Residuals in q with p = q²: Σp - 1 and autocorrelations minus targets.
fn residuals(d: usize, q: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let half = (d - 1) / 2;
    let t = 1.0 / (d + 1) as f64;
    let p: Vec<f64> = q.iter().map(|x| x * x).collect();
    let mut r = Vec::with_capacity(half + 2);
    let mut jac = Vec::with_capacity(half + 2);
    r.push(p.iter().sum::<f64>() - 1.0);
    jac.push(q.iter().map(|x| 2.0 * x).collect());
    for m in 0..=half {
        let target = if m == 0 { 2.0 * t } else { t };
        let ac: f64 = (0..d).map(|k| p[k] * p[(k + m) % d]).sum();
        r.push(ac - target);
        // ∂/∂q_i Σ_k p_k p_{k+m} = 2 q_i (p_{i+m} + p_{i-m})
        jac.push(
            (0..d)
                .map(|i| 2.0 * q[i] * (p[(i + m) % d] + p[(i + d - m) % d]))
                .collect(),
        );
    }
    (r, jac)
}

fn lm_solve(d: usize, mut q: Vec<f64>) -> Option<Vec<f64>> {
    let mut mu = 1e-3;
    let cost = |r: &[f64]| r.iter().map(|x| x * x).sum::<f64>();
    let (mut r, mut jac) = residuals(d, &q);
    let mut c = cost(&r);
    for _ in 0..500 {
        if c < 1e-30 {
            break;
        }
        // minimum-norm step: δ = -Jᵀ (J Jᵀ + μ I)⁻¹ r
        let n = r.len();
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                a[i][j] = jac[i].iter().zip(&jac[j]).map(|(x, y)| x * y).sum();
            }
            a[i][i] += mu;
        }
        let y = solve_spd(a, r.clone())?;
        let trial: Vec<f64> = (0..d)
            .map(|k| q[k] - (0..n).map(|i| jac[i][k] * y[i]).sum::<f64>())
            .collect();
        let (r2, j2) = residuals(d, &trial);
        let c2 = cost(&r2);
        if c2 < c {
            q = trial;
            r = r2;
            jac = j2;
            c = c2;
            mu = (mu * 0.3).max(1e-15);
        } else {
            mu *= 10.0;
            if mu > 1e8 {
                break;
            }
        }
    }
    if c > 1e-26 {
        return None;
    }
    let p: Vec<f64> = q.iter().map(|x| x * x).collect();
    let s: f64 = p.iter().sum();
    Some(p.iter().map(|x| x / s).collect())
}

// Gaussian elimination with partial pivoting on a small dense system.
fn solve_spd(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            let (top, rest) = a.split_at_mut(row);
            for (x, y) in rest[0][col..n].iter_mut().zip(&top[col][col..n]) {
                *x -= f * y;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = ((row + 1)..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// `τ_0^{(b)} = Σ_k p_k |k;b><k;b|` with the same `p` in every basis.
pub fn diagonal_taus(mub: &MubFamily, p: &ProbabilityVector) -> Result<Vec<HermitianOp>> {
    (0..=mub.d)
        .map(|b| mub.diagonal_operator(b, p.entries()))
        .collect()
}

/// Result of assembling `λ_0 = Σ_b τ_0^{(b)} - 1`.
#[derive(Clone, Debug)]
pub struct FiducialCandidate {
    pub lambda0: HermitianOp,
    pub lambda0_spectrum: Spectrum,
    /// Spectrum of `Σ_b τ_0^{(b)}`; `{2, 1, ..., 1}` in the rank-one case.
    pub sum_spectrum: Spectrum,
    pub third_moment: f64,
    pub rank: usize,
    /// Present when `λ_0` is a rank-one projector (within `1e-8`).
    pub fiducial: Option<Fiducial>,
}

impl FiducialCandidate {
    pub fn is_rank_one(&self) -> bool {
        self.fiducial.is_some()
    }
}

const OFF_DIAG_TOL: f64 = 1e-10;
const RANK_TOL: f64 = 1e-8;

/// `|μ_0><μ_0| = Σ_b τ_0^{(b)} - 1`, with each `τ_0^{(b)}` diagonal in MUB basis `b`.
pub fn fiducial_from_mu_pom(mub: &MubFamily, taus: &[HermitianOp]) -> Result<FiducialCandidate> {
    let d = mub.d;
    if taus.len() != d + 1 {
        return Err(Error::DimensionMismatch {
            expected: d + 1,
            found: taus.len(),
        });
    }
    for (b, tau) in taus.iter().enumerate() {
        if tau.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: tau.dim(),
            });
        }
        let rep = mub.in_basis(b, tau.mat());
        let mut off: f64 = 0.0;
        for r in 0..d {
            for c in 0..d {
                if r != c {
                    off = off.max(rep[(r, c)].norm());
                }
            }
        }
        if off > OFF_DIAG_TOL {
            return Err(Error::NotDiagonal {
                basis: b,
                residual: off,
            });
        }
    }
    let sum = HermitianOp::sum(d, taus);
    let lambda0 = sum.sub(&HermitianOp::identity(d));
    let es = hermitian_eigensystem(&lambda0)?;
    let sum_spectrum = hermitian_eigensystem(&sum)?.spectrum;
    let tm = third_moment(&lambda0);
    let rank = matrix_rank(&lambda0, RANK_TOL)?;
    let fiducial =
        if rank == 1 && (lambda0.trace() - 1.0).abs() <= RANK_TOL && (tm - 1.0).abs() <= RANK_TOL {
            Some(Fiducial::new(es.vector(0), FiducialSource::ClosedForm)?)
        } else {
            None
        };
    Ok(FiducialCandidate {
        lambda0,
        lambda0_spectrum: es.spectrum,
        sum_spectrum,
        third_moment: tm,
        rank,
        fiducial,
    })
}
