use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{norm, HermitianOp};
use crate::weyl::{omega_pow, require_prime};

/// Where a fiducial came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiducialSource {
    ClosedForm,
    Searched,
    Ingested,
}

impl fmt::Display for FiducialSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ClosedForm => "closed-form",
            Self::Searched => "searched",
            Self::Ingested => "ingested",
        })
    }
}

/// Unit ket whose Weyl-Heisenberg orbit is a candidate SIC. The global phase is fixed so that
/// the first nonzero component is real and nonnegative.
#[derive(Clone, Debug, PartialEq)]
pub struct Fiducial {
    d: usize,
    ket: Vec<Complex64>,
    source: FiducialSource,
}

/// Wire form: `{ "d": d, "ket": [[re, im], ...] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiducialJson {
    pub d: usize,
    pub ket: Vec<[f64; 2]>,
}

const NONZERO: f64 = 1e-12;

impl Fiducial {
    /// Normalizes `ket` (any nonzero norm) and fixes its phase.
    pub fn new(ket: Vec<Complex64>, source: FiducialSource) -> Result<Self> {
        let d = ket.len();
        require_prime(d)?;
        if ket.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let n = norm(&ket);
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        let mut ket: Vec<Complex64> = ket.into_iter().map(|z| z / n).collect();
        if let Some(first) = ket.iter().find(|z| z.norm() > NONZERO).copied() {
            let phase = first.conj() / first.norm();
            for z in &mut ket {
                *z *= phase;
            }
        }
        Ok(Self { d, ket, source })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ket(&self) -> &[Complex64] {
        &self.ket
    }

    pub fn source(&self) -> FiducialSource {
        self.source
    }

    pub fn projector(&self) -> HermitianOp {
        HermitianOp::projector(&self.ket)
    }

    /// `cos(θ/2)|0> + e^{iπ/4} sin(θ/2)|1>` with `cos θ = 1/√3`: Bloch vector `(1,1,1)/√3`.
    pub fn qubit() -> Self {
        let theta = (1.0 / 3f64.sqrt()).acos();
        let ket = vec![
            Complex64::new((theta / 2.0).cos(), 0.0),
            Complex64::from_polar((theta / 2.0).sin(), std::f64::consts::FRAC_PI_4),
        ];
        Self::new(ket, FiducialSource::ClosedForm).expect("valid ket")
    }

    /// `(|0> - ω²|1>)/√2`
    pub fn qutrit() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let ket = vec![
            Complex64::new(s, 0.0),
            -omega_pow(3, 2) * s,
            Complex64::new(0.0, 0.0),
        ];
        Self::new(ket, FiducialSource::ClosedForm).expect("valid ket")
    }

    pub fn to_json(&self) -> FiducialJson {
        FiducialJson {
            d: self.d,
            ket: self.ket.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// `|<self|other>|²`
    pub fn fidelity(&self, other: &[Complex64]) -> f64 {
        crate::matrix::inner(&self.ket, other).norm_sqr()
    }
}

/// Parse a fiducial file; `d` is the expected dimension.
pub fn parse_fiducial(text: &str, d: usize) -> Result<Fiducial> {
    let j: FiducialJson = serde_json::from_str(text)?;
    if j.d != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: j.d,
        });
    }
    if j.ket.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: j.ket.len(),
        });
    }
    let ket: Vec<Complex64> = j
        .ket
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    let n = norm(&ket);
    if n == 0.0 {
        return Err(Error::ZeroVector);
    }
    if (n - 1.0).abs() > 1e-6 {
        return Err(Error::NotNormalized { norm: n });
    }
    Fiducial::new(ket, FiducialSource::Ingested)
}

/// Read a published (or previously saved) fiducial from a JSON file.
pub fn ingest_fiducial(path: impl AsRef<Path>, d: usize) -> Result<Fiducial> {
    let text = std::fs::read_to_string(path)?;
    parse_fiducial(&text, d)
}

/// Read a fiducial file without knowing `d` in advance.
pub fn read_fiducial(path: impl AsRef<Path>) -> Result<Fiducial> {
    let text = std::fs::read_to_string(path)?;
    let j: FiducialJson = serde_json::from_str(&text)?;
    parse_fiducial(&text, j.d)
}
