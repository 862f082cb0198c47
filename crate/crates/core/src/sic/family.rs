use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{hs_inner, HermitianOp};
use crate::weyl::{displacement, omega_pow};

use super::fiducial::Fiducial;

/// The `d²` projectors `λ_{a,b} = X^{†b} Z^a |ψ><ψ| Z^{†a} X^b`, slot `a·d + b`.
#[derive(Clone, Debug, Serialize)]
pub struct SicFamily {
    d: usize,
    #[serde(serialize_with = "ser_fiducial")]
    fiducial: Fiducial,
    projectors: Vec<HermitianOp>,
}

fn ser_fiducial<S: serde::Serializer>(f: &Fiducial, s: S) -> std::result::Result<S::Ok, S::Error> {
    f.to_json().serialize(s)
}

impl SicFamily {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn fiducial(&self) -> &Fiducial {
        &self.fiducial
    }

    pub fn projector(&self, a: usize, b: usize) -> &HermitianOp {
        &self.projectors[a * self.d + b]
    }

    pub fn projectors(&self) -> &[HermitianOp] {
        &self.projectors
    }

    pub fn into_projectors(self) -> Vec<HermitianOp> {
        self.projectors
    }

    /// Reassemble a family read from disk; only the shapes are checked here.
    pub fn from_projectors(fiducial: Fiducial, projectors: Vec<HermitianOp>) -> Result<Self> {
        let d = fiducial.d();
        if projectors.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: projectors.len(),
            });
        }
        if let Some(p) = projectors.iter().find(|p| p.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.dim(),
            });
        }
        Ok(SicFamily {
            d,
            fiducial,
            projectors,
        })
    }
}

pub fn generate_hw_sic(f: &Fiducial) -> SicFamily {
    let d = f.d();
    let mut projectors = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            let ket = displacement(d, a, b).apply(f.ket());
            projectors.push(HermitianOp::projector(&ket));
        }
    }
    SicFamily {
        d,
        fiducial: f.clone(),
        projectors,
    }
}

/// Max over pairs of `|tr(λ_μ λ_μ') - target|`, targets `1` on the diagonal and `1/(d+1)` off it.
pub fn verify_sic(s: &SicFamily) -> Result<f64> {
    let off = 1.0 / (s.d + 1) as f64;
    let mut dev: f64 = 0.0;
    for (p, a) in s.projectors.iter().enumerate() {
        for (q, b) in s.projectors.iter().enumerate().skip(p) {
            let target = if p == q { 1.0 } else { off };
            dev = dev.max((hs_inner(a, b)? - target).abs());
        }
    }
    Ok(dev)
}

/// `c_{a,b} = <ψ| X^{†b} Z^a |ψ>` for all `(a, b)`, slot `a·d + b`, for a unit ket.
pub fn overlaps(ket: &[Complex64]) -> Vec<Complex64> {
    let d = ket.len();
    let roots: Vec<Complex64> = (0..d).map(|k| omega_pow(d, k as i64)).collect();
    let mut out = vec![Complex64::new(0.0, 0.0); d * d];
    for b in 0..d {
        // (X^{†b} Z^a ψ)[n - b] = ω^{an} ψ[n]
        let u: Vec<Complex64> = (0..d)
            .map(|n| ket[(n + d - b) % d].conj() * ket[n])
            .collect();
        for a in 0..d {
            out[a * d + b] = u
                .iter()
                .enumerate()
                .map(|(n, &x)| x * roots[(a * n) % d])
                .sum();
        }
    }
    out
}

/// Max of `| |c_{a,b}|² - 1/(d+1) |` over `(a, b) ≠ (0, 0)`.
pub fn overlap_deviation(ket: &[Complex64]) -> f64 {
    let d = ket.len();
    let target = 1.0 / (d + 1) as f64;
    overlaps(ket)
        .iter()
        .skip(1)
        .map(|c| (c.norm_sqr() - target).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sic::fiducial::FiducialSource;

    #[test]
    fn builtin_families_are_sics() {
        for f in [Fiducial::qubit(), Fiducial::qutrit()] {
            let s = generate_hw_sic(&f);
            assert_eq!(s.projectors().len(), f.d() * f.d());
            assert!(verify_sic(&s).unwrap() <= 1e-12);
            assert_eq!(s.projector(0, 0), &f.projector());
            assert!(overlap_deviation(f.ket()) <= 1e-12);
        }
    }

    #[test]
    fn computational_state_is_not_a_sic() {
        let f = Fiducial::new(
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
            FiducialSource::ClosedForm,
        )
        .unwrap();
        let s = generate_hw_sic(&f);
        assert!((verify_sic(&s).unwrap() - 0.75).abs() < 1e-12);
        assert!((overlap_deviation(f.ket()) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn perturbed_fiducial_is_flagged() {
        let mut ket = Fiducial::qutrit().ket().to_vec();
        let (c, s) = (1e-3f64.cos(), 1e-3f64.sin());
        let (k0, k2) = (ket[0], ket[2]);
        ket[0] = k0 * c - k2 * s;
        ket[2] = k0 * s + k2 * c;
        let f = Fiducial::new(ket, FiducialSource::ClosedForm).unwrap();
        // second order in the angle: the fiducial is a critical point of the overlaps
        let dev = verify_sic(&generate_hw_sic(&f)).unwrap();
        assert!(dev > 1e-7 && dev < 1e-5, "{dev}");
    }

    #[test]
    fn overlaps_match_matrices() {
        let f = Fiducial::qutrit();
        let c = overlaps(f.ket());
        for a in 0..3 {
            for b in 0..3 {
                let v = displacement(3, a, b).apply(f.ket());
                let direct = crate::matrix::inner(f.ket(), &v);
                assert!((direct - c[a * 3 + b]).norm() < 1e-14);
            }
        }
    }
}
