//! Clock and shift operators, the monomial basis `X^a Z^b`, mutually unbiased bases in
//! prime dimension and the Hermitian `h`/`g` basis built from commuting classes.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{inner, ComplexMatrix, HermitianOp, I, ONE, ZERO};

pub fn is_prime(d: usize) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= d {
        if d.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

pub fn require_prime(d: usize) -> Result<()> {
    if is_prime(d) {
        Ok(())
    } else {
        Err(Error::NotPrime(d))
    }
}

pub fn require_odd_prime(d: usize) -> Result<()> {
    require_prime(d)?;
    if d == 2 {
        return Err(Error::NotOddPrime(d));
    }
    Ok(())
}

/// `ω^k` with `ω = e^{2πi/d}`, exponent reduced mod d first.
pub fn omega_pow(d: usize, k: i64) -> Complex64 {
    let e = k.rem_euclid(d as i64) as f64;
    Complex64::from_polar(1.0, 2.0 * PI * e / d as f64)
}

/// The Weyl pair: `X|n> = |n+1>`, `Z|n> = ω^n |n>`.
#[derive(Clone, Debug)]
pub struct WeylPair {
    d: usize,
    x: ComplexMatrix,
    z: ComplexMatrix,
    omega: Complex64,
}

pub fn build_weyl_pair(d: usize) -> Result<WeylPair> {
    require_prime(d)?;
    let x = ComplexMatrix::from_fn(d, |r, c| if r == (c + 1) % d { ONE } else { ZERO });
    let z = ComplexMatrix::from_fn(d, |r, c| if r == c { omega_pow(d, r as i64) } else { ZERO });
    Ok(WeylPair {
        d,
        x,
        z,
        omega: omega_pow(d, 1),
    })
}

impl WeylPair {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn x(&self) -> &ComplexMatrix {
        &self.x
    }

    pub fn z(&self) -> &ComplexMatrix {
        &self.z
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    /// `X^a Z^b`, with entries `<n+a| X^a Z^b |n> = ω^{bn}`.
    pub fn monomial(&self, a: usize, b: usize) -> Result<ComplexMatrix> {
        for i in [a, b] {
            if i >= self.d {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    bound: self.d,
                });
            }
        }
        Ok(monomial_unchecked(self.d, a as i64, b as i64))
    }

    /// Displacement `X^{†b} Z^a` that generates SIC family member `(a, b)`.
    pub fn displacement(&self, a: usize, b: usize) -> ComplexMatrix {
        displacement(self.d, a, b)
    }
}

/// `X^a Z^b` for arbitrary integer exponents.
pub(crate) fn monomial_unchecked(d: usize, a: i64, b: i64) -> ComplexMatrix {
    let a = a.rem_euclid(d as i64) as usize;
    let mut m = ComplexMatrix::zeros(d);
    for n in 0..d {
        m[((n + a) % d, n)] = omega_pow(d, b * n as i64);
    }
    m
}

/// `X^{†b} Z^a`: maps `|n>` to `ω^{an} |n - b>`.
pub(crate) fn displacement(d: usize, a: usize, b: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d);
    for n in 0..d {
        m[((n + d - b % d) % d, n)] = omega_pow(d, (a * n) as i64);
    }
    m
}

/// The `d + 1` mutually unbiased bases; `bases[b][m]` is the ket `|m; b>`, `b = d` computational.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MubFamily {
    pub d: usize,
    #[serde(with = "kets_serde")]
    pub bases: Vec<Vec<Vec<Complex64>>>,
}

mod kets_serde {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    type Raw = Vec<Vec<Vec<[f64; 2]>>>;

    pub fn serialize<S: Serializer>(v: &[Vec<Vec<Complex64>>], s: S) -> Result<S::Ok, S::Error> {
        let raw: Raw = v
            .iter()
            .map(|b| {
                b.iter()
                    .map(|k| k.iter().map(|z| [z.re, z.im]).collect())
                    .collect()
            })
            .collect();
        raw.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<Vec<Vec<Complex64>>>, D::Error> {
        let raw = Raw::deserialize(d)?;
        Ok(raw
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|k| {
                        k.into_iter()
                            .map(|[re, im]| Complex64::new(re, im))
                            .collect()
                    })
                    .collect()
            })
            .collect())
    }
}

impl MubFamily {
    pub fn ket(&self, m: usize, b: usize) -> &[Complex64] {
        &self.bases[b][m]
    }

    pub fn projector(&self, m: usize, b: usize) -> HermitianOp {
        HermitianOp::projector(&self.bases[b][m])
    }

    /// Operator diagonal in basis `b` with the given weights: `Σ_k w_k |k;b><k;b|`.
    pub fn diagonal_operator(&self, b: usize, weights: &[f64]) -> Result<HermitianOp> {
        if weights.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: weights.len(),
            });
        }
        let mut acc = ComplexMatrix::zeros(self.d);
        for (k, &w) in weights.iter().enumerate() {
            acc = &acc + &ComplexMatrix::projector(&self.bases[b][k]).scale_re(w);
        }
        HermitianOp::new(acc)
    }

    /// Matrix elements `<k;b| op |k';b>`.
    pub fn in_basis(&self, b: usize, op: &ComplexMatrix) -> ComplexMatrix {
        let kets = &self.bases[b];
        let applied: Vec<Vec<Complex64>> = kets.iter().map(|k| op.apply(k)).collect();
        ComplexMatrix::from_fn(self.d, |r, c| inner(&kets[r], &applied[c]))
    }
}

/// Basis `b < d` has kets `(1/√d) Σ_n ω^{b·n(n-1)/2 + m·n} |n>` for odd d (σ_x, σ_y eigenbases for
/// d = 2); basis `d` is computational.
pub fn build_mub(d: usize) -> Result<MubFamily> {
    require_prime(d)?;
    let s = 1.0 / (d as f64).sqrt();
    let mut bases = Vec::with_capacity(d + 1);
    if d == 2 {
        // σ_x and σ_y eigenbases; m = 0 is the +1 eigenvector.
        let sx = vec![
            vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
            vec![Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
        ];
        let sy = vec![
            vec![Complex64::new(s, 0.0), Complex64::new(0.0, s)],
            vec![Complex64::new(s, 0.0), Complex64::new(0.0, -s)],
        ];
        bases.push(sx);
        bases.push(sy);
    } else {
        for b in 0..d {
            let basis = (0..d)
                .map(|m| {
                    (0..d)
                        .map(|n| {
                            // (b/2) n(n-1) evaluated as b · T(n), T(n) = n(n-1)/2 exact
                            let tri = (n * (n.saturating_sub(1)) / 2) % d;
                            omega_pow(d, (b * tri + m * n) as i64) * s
                        })
                        .collect()
                })
                .collect();
            bases.push(basis);
        }
    }
    let computational = (0..d)
        .map(|m| (0..d).map(|n| if n == m { ONE } else { ZERO }).collect())
        .collect();
    bases.push(computational);
    Ok(MubFamily { d, bases })
}

/// Max over ket pairs of `| |<m;b|m';b'>|² - target |`, targets `{1, 0, 1/d}`.
pub fn verify_mub(family: &MubFamily) -> f64 {
    let d = family.d;
    let unbiased = 1.0 / d as f64;
    let mut dev: f64 = 0.0;
    for (b, basis) in family.bases.iter().enumerate() {
        for (m, ket) in basis.iter().enumerate() {
            for (b2, basis2) in family.bases.iter().enumerate().skip(b) {
                for (m2, ket2) in basis2.iter().enumerate() {
                    if b2 == b && m2 < m {
                        continue;
                    }
                    let target = match (b == b2, m == m2) {
                        (true, true) => 1.0,
                        (true, false) => 0.0,
                        (false, _) => unbiased,
                    };
                    let p = inner(ket, ket2).norm_sqr();
                    dev = dev.max((p - target).abs());
                }
            }
        }
    }
    dev
}

/// One commuting class; `generators` are `(a, b)` exponents of `X^a Z^b`, one per `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingClass {
    pub label: usize,
    pub generators: Vec<(usize, usize)>,
}

impl CommutingClass {
    /// Generators together with their adjoints (up to phase): `(-a, -b)`.
    pub fn members(&self, d: usize) -> Vec<(usize, usize)> {
        let mut out = self.generators.clone();
        out.extend(
            self.generators
                .iter()
                .map(|&(a, b)| ((d - a) % d, (d - b) % d)),
        );
        out
    }
}

/// Class `d` holds `Z^k`; class `j < d` holds `X^k Z^{kj}`, for `k = 1..=(d-1)/2`.
pub fn commuting_classes(wp: &WeylPair) -> Result<Vec<CommutingClass>> {
    let d = wp.d;
    require_odd_prime(d)?;
    let half = (d - 1) / 2;
    let mut classes = Vec::with_capacity(d + 1);
    for j in 0..d {
        classes.push(CommutingClass {
            label: j,
            generators: (1..=half).map(|k| (k, (k * j) % d)).collect(),
        });
    }
    classes.push(CommutingClass {
        label: d,
        generators: (1..=half).map(|k| (0, k)).collect(),
    });
    Ok(classes)
}

/// `h_{j,k} = ζ M + ζ* M†`, `g_{j,k} = -i(ζ M - ζ* M†)` for each class generator `M`.
#[derive(Clone, Debug)]
pub struct HGBasis {
    d: usize,
    zeta_modulus: f64,
    /// `phases[j][k-1]`
    phases: Vec<Vec<f64>>,
    h: Vec<Vec<HermitianOp>>,
    g: Vec<Vec<HermitianOp>>,
}

impl HGBasis {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn zeta_modulus(&self) -> f64 {
        self.zeta_modulus
    }

    pub fn phases(&self) -> &[Vec<f64>] {
        &self.phases
    }

    /// `h^{(j)}_k` for `j in 0..=d`, `k in 1..=(d-1)/2`.
    pub fn h(&self, j: usize, k: usize) -> &HermitianOp {
        &self.h[j][k - 1]
    }

    pub fn g(&self, j: usize, k: usize) -> &HermitianOp {
        &self.g[j][k - 1]
    }

    pub fn half(&self) -> usize {
        (self.d - 1) / 2
    }

    /// `Σ_k [cos(2πk·r/d) h_{j,k} - sin(2πk·r/d) g_{j,k}]`, the reference operator of
    /// subspace `j` conjugated by `X^{†b} Z^a` with `r = a + j·b` (`r = b` for `j = d`).
    pub fn rotated_reference(&self, j: usize, r: usize) -> HermitianOp {
        let d = self.d;
        let mut acc = HermitianOp::zeros(d);
        for k in 1..=self.half() {
            let ang = 2.0 * PI * ((k * r) % d) as f64 / d as f64;
            acc = acc
                .add(&self.h(j, k).scale(ang.cos()))
                .sub(&self.g(j, k).scale(ang.sin()));
        }
        acc
    }
}

/// Build the basis with `ζ_{j,k} = |ζ| e^{iφ_{j,k}}`; `phases = None` sets every `φ = 0`.
pub fn build_hg_basis(
    wp: &WeylPair,
    phases: Option<&[Vec<f64>]>,
    zeta_modulus: f64,
) -> Result<HGBasis> {
    let d = wp.d;
    let classes = commuting_classes(wp)?;
    if !(zeta_modulus > 0.0 && zeta_modulus.is_finite()) {
        return Err(Error::Invalid("zeta modulus must be positive".into()));
    }
    let half = (d - 1) / 2;
    let phases: Vec<Vec<f64>> = match phases {
        Some(p) => {
            if p.len() != d + 1 {
                return Err(Error::PhaseCount {
                    expected: (d + 1) * half,
                    found: p.iter().map(Vec::len).sum(),
                });
            }
            for row in p {
                if row.len() != half {
                    return Err(Error::PhaseCount {
                        expected: (d + 1) * half,
                        found: p.iter().map(Vec::len).sum(),
                    });
                }
            }
            p.to_vec()
        }
        None => vec![vec![0.0; half]; d + 1],
    };

    let mut h = Vec::with_capacity(d + 1);
    let mut g = Vec::with_capacity(d + 1);
    for class in &classes {
        let j = class.label;
        let mut hj = Vec::with_capacity(half);
        let mut gj = Vec::with_capacity(half);
        for (idx, &(a, b)) in class.generators.iter().enumerate() {
            let m = monomial_unchecked(d, a as i64, b as i64);
            let zeta = Complex64::from_polar(zeta_modulus, phases[j][idx]);
            let zm = m.scale(zeta);
            let zm_dag = zm.adjoint();
            hj.push(HermitianOp::new(&zm + &zm_dag)?);
            gj.push(HermitianOp::new((&zm - &zm_dag).scale(-I))?);
        }
        h.push(hj);
        g.push(gj);
    }
    Ok(HGBasis {
        d,
        zeta_modulus,
        phases,
        h,
        g,
    })
}

/// Max entrywise residual of the `Z`- and `X`-conjugation rotation laws on every `(h, g)` pair.
///
/// With `ZX = ωXZ`, `Z M Z†` and `X† M X` multiply a class generator `M` by a root of unity
/// `e^{iθ}`, which rotates `(h, g)` to `(c·h - s·g, c·g + s·h)`.
pub fn verify_rotation_action(basis: &HGBasis) -> f64 {
    let d = basis.d;
    let z = monomial_unchecked(d, 0, 1);
    let x_dag = monomial_unchecked(d, -1, 0);
    let mut worst: f64 = 0.0;
    for j in 0..=d {
        for k in 1..=basis.half() {
            let h = basis.h(j, k);
            let g = basis.g(j, k);
            // Z (.) Z†: class d is fixed, class j rotates by 2πk/d
            let z_angle = if j == d {
                0.0
            } else {
                2.0 * PI * k as f64 / d as f64
            };
            // X† (.) X: class d rotates by 2πk/d, class j by 2πkj/d
            let x_angle = if j == d {
                2.0 * PI * k as f64 / d as f64
            } else {
                2.0 * PI * ((k * j) % d) as f64 / d as f64
            };
            for (u, ang) in [(&z, z_angle), (&x_dag, x_angle)] {
                let (c, s) = (ang.cos(), ang.sin());
                let h_rot = h.conjugate_by(u);
                let g_rot = g.conjugate_by(u);
                let h_exp = h.scale(c).sub(&g.scale(s));
                let g_exp = g.scale(c).add(&h.scale(s));
                worst = worst
                    .max(h_rot.mat().max_abs_diff(h_exp.mat()))
                    .max(g_rot.mat().max_abs_diff(g_exp.mat()));
            }
        }
    }
    worst
}
