//! Dense complex matrices, Hermitian operators and their Hilbert-Schmidt geometry.
//!
//! Everything downstream is built from [`ComplexMatrix`] (row-major storage) and the
//! validated [`HermitianOp`] wrapper. Eigen-decomposition uses cyclic complex Jacobi
//! rotations, which is accurate to a few ulps for the small dimensions used here.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Hermiticity admission threshold, relative to `max(1, max |entry|)`.
pub const HERMITIAN_ADMISSION_TOL: f64 = 1e-12;
/// Default tolerance stored in a [`Spectrum`] for rank decisions.
pub const SPECTRUM_TOL: f64 = 1e-10;

/// Square complex matrix in row-major order.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Build from row-major entries; rejects wrong lengths and non-finite values.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("matrix dimension must be positive".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// `|u><v|`
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        assert_eq!(u.len(), v.len());
        Self::from_fn(u.len(), |r, c| u[r] * v[c].conj())
    }

    pub fn projector(ket: &[Complex64]) -> Self {
        Self::outer(ket, ket)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |self - other|` entrywise.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<Complex64> {
        check_dims(self.dim, other.dim)?;
        let n = self.dim;
        let mut acc = ZERO;
        for r in 0..n {
            for c in 0..n {
                acc += self[(r, c)] * other[(c, r)];
            }
        }
        Ok(acc)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim, other.dim)?;
        Ok(self * other)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `U · self · U†`
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self[(r, c)] * v[c]).sum())
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self[(r, c)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|c| {
                    let z = self[(r, c)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Wire form of an operator: `{ "dim": d, "entries": [[re, im], ...] }`, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorJson {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&ComplexMatrix> for OperatorJson {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            dim: m.dim,
            entries: m.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<OperatorJson> for ComplexMatrix {
    type Error = Error;
    fn try_from(j: OperatorJson) -> Result<Self> {
        let data = j
            .entries
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::from_row_major(j.dim, data)
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = OperatorJson::deserialize(d)?;
        ComplexMatrix::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// Hermitian matrix with its (real) trace cached.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOp {
    mat: ComplexMatrix,
    trace: f64,
}

impl HermitianOp {
    /// Admit `mat` if `max |mat - mat†| <= 1e-12 · max(1, max |mat|)`; the stored matrix is
    /// the symmetrized `(mat + mat†)/2`.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        Self::with_tol(mat, HERMITIAN_ADMISSION_TOL)
    }

    pub fn with_tol(mat: ComplexMatrix, tol: f64) -> Result<Self> {
        if !mat.is_finite() {
            return Err(Error::NonFinite);
        }
        let adj = mat.adjoint();
        let asymmetry = mat.max_abs_diff(&adj);
        if asymmetry > tol * mat.max_abs().max(1.0) {
            return Err(Error::NotHermitian { asymmetry });
        }
        let sym = (&mat + &adj).scale_re(0.5);
        Ok(Self::from_hermitian_unchecked(sym))
    }

    /// Caller guarantees `mat` is exactly Hermitian.
    pub(crate) fn from_hermitian_unchecked(mat: ComplexMatrix) -> Self {
        let trace = mat.trace().re;
        Self { mat, trace }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_hermitian_unchecked(ComplexMatrix::identity(dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_hermitian_unchecked(ComplexMatrix::zeros(dim))
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        Self::from_hermitian_unchecked(ComplexMatrix::from_diag(diag))
    }

    pub fn projector(ket: &[Complex64]) -> Self {
        let mut m = ComplexMatrix::projector(ket);
        for i in 0..m.dim() {
            m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        }
        Self::from_hermitian_unchecked(m)
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_mat(self) -> ComplexMatrix {
        self.mat
    }

    pub fn trace(&self) -> f64 {
        self.trace
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_hermitian_unchecked(&self.mat + &other.mat)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_hermitian_unchecked(&self.mat - &other.mat)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_hermitian_unchecked(self.mat.scale_re(s))
    }

    /// `U · self · U†`, re-symmetrized.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        let m = self.mat.conjugate_by(u);
        let sym = (&m + &m.adjoint()).scale_re(0.5);
        Self::from_hermitian_unchecked(sym)
    }

    pub fn sum<'a>(dim: usize, ops: impl IntoIterator<Item = &'a HermitianOp>) -> Self {
        let mut acc = ComplexMatrix::zeros(dim);
        for op in ops {
            acc = &acc + &op.mat;
        }
        Self::from_hermitian_unchecked(acc)
    }

    /// `(1 + self) / d`
    pub fn lift_trace_one(&self) -> Self {
        let d = self.dim() as f64;
        let mut m = self.mat.clone();
        for i in 0..self.dim() {
            m[(i, i)] += ONE;
        }
        Self::from_hermitian_unchecked(m.scale_re(1.0 / d))
    }

    /// `d · self - 1`
    pub fn traceless_part(&self) -> Self {
        let d = self.dim() as f64;
        let mut m = self.mat.scale_re(d);
        for i in 0..self.dim() {
            m[(i, i)] -= ONE;
        }
        Self::from_hermitian_unchecked(m)
    }

    /// `<v|self|v>` (real for Hermitian operators).
    pub fn expectation(&self, v: &[Complex64]) -> f64 {
        let hv = self.mat.apply(v);
        v.iter()
            .zip(&hv)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .re
    }
}

impl Serialize for HermitianOp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.mat.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HermitianOp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = ComplexMatrix::deserialize(d)?;
        HermitianOp::new(m).map_err(serde::de::Error::custom)
    }
}

/// Eigenvalues sorted descending, with the tolerance used for rank decisions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub tol: f64,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>, tol: f64) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self { values, tol }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.values.iter().filter(|v| v.abs() > self.tol).count()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Entrywise max difference between two sorted spectra.
    pub fn max_diff(&self, other: &Spectrum) -> f64 {
        assert_eq!(self.len(), other.len());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub spectrum: Spectrum,
    /// Columns are orthonormal eigenvectors, in the order of `spectrum.values`.
    pub vectors: ComplexMatrix,
}

impl Eigensystem {
    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.vectors.column(i)
    }

    /// `V Λ V†`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lam = ComplexMatrix::from_diag(&self.spectrum.values);
        &(&self.vectors * &lam) * &self.vectors.adjoint()
    }
}

/// Hilbert-Schmidt inner product `tr(a·b)`; the imaginary residue is discarded.
pub fn hs_inner(a: &HermitianOp, b: &HermitianOp) -> Result<f64> {
    Ok(a.mat.trace_product(&b.mat)?.re)
}

/// Cyclic Jacobi eigen-decomposition of a Hermitian operator.
pub fn hermitian_eigensystem(h: &HermitianOp) -> Result<Eigensystem> {
    let n = h.dim();
    let mut a = h.mat.clone();
    let mut v = ComplexMatrix::identity(n);
    let fro = a.frobenius_norm();
    let threshold = 1e-14 * fro;
    let max_sweeps = 100 * n * n;

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    s += a[(r, c)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = fro == 0.0 || off_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged && sweeps < max_sweeps {
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_norm(&a) <= threshold;
    }
    if !converged {
        return Err(Error::NoConvergence {
            residual: off_norm(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(Eigensystem {
        spectrum: Spectrum {
            values,
            tol: SPECTRUM_TOL,
        },
        vectors,
    })
}

// One complex Jacobi rotation zeroing a[p][q]: a <- W† a W, v <- v W with
// W = [[c, s], [-s e^{-iθ}, c e^{-iθ}]] where a[p][q] = |a[p][q]| e^{iθ}.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let n = a.dim();
    let phase = apq / r;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let w00 = Complex64::new(c, 0.0);
    let w01 = Complex64::new(s, 0.0);
    let w10 = -phase.conj() * s;
    let w11 = phase.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * w00 + akq * w10;
        a[(k, q)] = akp * w01 + akq * w11;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = w00.conj() * apk + w10.conj() * aqk;
        a[(q, k)] = w01.conj() * apk + w11.conj() * aqk;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * w00 + vkq * w10;
        v[(k, q)] = vkp * w01 + vkq * w11;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// Number of eigenvalues with `|value| > tol`.
pub fn matrix_rank(h: &HermitianOp, tol: f64) -> Result<usize> {
    if tol <= 0.0 {
        return Err(Error::Invalid("rank tolerance must be positive".into()));
    }
    let es = hermitian_eigensystem(h)?;
    Ok(es.spectrum.values.iter().filter(|v| v.abs() > tol).count())
}

/// `tr(h³)`
pub fn third_moment(h: &HermitianOp) -> f64 {
    let sq = &h.mat * &h.mat;
    sq.trace_product(&h.mat).expect("same operator").re
}

/// `<u|v>`
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalized(v: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = norm(v);
    if n == 0.0 || !n.is_finite() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|z| z / n).collect())
}
