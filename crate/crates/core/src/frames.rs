//! Point and line operator frames over a dual affine plane.
//!
//! A [`PointFrame`] holds `d + 1` columns of `d` traceless operators `t_m^{(j)}`, each column a
//! regular simplex of scale `β`, columns mutually orthogonal. A [`LineFrame`] holds `d²`
//! traceless operators `l_μ` forming one simplex of scale `α`. Summing point operators along
//! lines gives a line frame with `α = β(d + 1)`; averaging line operators through a point
//! inverts it. Trace-one lifts are `τ = (1 + t)/d` and `λ = (1 + l)/d`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{hs_inner, HermitianOp};
use crate::plane::{line_index, point_index, Dapg, Line, Point};
use crate::weyl::{require_odd_prime, require_prime, verify_mub, HGBasis, MubFamily};

/// Scalar-product tolerance for frame tables.
pub const FRAME_TOL: f64 = 1e-10;

/// Regular `(d-1)`-simplex in `R^{d-1}` with paired coordinates `(cos 2πkr/d, sin 2πkr/d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexVectors {
    pub d: usize,
    pub vectors: Vec<Vec<f64>>,
}

pub fn build_simplex_vectors(d: usize) -> Result<SimplexVectors> {
    require_odd_prime(d)?;
    let half = (d - 1) / 2;
    let vectors = (0..d)
        .map(|r| {
            let mut v = Vec::with_capacity(d - 1);
            for k in 1..=half {
                let ang = 2.0 * PI * ((k * r) % d) as f64 / d as f64;
                v.push(ang.cos());
                v.push(ang.sin());
            }
            v
        })
        .collect();
    Ok(SimplexVectors { d, vectors })
}

impl SimplexVectors {
    pub fn dot(&self, r: usize, s: usize) -> f64 {
        self.vectors[r]
            .iter()
            .zip(&self.vectors[s])
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Max deviation from `(d-1)/2` on the diagonal and `-1/2` off it.
    pub fn gram_deviation(&self) -> f64 {
        let diag = (self.d - 1) as f64 / 2.0;
        let mut dev: f64 = 0.0;
        for r in 0..self.d {
            for s in 0..self.d {
                let target = if r == s { diag } else { -0.5 };
                dev = dev.max((self.dot(r, s) - target).abs());
            }
        }
        dev
    }
}

/// Point operators `t_m^{(j)}` stored at slot `j·d + m`.
#[derive(Clone, Debug)]
pub struct PointFrame {
    d: usize,
    beta: f64,
    t: Vec<HermitianOp>,
    tau: Vec<HermitianOp>,
}

impl PointFrame {
    /// `ops` are traceless, ordered `(j, m)`; `β` is the simplex scale.
    pub fn new(d: usize, beta: f64, ops: Vec<HermitianOp>) -> Result<Self> {
        require_prime(d)?;
        if ops.len() != d * (d + 1) {
            return Err(Error::DimensionMismatch {
                expected: d * (d + 1),
                found: ops.len(),
            });
        }
        check_dims(d, &ops)?;
        let tau = ops.iter().map(HermitianOp::lift_trace_one).collect();
        Ok(Self {
            d,
            beta,
            t: ops,
            tau,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn t(&self, m: usize, j: usize) -> &HermitianOp {
        &self.t[j * self.d + m]
    }

    pub fn tau(&self, m: usize, j: usize) -> &HermitianOp {
        &self.tau[j * self.d + m]
    }

    pub fn traceless_ops(&self) -> &[HermitianOp] {
        &self.t
    }

    pub fn trace_one_ops(&self) -> &[HermitianOp] {
        &self.tau
    }

    /// Max deviation of the traceless Gram table from `{β; -β/(d-1) same column; 0 across}`,
    /// together with the zero-sum residual per column.
    pub fn verify(&self) -> Result<f64> {
        let d = self.d;
        let same_col = -self.beta / (d - 1) as f64;
        let mut dev: f64 = 0.0;
        for p in 0..self.t.len() {
            dev = dev.max(self.t[p].trace().abs());
            for q in p..self.t.len() {
                let target = if p == q {
                    self.beta
                } else if p / d == q / d {
                    same_col
                } else {
                    0.0
                };
                dev = dev.max((hs_inner(&self.t[p], &self.t[q])? - target).abs());
            }
        }
        for j in 0..=d {
            let s = HermitianOp::sum(d, &self.t[j * d..(j + 1) * d]);
            dev = dev.max(s.mat().max_abs());
        }
        Ok(dev)
    }

    /// Max entry of `Σ_m τ_m^{(j)} - 1` over all columns.
    pub fn identity_resolution_deviation(&self) -> f64 {
        let d = self.d;
        let id = HermitianOp::identity(d);
        (0..=d)
            .map(|j| {
                HermitianOp::sum(d, &self.tau[j * d..(j + 1) * d])
                    .sub(&id)
                    .mat()
                    .max_abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> FrameJson {
        FrameJson {
            d: self.d,
            beta: Some(self.beta),
            alpha: None,
            ops: self.t.clone(),
        }
    }

    pub fn from_json(j: FrameJson) -> Result<Self> {
        let beta = j
            .beta
            .ok_or_else(|| Error::Invalid("point frame file lacks 'beta'".into()))?;
        Self::new(j.d, beta, j.ops)
    }
}

/// Line operators `l_μ` stored at slot `a·d + b`.
#[derive(Clone, Debug)]
pub struct LineFrame {
    d: usize,
    alpha: f64,
    l: Vec<HermitianOp>,
    lambda: Vec<HermitianOp>,
}

impl LineFrame {
    pub fn new(d: usize, alpha: f64, ops: Vec<HermitianOp>) -> Result<Self> {
        require_prime(d)?;
        if ops.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: ops.len(),
            });
        }
        check_dims(d, &ops)?;
        let lambda = ops.iter().map(HermitianOp::lift_trace_one).collect();
        Ok(Self {
            d,
            alpha,
            l: ops,
            lambda,
        })
    }

    /// Frame from trace-one operators `λ_μ`, `α` read off `tr l_{(0,0)}²`.
    pub fn from_trace_one(d: usize, lambda: Vec<HermitianOp>) -> Result<Self> {
        let l: Vec<HermitianOp> = lambda.iter().map(HermitianOp::traceless_part).collect();
        let alpha = match l.first() {
            Some(l0) => hs_inner(l0, l0)?,
            None => 0.0,
        };
        Self::new(d, alpha, l)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn l(&self, line: Line) -> &HermitianOp {
        &self.l[line_index(self.d, line)]
    }

    pub fn lambda(&self, line: Line) -> &HermitianOp {
        &self.lambda[line_index(self.d, line)]
    }

    pub fn traceless_ops(&self) -> &[HermitianOp] {
        &self.l
    }

    pub fn trace_one_ops(&self) -> &[HermitianOp] {
        &self.lambda
    }

    /// Max deviation from `{α; -α/(d²-1)}` and of `Σ_μ l_μ` from zero.
    pub fn verify(&self) -> Result<f64> {
        let d = self.d;
        let off = -self.alpha / (d * d - 1) as f64;
        let mut dev: f64 = 0.0;
        for p in 0..self.l.len() {
            dev = dev.max(self.l[p].trace().abs());
            for q in p..self.l.len() {
                let target = if p == q { self.alpha } else { off };
                dev = dev.max((hs_inner(&self.l[p], &self.l[q])? - target).abs());
            }
        }
        dev = dev.max(HermitianOp::sum(d, &self.l).mat().max_abs());
        Ok(dev)
    }

    /// Max deviation of `tr(λ_μ λ_μ')` from the given diagonal and off-diagonal values.
    pub fn trace_one_gram_deviation(&self, diag: f64, off: f64) -> Result<f64> {
        let mut dev: f64 = 0.0;
        for p in 0..self.lambda.len() {
            for q in p..self.lambda.len() {
                let target = if p == q { diag } else { off };
                dev = dev.max((hs_inner(&self.lambda[p], &self.lambda[q])? - target).abs());
            }
        }
        Ok(dev)
    }

    pub fn to_json(&self) -> FrameJson {
        FrameJson {
            d: self.d,
            beta: None,
            alpha: Some(self.alpha),
            ops: self.l.clone(),
        }
    }

    pub fn from_json(j: FrameJson) -> Result<Self> {
        let alpha = j
            .alpha
            .ok_or_else(|| Error::Invalid("line frame file lacks 'alpha'".into()))?;
        Self::new(j.d, alpha, j.ops)
    }
}

/// Wire form of a frame: `{ "d", "beta" | "alpha", "ops": [operator, ...] }`, traceless ops.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrameJson {
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<f64>,
    pub ops: Vec<HermitianOp>,
}

fn check_dims(d: usize, ops: &[HermitianOp]) -> Result<()> {
    for op in ops {
        if op.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: op.dim(),
            });
        }
    }
    Ok(())
}

fn check_order(d: usize, geom: &Dapg) -> Result<()> {
    if geom.order() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: geom.order(),
        });
    }
    Ok(())
}

/// Points are MUB projectors: `τ_m^{(b)} = |m;b><m;b|`, `β = d(d-1)`.
pub fn point_frame_from_mub(mub: &MubFamily) -> Result<PointFrame> {
    let dev = verify_mub(mub);
    if dev > FRAME_TOL {
        return Err(Error::Verification {
            what: "mutually unbiased bases",
            deviation: dev,
            tol: FRAME_TOL,
        });
    }
    let d = mub.d;
    let ops = (0..=d)
        .flat_map(|j| (0..d).map(move |m| (m, j)))
        .map(|(m, j)| mub.projector(m, j).traceless_part())
        .collect();
    PointFrame::new(d, (d * (d - 1)) as f64, ops)
}

/// Point `(m, j)` carries `f^{(j)}` with angle index `m`; requires `|ζ|² = 1/(2d)`, giving
/// `β = (d-1)/2`.
pub fn point_frame_from_hg(basis: &HGBasis) -> Result<PointFrame> {
    let d = basis.d();
    let z2 = basis.zeta_modulus().powi(2);
    let target = 1.0 / (2 * d) as f64;
    if (z2 - target).abs() > 1e-12 {
        return Err(Error::Verification {
            what: "|zeta|^2 = 1/(2d)",
            deviation: (z2 - target).abs(),
            tol: 1e-12,
        });
    }
    let ops = (0..=d)
        .flat_map(|j| (0..d).map(move |m| (m, j)))
        .map(|(m, j)| basis.rotated_reference(j, m))
        .collect();
    PointFrame::new(d, (d - 1) as f64 / 2.0, ops)
}

/// `l_μ = Σ_{(m,j) ∈ μ} t_m^{(j)}`, `α = β(d+1)`.
pub fn line_ops_from_points(pf: &PointFrame, geom: &Dapg) -> Result<LineFrame> {
    let d = pf.d;
    check_order(d, geom)?;
    let mut ops = Vec::with_capacity(d * d);
    for line in geom.lines() {
        let pts = geom.points_on(line)?;
        let mut acc = HermitianOp::zeros(d);
        for p in pts {
            acc = acc.add(&pf.t[point_index(d, p)?]);
        }
        ops.push(acc);
    }
    LineFrame::new(d, pf.beta * (d + 1) as f64, ops)
}

/// `t_m^{(j)} = (1/d) Σ_{μ ∋ (m,j)} l_μ`, `β = α/(d+1)`.
pub fn point_ops_from_lines(lf: &LineFrame, geom: &Dapg) -> Result<PointFrame> {
    let d = lf.d;
    check_order(d, geom)?;
    let inv = 1.0 / d as f64;
    let mut ops = Vec::with_capacity(d * (d + 1));
    for point in geom.points() {
        let mut acc = HermitianOp::zeros(d);
        for line in geom.lines_through(point)? {
            acc = acc.add(&lf.l[line_index(d, line)]);
        }
        ops.push(acc.scale(inv));
    }
    PointFrame::new(d, lf.alpha / (d + 1) as f64, ops)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointLineReport {
    /// max `|tr(t l) - {β on, -β/(d-1) off}|`
    pub traceless: f64,
    /// max `|tr(τ λ) - (d + tr(t l)_expected)/d²|`
    pub trace_one: f64,
    pub on_line_trace_one: f64,
    pub off_line_trace_one: f64,
}

impl PointLineReport {
    pub fn max_deviation(&self) -> f64 {
        self.traceless.max(self.trace_one)
    }
}

/// Checks every point-line product. The trace-one targets are derived from the traceless
/// ones: `tr(τλ) = (d + tr(tl))/d²`.
pub fn verify_point_line_products(
    pf: &PointFrame,
    lf: &LineFrame,
    geom: &Dapg,
) -> Result<PointLineReport> {
    let d = pf.d;
    check_order(d, geom)?;
    if lf.d != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: lf.d,
        });
    }
    let beta = pf.beta;
    let d2 = (d * d) as f64;
    let on_tl = beta;
    let off_tl = -beta / (d - 1) as f64;
    let on_t1 = (d as f64 + on_tl) / d2;
    let off_t1 = (d as f64 + off_tl) / d2;
    let mut rep = PointLineReport {
        traceless: 0.0,
        trace_one: 0.0,
        on_line_trace_one: on_t1,
        off_line_trace_one: off_t1,
    };
    for line in geom.lines() {
        let li = line_index(d, line);
        for point in geom.points() {
            let pi = point_index(d, point)?;
            let on = geom.contains(line, point);
            let tl = hs_inner(&pf.t[pi], &lf.l[li])?;
            let t1 = hs_inner(&pf.tau[pi], &lf.lambda[li])?;
            let (e_tl, e_t1) = if on { (on_tl, on_t1) } else { (off_tl, off_t1) };
            rep.traceless = rep.traceless.max((tl - e_tl).abs());
            rep.trace_one = rep.trace_one.max((t1 - e_t1).abs());
        }
    }
    Ok(rep)
}

/// `σ_μ = (1/d)(1 + √(2d/(d+1)) l_μ)` for a line frame with `α = (d+1)(d-1)/2`.
pub fn scaled_so(lf: &LineFrame) -> Result<Vec<HermitianOp>> {
    let d = lf.d as f64;
    let expected = (d + 1.0) * (d - 1.0) / 2.0;
    if (lf.alpha - expected).abs() > 1e-8 {
        return Err(Error::Verification {
            what: "line frame scale alpha = (d+1)(d-1)/2",
            deviation: (lf.alpha - expected).abs(),
            tol: 1e-8,
        });
    }
    let c = (2.0 * d / (d + 1.0)).sqrt();
    Ok(lf.l.iter().map(|l| l.scale(c).lift_trace_one()).collect())
}

/// Max deviation of a symmetric family from `tr σ = tr σ² = 1`, `tr σσ' = 1/(d+1)`.
pub fn so_deviation(sigma: &[HermitianOp]) -> Result<f64> {
    let Some(first) = sigma.first() else {
        return Ok(0.0);
    };
    let off = 1.0 / (first.dim() + 1) as f64;
    let mut dev: f64 = 0.0;
    for (p, s) in sigma.iter().enumerate() {
        dev = dev.max((s.trace() - 1.0).abs());
        for (q, s2) in sigma.iter().enumerate().skip(p) {
            let target = if p == q { 1.0 } else { off };
            dev = dev.max((hs_inner(s, s2)? - target).abs());
        }
    }
    Ok(dev)
}

/// `Q_{(m,j)} = tr(τ_m^{(j)} ρ)`, slot `j·d + m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuasiDistribution {
    pub d: usize,
    pub q: Vec<f64>,
}

impl QuasiDistribution {
    pub fn get(&self, p: Point) -> f64 {
        self.q[p.j * self.d + p.m]
    }

    /// `p_μ = (1/d)(Σ_{(m,j) ∈ μ} Q - 1)`, slot `a·d + b`.
    pub fn line_probabilities(&self, geom: &Dapg) -> Result<Vec<f64>> {
        check_order(self.d, geom)?;
        let d = self.d as f64;
        geom.lines()
            .map(|line| {
                let s: f64 = geom.points_on(line)?.into_iter().map(|p| self.get(p)).sum();
                Ok((s - 1.0) / d)
            })
            .collect()
    }

    /// Max over columns of `|Σ_m Q - 1|`.
    pub fn column_sum_deviation(&self) -> f64 {
        self.q
            .chunks(self.d)
            .map(|c| (c.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

pub fn quasi_distribution(rho: &HermitianOp, pf: &PointFrame) -> Result<QuasiDistribution> {
    if rho.dim() != pf.d {
        return Err(Error::DimensionMismatch {
            expected: pf.d,
            found: rho.dim(),
        });
    }
    if (rho.trace() - 1.0).abs() > 1e-10 {
        return Err(Error::NonUnitTrace { trace: rho.trace() });
    }
    let q = pf
        .tau
        .iter()
        .map(|tau| hs_inner(tau, rho))
        .collect::<Result<Vec<f64>>>()?;
    Ok(QuasiDistribution { d: pf.d, q })
}
