//! Numerical fiducial search.
//!
//! Minimizes `F(ψ) = Σ_{(a,b)≠(0,0)} (|<ψ|X^{†b}Z^a|ψ>|² - 1/(d+1))²` on the unit sphere by
//! Riemannian gradient descent with Barzilai-Borwein steps and a nonmonotone Armijo line
//! search, from seeded random starts. Nelder-Mead on the real coordinates takes over for a
//! bounded number of iterations when the line search stalls above tolerance.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{inner, normalized};
use crate::weyl::{omega_pow, require_prime};

use super::fiducial::{Fiducial, FiducialSource};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub restarts: usize,
    /// Gradient iterations per descent phase.
    pub max_iters: usize,
    /// Success threshold on `F`.
    pub objective_tol: f64,
    pub initial_step: f64,
    /// Armijo sufficient-decrease constant.
    pub armijo: f64,
    /// Step shrink factor during backtracking.
    pub backtrack: f64,
    /// Stop when the Riemannian gradient norm falls below this.
    pub grad_tol: f64,
    pub nelder_mead_iters: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            restarts: 200,
            max_iters: 20_000,
            objective_tol: 1e-14,
            initial_step: 0.1,
            armijo: 1e-4,
            backtrack: 0.5,
            grad_tol: 1e-15,
            nelder_mead_iters: 2_000,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Invalid("restarts must be at least 1".into()));
        }
        if self.objective_tol.is_nan() || self.objective_tol <= 0.0 {
            return Err(Error::Invalid(
                "objective tolerance must be positive".into(),
            ));
        }
        let unit = |x: f64| x > 0.0 && x < 1.0;
        if self.initial_step.is_nan()
            || self.initial_step <= 0.0
            || !unit(self.armijo)
            || !unit(self.backtrack)
        {
            return Err(Error::Invalid("invalid step parameters".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Best ket found; a fiducial only when `success`.
    pub fiducial: Fiducial,
    pub objective: f64,
    pub success: bool,
    /// Index of the restart that produced the result.
    pub restart: usize,
    pub restarts_run: usize,
}

/// Objective evaluator for fixed `d`.
#[derive(Clone, Debug)]
pub struct Objective {
    d: usize,
    roots: Vec<Complex64>,
    target: f64,
}

impl Objective {
    pub fn new(d: usize) -> Self {
        Self {
            d,
            roots: (0..d).map(|k| omega_pow(d, k as i64)).collect(),
            target: 1.0 / (d + 1) as f64,
        }
    }

    // c[a·d + b] = Σ_n conj(ψ[n-b]) ψ[n] ω^{an}
    fn overlaps(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let d = self.d;
        let mut c = vec![Complex64::new(0.0, 0.0); d * d];
        let mut u = vec![Complex64::new(0.0, 0.0); d];
        for b in 0..d {
            for (n, un) in u.iter_mut().enumerate() {
                *un = psi[(n + d - b) % d].conj() * psi[n];
            }
            for a in 0..d {
                c[a * d + b] = u
                    .iter()
                    .enumerate()
                    .map(|(n, x)| x * self.roots[(a * n) % d])
                    .sum();
            }
        }
        c
    }

    /// `F(ψ)` for a unit ket.
    pub fn value(&self, psi: &[Complex64]) -> f64 {
        self.overlaps(psi)
            .iter()
            .skip(1)
            .map(|c| (c.norm_sqr() - self.target).powi(2))
            .sum()
    }

    /// `F` and its Euclidean gradient `2 ∂F/∂ψ*` at a unit ket.
    pub fn value_and_gradient(&self, psi: &[Complex64]) -> (f64, Vec<Complex64>) {
        let d = self.d;
        let c = self.overlaps(psi);
        let mut f = 0.0;
        // w[a·d + b] = 2 r c*, coefficient of D ψ; the D†ψ coefficient is its conjugate
        let mut w = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 1..d * d {
            let r = c[i].norm_sqr() - self.target;
            f += r * r;
            w[i] = c[i].conj() * (2.0 * r);
        }
        let mut g = vec![Complex64::new(0.0, 0.0); d];
        for b in 0..d {
            for a in 0..d {
                let wi = w[a * d + b];
                if wi == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for n in 0..d {
                    let ph = self.roots[(a * n) % d];
                    // (Dψ)[n-b] = ω^{an} ψ[n]; (D†ψ)[n] = ω^{-an} ψ[n-b]
                    g[(n + d - b) % d] += wi * ph * psi[n];
                    g[n] += wi.conj() * ph.conj() * psi[(n + d - b) % d];
                }
            }
        }
        for z in &mut g {
            *z *= 2.0;
        }
        (f, g)
    }
}

fn project(psi: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    let s = inner(psi, g).re;
    g.iter().zip(psi).map(|(gi, pi)| gi - pi * s).collect()
}

fn retract(psi: &[Complex64], dir: &[Complex64], step: f64) -> Vec<Complex64> {
    let v: Vec<Complex64> = psi.iter().zip(dir).map(|(p, g)| p - g * step).collect();
    normalized(&v).unwrap_or_else(|_| psi.to_vec())
}

fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// One descent run from `start` (normalized internally). `observer` sees every accepted
/// iterate as `(iteration, ket, F)`. Returns the final ket and `F`.
pub fn local_descent(
    start: &[Complex64],
    cfg: &SearchConfig,
    observer: &mut dyn FnMut(usize, &[Complex64], f64),
) -> Result<(Vec<Complex64>, f64)> {
    let d = start.len();
    require_prime(d)?;
    let obj = Objective::new(d);
    let mut psi = normalized(start)?;
    let polish = (cfg.objective_tol * 1e-14).max(1e-30);
    let (mut f, g) = obj.value_and_gradient(&psi);
    let mut grad = project(&psi, &g);
    let mut step = cfg.initial_step;
    let mut history = vec![f; 1];
    observer(0, &psi, f);
    for it in 1..=cfg.max_iters {
        let gn2 = norm_sq(&grad);
        if f <= polish || gn2.sqrt() <= cfg.grad_tol {
            break;
        }
        let f_ref = history.iter().copied().fold(f64::MIN, f64::max);
        let mut s = step;
        let mut accepted = None;
        for _ in 0..60 {
            let trial = retract(&psi, &grad, s);
            let ft = obj.value(&trial);
            if ft <= f_ref - cfg.armijo * s * gn2 {
                accepted = Some((trial, ft));
                break;
            }
            s *= cfg.backtrack;
        }
        let Some((next, fn_)) = accepted else {
            break;
        };
        let (_, gnext) = obj.value_and_gradient(&next);
        let grad_next = project(&next, &gnext);
        // Barzilai-Borwein step from the ambient differences
        let sk: Vec<Complex64> = next.iter().zip(&psi).map(|(a, b)| a - b).collect();
        let yk: Vec<Complex64> = grad_next.iter().zip(&grad).map(|(a, b)| a - b).collect();
        let sy = inner(&sk, &yk).re.abs();
        step = if sy > 0.0 {
            (norm_sq(&sk) / sy).clamp(1e-10, 1e6)
        } else {
            cfg.initial_step
        };
        psi = next;
        f = fn_;
        grad = grad_next;
        history.push(f);
        if history.len() > 10 {
            history.remove(0);
        }
        observer(it, &psi, f);
    }
    Ok((psi, f))
}

/// Nelder-Mead on the `2d` real coordinates of `ψ/|ψ|`.
fn nelder_mead(obj: &Objective, start: &[Complex64], iters: usize) -> (Vec<Complex64>, f64) {
    let d = start.len();
    let n = 2 * d;
    let to_ket = |x: &[f64]| -> Option<Vec<Complex64>> {
        let v: Vec<Complex64> = (0..d).map(|i| Complex64::new(x[i], x[d + i])).collect();
        normalized(&v).ok()
    };
    let eval = |x: &[f64]| to_ket(x).map_or(f64::INFINITY, |k| obj.value(&k));
    let x0: Vec<f64> = start
        .iter()
        .map(|z| z.re)
        .chain(start.iter().map(|z| z.im))
        .collect();
    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(x0.clone(), eval(&x0))];
    for i in 0..n {
        let mut x = x0.clone();
        x[i] += 0.05;
        let fx = eval(&x);
        simplex.push((x, fx));
    }
    for _ in 0..iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|(x, _)| x[k]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let xr = along(-1.0);
        let fr = eval(&xr);
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = eval(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let xc = along(0.5);
            let fc = eval(&xc);
            if fc < worst.1 {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for (x, fx) in simplex.iter_mut().skip(1) {
                    for (xi, bi) in x.iter_mut().zip(&best) {
                        *xi = bi + 0.5 * (*xi - bi);
                    }
                    *fx = eval(x);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let best = to_ket(&simplex[0].0).unwrap_or_else(|| start.to_vec());
    let fb = obj.value(&best);
    (best, fb)
}

/// Random unit ket for restart `index` of `seed`: independent ChaCha stream per restart.
pub fn random_start(d: usize, seed: u64, index: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let v: Vec<Complex64> = (0..d)
        .map(|_| {
            Complex64::new(
                StandardNormal.sample(&mut rng),
                StandardNormal.sample(&mut rng),
            )
        })
        .collect();
    normalized(&v).expect("gaussian vector is nonzero")
}

fn run_restart(d: usize, cfg: &SearchConfig, index: usize) -> (Vec<Complex64>, f64) {
    let start = random_start(d, cfg.seed, index);
    let (psi, f) = local_descent(&start, cfg, &mut |_, _, _| {}).expect("prime d checked");
    if f <= cfg.objective_tol || cfg.nelder_mead_iters == 0 {
        return (psi, f);
    }
    let obj = Objective::new(d);
    let (nm, fnm) = nelder_mead(&obj, &psi, cfg.nelder_mead_iters);
    if fnm < f {
        let (p2, f2) = local_descent(&nm, cfg, &mut |_, _, _| {}).expect("prime d checked");
        if f2 < f {
            return (p2, f2);
        }
    }
    (psi, f)
}

/// Chunk of restarts evaluated concurrently before checking for success.
const CHUNK: usize = 8;

/// Seeded multi-start search. Restarts run in chunks of eight; the search stops after the
/// first chunk containing a success, and the result is the minimum by `(F, restart index)`.
pub fn search_fiducial(d: usize, cfg: &SearchConfig) -> Result<SearchOutcome> {
    require_prime(d)?;
    cfg.validate()?;
    let mut best: Option<(f64, usize, Vec<Complex64>)> = None;
    let mut run = 0;
    while run < cfg.restarts {
        let end = (run + CHUNK).min(cfg.restarts);
        let results: Vec<(usize, Vec<Complex64>, f64)> = (run..end)
            .into_par_iter()
            .map(|i| {
                let (psi, f) = run_restart(d, cfg, i);
                (i, psi, f)
            })
            .collect();
        for (i, psi, f) in results {
            let better = best
                .as_ref()
                .is_none_or(|(bf, bi, _)| f.total_cmp(bf).then(i.cmp(bi)).is_lt());
            if better {
                best = Some((f, i, psi));
            }
        }
        run = end;
        if best
            .as_ref()
            .is_some_and(|(f, _, _)| *f <= cfg.objective_tol)
        {
            break;
        }
    }
    let (objective, restart, psi) = best.expect("at least one restart");
    Ok(SearchOutcome {
        fiducial: Fiducial::new(psi, FiducialSource::Searched)?,
        objective,
        success: objective <= cfg.objective_tol,
        restart,
        restarts_run: run,
    })
}
