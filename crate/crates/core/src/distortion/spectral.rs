//! The p-spectral gap of a metric edge set:
//!
//! ```text
//! λ₁⁽ᵖ⁾ = inf over nonconstant f of  Σ_{e ∈ E} |f(e⁺) − f(e⁻)|ᵖ  /  min_α Σ_x |f(x) − α|ᵖ
//! ```
//!
//! For `p = 2` this is the second-smallest eigenvalue of the edge-set
//! Laplacian. For other `p` the quotient is minimized by multi-start descent;
//! the best quotient found is an upper bound on the infimum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

use super::edges::MetricEdgeSet;
use super::eigen::{residual, symmetric_eigen};

/// Absolute tolerance on the eigen-residual `‖Lv − λv‖`.
pub const TAU_EIG: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GapMethod {
    ExactEigen,
    RayleighDescent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralGapResult {
    pub p: f64,
    pub value: f64,
    /// Nonconstant function attaining `value`, aligned with the edge set's `points`.
    pub witness: Vec<f64>,
    pub method: GapMethod,
    /// The reported value is at least the true infimum.
    pub certified_upper_bound_on_gap: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentConfig {
    pub restarts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    /// Stop a restart once an accepted step improves the quotient by less than this, relatively.
    pub relative_tolerance: f64,
}

impl Default for DescentConfig {
    fn default() -> Self {
        DescentConfig {
            restarts: 20,
            seed: 0,
            max_iterations: 200_000,
            relative_tolerance: 1e-12,
        }
    }
}

/// Value of `min_α Σ |f(x) − α|ᵖ` and a minimizing `α`.
pub fn optimal_shift(f: &[f64], p: f64) -> (f64, f64) {
    let moment = |alpha: f64| f.iter().map(|x| (x - alpha).abs().powf(p)).sum::<f64>();
    if p == 2.0 {
        let mean = f.iter().sum::<f64>() / f.len() as f64;
        return (mean, f.iter().map(|x| (x - mean).powi(2)).sum());
    }
    if p == 1.0 {
        let mut sorted = f.to_vec();
        sorted.sort_by(f64::total_cmp);
        let median = sorted[(sorted.len() - 1) / 2];
        return (median, moment(median));
    }
    // The moment is strictly convex for p > 1: Newton on its derivative,
    // falling back to bisection whenever a step leaves the bracket.
    let slope = |alpha: f64| -> f64 { f.iter().map(|x| signed_pow(x - alpha, p)).sum() };
    let curvature = |alpha: f64| -> f64 { f.iter().map(|x| (x - alpha).abs().powf(p - 2.0)).sum() };
    let (mut lo, mut hi) = f
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    let mut alpha = f.iter().sum::<f64>() / f.len() as f64;
    for _ in 0..200 {
        let s = slope(alpha);
        if s == 0.0 {
            break;
        }
        if s > 0.0 {
            lo = alpha;
        } else {
            hi = alpha;
        }
        let c = (p - 1.0) * curvature(alpha);
        let newton = alpha + s / c;
        let next = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if next == alpha || hi - lo <= f64::EPSILON * (lo.abs() + hi.abs()) {
            break;
        }
        alpha = next;
    }
    (alpha, moment(alpha))
}

/// Numerator `Σ_e |f(u) − f(v)|ᵖ` over local edge pairs.
fn edge_energy(pairs: &[(usize, usize)], f: &[f64], p: f64) -> f64 {
    pairs.iter().map(|&(u, v)| (f[u] - f[v]).abs().powf(p)).sum()
}

fn is_constant(f: &[f64]) -> bool {
    f.windows(2).all(|w| w[0] == w[1])
}

/// Rayleigh quotient of `f` (aligned with `e.points`); `None` when `f` is constant.
pub fn rayleigh_quotient(e: &MetricEdgeSet, f: &[f64], p: f64) -> Option<f64> {
    quotient(&e.local_pairs(), f, p)
}

fn quotient(pairs: &[(usize, usize)], f: &[f64], p: f64) -> Option<f64> {
    if is_constant(f) {
        return None;
    }
    let (_, denom) = optimal_shift(f, p);
    if denom <= 0.0 {
        return None;
    }
    Some(edge_energy(pairs, f, p) / denom)
}

fn check_connected(e: &MetricEdgeSet) -> Result<()> {
    let m = e.points.len();
    if m < 2 {
        return Err(Error::DegenerateComponent(e.representative.0.clone()));
    }
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (u, v) in e.local_pairs() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        parent[ru] = rv;
    }
    let root = find(&mut parent, 0);
    if (1..m).any(|x| find(&mut parent, x) != root) {
        return Err(Error::DisconnectedComponent(e.representative.0.clone()));
    }
    Ok(())
}

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("p must be a finite value >= 1, got {p}")));
    }
    Ok(())
}

/// Exact route for `p = 2`, descent otherwise.
pub fn spectral_gap(e: &MetricEdgeSet, p: f64, cfg: &DescentConfig) -> Result<SpectralGapResult> {
    if p == 2.0 {
        spectral_gap_exact(e)
    } else {
        spectral_gap_descent(e, p, cfg)
    }
}

/// Edge-set Laplacian, each unordered edge counted once.
pub fn laplacian(e: &MetricEdgeSet) -> Vec<Vec<f64>> {
    let m = e.points.len();
    let mut l = vec![vec![0.0; m]; m];
    for (u, v) in e.local_pairs() {
        l[u][u] += 1.0;
        l[v][v] += 1.0;
        l[u][v] -= 1.0;
        l[v][u] -= 1.0;
    }
    l
}

pub fn spectral_gap_exact(e: &MetricEdgeSet) -> Result<SpectralGapResult> {
    check_connected(e)?;
    let l = laplacian(e);
    let eig = symmetric_eigen(&l);
    let value = eig.values[1];
    let witness = eig.vectors[1].clone();
    let r = residual(&l, value, &witness);
    if r > TAU_EIG {
        return Err(Error::EigenResidual(r));
    }
    Ok(SpectralGapResult {
        p: 2.0,
        value,
        witness,
        method: GapMethod::ExactEigen,
        certified_upper_bound_on_gap: true,
    })
}

/// Multi-start descent on the Rayleigh quotient. Deterministic for a fixed seed.
pub fn spectral_gap_descent(e: &MetricEdgeSet, p: f64, cfg: &DescentConfig) -> Result<SpectralGapResult> {
    check_p(p)?;
    check_connected(e)?;
    let pairs = e.local_pairs();
    let m = e.points.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut best: Option<(f64, Vec<f64>)> = None;
    for _ in 0..cfg.restarts.max(1) {
        let mut f: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if is_constant(&f) {
            f[0] += 1.0;
        }
        let (q, f) = descend(&pairs, f, p, cfg);
        let (q, f) = match sweep(&pairs, &f, p) {
            Some((qs, fs)) if qs < q => (qs, fs),
            _ => (q, f),
        };
        if best.as_ref().is_none_or(|(bq, _)| q < *bq) {
            best = Some((q, f));
        }
    }
    let (value, witness) = best.expect("at least one restart");
    Ok(SpectralGapResult {
        p,
        value,
        witness,
        method: GapMethod::RayleighDescent,
        certified_upper_bound_on_gap: true,
    })
}

/// Shifts `f` by `alpha` and scales it to unit ℓ² norm; returns the new
/// denominator `Σ |f(x)|ᵖ`, whose minimizing shift is now 0.
fn standardize(f: &mut [f64], p: f64, alpha: f64) -> f64 {
    f.iter_mut().for_each(|x| *x -= alpha);
    let norm = f.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        f.iter_mut().for_each(|x| *x /= norm);
    }
    f.iter().map(|x| x.abs().powf(p)).sum()
}

/// Best quotient among the two-valued functions `1[f > t]` over the level
/// thresholds `t` of `f`.
fn sweep(pairs: &[(usize, usize)], f: &[f64], p: f64) -> Option<(f64, Vec<f64>)> {
    let mut levels = f.to_vec();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    levels
        .iter()
        .take(levels.len().saturating_sub(1))
        .filter_map(|&t| {
            let g: Vec<f64> = f.iter().map(|&x| if x > t { 1.0 } else { 0.0 }).collect();
            quotient(pairs, &g, p).map(|q| (q, g))
        })
        .min_by(|a, b| a.0.total_cmp(&b.0))
}

/// `|d|^(p-1) sign(d)`, with the `p = 1` subgradient 0 at `d = 0`.
fn signed_pow(d: f64, p: f64) -> f64 {
    if d == 0.0 {
        0.0
    } else if p == 2.0 {
        d
    } else {
        d.signum() * d.abs().powf(p - 1.0)
    }
}

fn gradient(pairs: &[(usize, usize)], f: &[f64], p: f64, q: f64, alpha: f64, denom: f64) -> Vec<f64> {
    let mut g: Vec<f64> = f.iter().map(|&x| -q * p * signed_pow(x - alpha, p)).collect();
    for &(u, v) in pairs {
        let t = p * signed_pow(f[u] - f[v], p);
        g[u] += t;
        g[v] -= t;
    }
    g.iter_mut().for_each(|x| *x /= denom);
    g
}

/// A restart also ends once this many iterations together gain less than
/// `STALL_TOLERANCE` relatively.
const STALL_WINDOW: usize = 256;
const STALL_TOLERANCE: f64 = 1e-8;

fn descend(pairs: &[(usize, usize)], mut f: Vec<f64>, p: f64, cfg: &DescentConfig) -> (f64, Vec<f64>) {
    let (alpha, _) = optimal_shift(&f, p);
    let mut denom = standardize(&mut f, p, alpha);
    let mut q = edge_energy(pairs, &f, p) / denom;
    let mut step = 0.1;
    let mut trial = vec![0.0; f.len()];
    let mut checkpoint = q;
    for it in 1..=cfg.max_iterations {
        if it % STALL_WINDOW == 0 {
            if checkpoint - q < STALL_TOLERANCE * q {
                break;
            }
            checkpoint = q;
        }
        let g = gradient(pairs, &f, p, q, 0.0, denom);
        let gnorm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if gnorm == 0.0 || !gnorm.is_finite() {
            break;
        }
        for ((t, x), gi) in trial.iter_mut().zip(&f).zip(&g) {
            *t = x - step * gi / gnorm;
        }
        let candidate = if is_constant(&trial) {
            None
        } else {
            let (alpha, d) = optimal_shift(&trial, p);
            (d > 0.0).then(|| (edge_energy(pairs, &trial, p) / d, alpha))
        };
        match candidate {
            Some((qt, alpha)) if qt < q => {
                let improvement = (q - qt) / q;
                std::mem::swap(&mut f, &mut trial);
                denom = standardize(&mut f, p, alpha);
                q = qt;
                step = (step * 2.0).min(1.0);
                if improvement < cfg.relative_tolerance {
                    break;
                }
            }
            _ => {
                step *= 0.5;
                if step < 1e-16 {
                    break;
                }
            }
        }
    }
    (q, f)
}
