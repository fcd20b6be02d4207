//! Numerical realization of a graph as a unit-distance graph in `R^d`.
//!
//! Minimizes the stress
//! `S(x) = ∑_{ij ∈ E} (‖x_i - x_j‖² - 1)² + ∑_{ij ∉ E} hinge(‖x_i - x_j‖)²`
//! with L-BFGS from seeded random starts. The hinge is
//! `max(0, 2·eps_unit - |r - 1|)`: it is nonzero only when a non-edge sits
//! inside the unit-distance band.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{AeqError, Result};
use crate::geometry::{build_unit_distance_graph, PointSet, TolerancePolicy, UnitDistanceGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizeConfig {
    pub dim: usize,
    pub restarts: usize,
    pub seed: u64,
    pub max_iters: usize,
}

impl RealizeConfig {
    pub fn new(dim: usize, restarts: usize, seed: u64) -> Self {
        RealizeConfig {
            dim,
            restarts,
            seed,
            max_iters: 4000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizeOutcome {
    pub success: bool,
    /// Restart that produced `points` (the first success, else the lowest stress).
    pub restart: usize,
    pub best_stress: f64,
    pub points: Option<PointSet>,
}

/// Stress value and its gradient at the flattened coordinates `x` (`n·dim`).
pub fn stress_and_gradient(g: &UnitDistanceGraph, x: &[f64], dim: usize, tol: &TolerancePolicy) -> (f64, Vec<f64>) {
    let n = g.vertex_count();
    let band = 2.0 * tol.eps_unit;
    let mut s = 0.0;
    let mut grad = vec![0.0; x.len()];
    let mut diff = vec![0.0; dim];
    for i in 0..n {
        for j in (i + 1)..n {
            let (xi, xj) = (&x[i * dim..(i + 1) * dim], &x[j * dim..(j + 1) * dim]);
            let mut sq = 0.0;
            for m in 0..dim {
                diff[m] = xi[m] - xj[m];
                sq += diff[m] * diff[m];
            }
            let coef = if g.has_edge(i, j) {
                let r = sq - 1.0;
                s += r * r;
                4.0 * r
            } else {
                let r = sq.sqrt();
                let h = band - (r - 1.0).abs();
                if h <= 0.0 || r == 0.0 {
                    continue;
                }
                s += h * h;
                -2.0 * h * (r - 1.0).signum() / r
            };
            for m in 0..dim {
                grad[i * dim + m] += coef * diff[m];
                grad[j * dim + m] -= coef * diff[m];
            }
        }
    }
    (s, grad)
}

fn dotv(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// L-BFGS with Armijo backtracking; returns the final point and stress.
fn minimize(
    g: &UnitDistanceGraph,
    mut x: Vec<f64>,
    dim: usize,
    tol: &TolerancePolicy,
    max_iters: usize,
) -> (Vec<f64>, f64) {
    const MEMORY: usize = 8;
    let (mut f, mut grad) = stress_and_gradient(g, &x, dim, tol);
    const WINDOW: usize = 100;
    let mut hist: Vec<(Vec<f64>, Vec<f64>, f64)> = Vec::with_capacity(MEMORY);
    let mut checkpoint = f;
    for iter in 0..max_iters {
        if f < 1e-30 {
            break;
        }
        // Stalled at a positive stress: a non-realizing stationary point.
        if iter > 0 && iter % WINDOW == 0 {
            if checkpoint - f <= 1e-10 * checkpoint {
                break;
            }
            checkpoint = f;
        }
        // Two-loop recursion.
        let mut q = grad.clone();
        let mut alphas = Vec::with_capacity(hist.len());
        for (s, y, rho) in hist.iter().rev() {
            let a = rho * dotv(s, &q);
            q.iter_mut().zip(y).for_each(|(qi, yi)| *qi -= a * yi);
            alphas.push(a);
        }
        if let Some((s, y, _)) = hist.last() {
            let gamma = dotv(s, y) / dotv(y, y);
            q.iter_mut().for_each(|qi| *qi *= gamma);
        }
        for ((s, y, rho), a) in hist.iter().zip(alphas.iter().rev()) {
            let b = rho * dotv(y, &q);
            q.iter_mut().zip(s).for_each(|(qi, si)| *qi += (a - b) * si);
        }
        let mut dir: Vec<f64> = q.iter().map(|v| -v).collect();
        let mut slope = dotv(&grad, &dir);
        if slope >= 0.0 || !slope.is_finite() {
            hist.clear();
            dir = grad.iter().map(|v| -v).collect();
            slope = -dotv(&grad, &grad);
        }
        if slope == 0.0 {
            break;
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let xn: Vec<f64> = x.iter().zip(&dir).map(|(a, b)| a + step * b).collect();
            let (fn_, gn) = stress_and_gradient(g, &xn, dim, tol);
            if fn_ <= f + 1e-4 * step * slope {
                accepted = Some((xn, fn_, gn));
                break;
            }
            step *= 0.5;
        }
        let Some((xn, fn_, gn)) = accepted else {
            break;
        };
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn.iter().zip(&grad).map(|(a, b)| a - b).collect();
        let sy = dotv(&s, &y);
        if sy > 1e-300 {
            if hist.len() == MEMORY {
                hist.remove(0);
            }
            hist.push((s, y, 1.0 / sy));
        }
        let progress = f - fn_;
        x = xn;
        f = fn_;
        grad = gn;
        if progress <= 0.0 && hist.is_empty() {
            break;
        }
    }
    (x, f)
}

struct Attempt {
    restart: usize,
    stress: f64,
    points: Option<PointSet>,
    success: bool,
}

fn attempt(g: &UnitDistanceGraph, cfg: &RealizeConfig, tol: &TolerancePolicy, restart: usize) -> Attempt {
    let n = g.vertex_count();
    let d = cfg.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (restart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let x0: Vec<f64> = (0..n * d).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let (x, stress) = minimize(g, x0, d, tol, cfg.max_iters);
    let points = PointSet::new(d, x.chunks(d).map(<[f64]>::to_vec).collect()).ok();
    let success = stress < tol.eps_residual
        && points
            .as_ref()
            .and_then(|ps| build_unit_distance_graph(ps, tol).ok())
            .is_some_and(|h| h == *g);
    Attempt {
        restart,
        stress,
        points,
        success,
    }
}

/// Multi-restart realization. Restarts run in parallel batches; the result is
/// the lowest-index successful restart, or on failure the lowest-stress one,
/// so it does not depend on the thread count.
pub fn realize_graph(g: &UnitDistanceGraph, cfg: &RealizeConfig, tol: &TolerancePolicy) -> Result<RealizeOutcome> {
    tol.validate()?;
    if cfg.dim == 0 {
        return Err(AeqError::ZeroDimension);
    }
    if g.vertex_count() == 0 {
        return Err(AeqError::InvalidArgument("graph has no vertices".into()));
    }
    if cfg.restarts == 0 {
        return Err(AeqError::InvalidArgument("at least one restart is required".into()));
    }
    let batch = rayon::current_num_threads().max(1);
    let mut best: Option<Attempt> = None;
    let mut start = 0;
    while start < cfg.restarts {
        let end = (start + batch).min(cfg.restarts);
        let results: Vec<Attempt> = (start..end).into_par_iter().map(|r| attempt(g, cfg, tol, r)).collect();
        for a in results {
            if a.success {
                return Ok(RealizeOutcome {
                    success: true,
                    restart: a.restart,
                    best_stress: a.stress,
                    points: a.points,
                });
            }
            // Strict comparison keeps the lowest index on ties.
            if best.as_ref().is_none_or(|b| a.stress < b.stress) {
                best = Some(a);
            }
        }
        start = end;
    }
    let b = best.expect("restarts >= 1");
    Ok(RealizeOutcome {
        success: false,
        restart: b.restart,
        best_stress: b.stress,
        points: b.points,
    })
}
