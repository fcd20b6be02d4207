//! Trace/Frobenius rank lower bound and numerical rank.
//!
//! For a nonzero real symmetric matrix `A`, `rank A >= (tr A)² / ‖A‖_F²`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{AeqError, Result};
use crate::geometry::{gram_matrix, PointSet, TolerancePolicy};

/// Additive slack between the trace bound and the numerical rank.
pub const CERTIFY_SLACK: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub trace: f64,
    pub frobenius_sq: f64,
    pub bound: f64,
    pub numeric_rank: usize,
    pub passes: bool,
}

fn check_symmetric(a: &DMatrix<f64>, tol: &TolerancePolicy) -> Result<()> {
    if !a.is_square() {
        return Err(AeqError::InvalidArgument(format!(
            "matrix is {}x{}, expected square",
            a.nrows(),
            a.ncols()
        )));
    }
    let scale = a.amax().max(1.0);
    let slack = tol.identity_slack() * scale;
    for i in 0..a.nrows() {
        for j in (i + 1)..a.ncols() {
            let gap = (a[(i, j)] - a[(j, i)]).abs();
            if gap > slack {
                return Err(AeqError::NotSymmetric(i, j, gap));
            }
        }
    }
    Ok(())
}

pub fn lemma0_bound(a: &DMatrix<f64>) -> Result<f64> {
    lemma0_bound_with(a, &TolerancePolicy::default())
}

/// `(tr A)² / ∑ a_ij²`, rejecting asymmetric or zero input.
pub fn lemma0_bound_with(a: &DMatrix<f64>, tol: &TolerancePolicy) -> Result<f64> {
    Ok(trace_and_frobenius(a, tol)?.2)
}

fn trace_and_frobenius(a: &DMatrix<f64>, tol: &TolerancePolicy) -> Result<(f64, f64, f64)> {
    check_symmetric(a, tol)?;
    let frob = a.iter().map(|x| x * x).sum::<f64>();
    if frob == 0.0 {
        return Err(AeqError::ZeroMatrix);
    }
    let trace = a.trace();
    Ok((trace, frob, trace * trace / frob))
}

/// Singular values above `eps_rank · σ_max`; zero for the zero matrix.
pub fn numerical_rank(a: &DMatrix<f64>, tol: &TolerancePolicy) -> usize {
    if a.is_empty() {
        return 0;
    }
    let sv = a.clone().singular_values();
    let smax = sv.max();
    if smax <= 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol.eps_rank * smax).count()
}

pub fn certify(a: &DMatrix<f64>, tol: &TolerancePolicy) -> Result<RankCertificate> {
    let (trace, frobenius_sq, bound) = trace_and_frobenius(a, tol)?;
    let numeric_rank = numerical_rank(a, tol);
    Ok(RankCertificate {
        trace,
        frobenius_sq,
        bound,
        numeric_rank,
        passes: bound <= numeric_rank as f64 + CERTIFY_SLACK,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramRankCheck {
    pub rank: usize,
    pub dim: usize,
    pub passes: bool,
}

/// The Gram matrix of points in `R^d` has rank at most `d`.
pub fn gram_rank_dimension_check(ps: &PointSet, tol: &TolerancePolicy) -> GramRankCheck {
    let rank = numerical_rank(&gram_matrix(ps), tol);
    GramRankCheck {
        rank,
        dim: ps.dim(),
        passes: rank <= ps.dim(),
    }
}
