use num_complex::Complex64;

use super::{check_positivity, steady_state_residual, SolverError, SteadyStateResult};
use crate::model::{DensityMatrix, LiouvillianSystem};

/// Residual accepted by default from the direct solve.
pub const DEFAULT_STEADY_TOL: f64 = 1e-10;

/// σ_min/σ_max at or below which the constrained matrix counts as
/// rank-deficient.
pub const SINGULARITY_RATIO: f64 = 1e-14;

/// Solves L·vec ρ = e₁ with the ρ₁₁ row replaced by Tr ρ = 1.
///
/// The raw solution is projected onto its Hermitian part; the size of that
/// correction is added to the residual, which is measured with
/// [`rhs_derivative`](crate::model::rhs_derivative) rather than with the
/// matrix that produced the solution.
pub fn solve_steady_state(system: &LiouvillianSystem, tol: f64) -> Result<SteadyStateResult, SolverError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(SolverError::InvalidInput(format!("tolerance must be > 0, got {tol}")));
    }

    let singular_values = system.matrix.singular_values();
    let (smax, smin) = singular_values.iter().fold((0.0_f64, f64::INFINITY), |(hi, lo), &s| (hi.max(s), lo.min(s)));
    let ratio = if smax > 0.0 { smin / smax } else { 0.0 };
    if ratio.is_nan() || ratio <= SINGULARITY_RATIO {
        return Err(SolverError::SingularSystem { ratio });
    }

    let solution = system.matrix.lu().solve(&system.rhs).ok_or(SolverError::SingularSystem { ratio })?;
    let raw = DensityMatrix::from_vector(solution.as_slice());
    let rho = raw.hermitian_part();
    // diagonal entries are real once Hermitian; clear rounding leftovers
    let mut rho = rho;
    for k in 1..=4 {
        rho.set(k, k, Complex64::new(rho.get(k, k).re, 0.0));
    }
    let correction = raw.max_abs_diff(&rho);
    let residual_norm = steady_state_residual(&system.params, &rho) + correction;
    if residual_norm.is_nan() || residual_norm > tol {
        return Err(SolverError::ToleranceNotMet { residual: residual_norm, tol });
    }

    Ok(SteadyStateResult {
        rho,
        residual_norm,
        condition_estimate: Some(1.0 / ratio),
        min_eigenvalue: check_positivity(&rho),
    })
}
