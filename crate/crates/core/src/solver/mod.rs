//! Steady state of the equations of motion.
//!
//! [`solve_steady_state`] solves the trace-constrained linear system
//! directly; [`evolve_to_steady_state`] integrates the equations in time
//! until they stop moving. The two share nothing but [`rhs_derivative`],
//! which the linear path uses only to grade its answer.

mod evolve;
mod linear;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{rhs_derivative, DensityMatrix, ModelError, TqdParams};

pub use evolve::{evolve_to_steady_state, DEFAULT_MAX_TIME, DEFAULT_SETTLE_TOL, DEFAULT_STEP};
pub use linear::{solve_steady_state, DEFAULT_STEADY_TOL, SINGULARITY_RATIO};

/// Smallest eigenvalue below which a steady state is reported as not
/// positive semidefinite.
pub const POSITIVITY_WARN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("steady-state system is singular (smallest/largest singular value {ratio:.3e})")]
    SingularSystem { ratio: f64 },
    #[error("steady-state residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    ToleranceNotMet { residual: f64, tol: f64 },
    #[error("time evolution not settled at t = {time}: |dρ/dt| = {derivative_norm:.3e} > {settle_tol:.3e}")]
    NotSettled { time: f64, derivative_norm: f64, settle_tol: f64 },
    #[error("invalid solver input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyStateResult {
    pub rho: DensityMatrix,
    /// Max-norm of dρ/dt at `rho`, plus the Hermitian symmetrization
    /// correction for the linear solve.
    pub residual_norm: f64,
    /// σ_max/σ_min of the constrained matrix; `None` for time evolution.
    pub condition_estimate: Option<f64>,
    /// Smallest eigenvalue of `rho`; slightly negative values are possible
    /// because the damping terms are phenomenological.
    pub min_eigenvalue: f64,
}

/// Max-norm of dρ/dt at `rho`; zero iff `rho` is stationary.
pub fn steady_state_residual(params: &TqdParams, rho: &DensityMatrix) -> f64 {
    rhs_derivative(params, rho).max_norm()
}

fn check_positivity(rho: &DensityMatrix) -> f64 {
    let min_eig = rho.min_eigenvalue();
    if min_eig < -POSITIVITY_WARN {
        log::debug!("steady state is not positive semidefinite: smallest eigenvalue {min_eig:.3e}");
    }
    min_eig
}
