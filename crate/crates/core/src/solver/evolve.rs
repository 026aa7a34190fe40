use super::{check_positivity, SolverError, SteadyStateResult};
use crate::model::{rhs_derivative, DensityMatrix, TqdParams};

pub const DEFAULT_STEP: f64 = 1e-3;
pub const DEFAULT_SETTLE_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_TIME: f64 = 1e4;

/// Integrates dρ/dt with fixed-step RK4 from `rho0` until the max-norm of
/// the derivative drops to `settle_tol`.
///
/// Times and rates are in units of Γ₁₀. The initial state must have unit
/// trace; it need not be Hermitian.
pub fn evolve_to_steady_state(
    params: &TqdParams,
    rho0: &DensityMatrix,
    max_time: f64,
    step: f64,
    settle_tol: f64,
) -> Result<SteadyStateResult, SolverError> {
    params.validate()?;
    for (name, value) in [("max_time", max_time), ("step", step), ("settle_tol", settle_tol)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(SolverError::InvalidInput(format!("{name} must be finite and > 0, got {value}")));
        }
    }
    if step > max_time {
        return Err(SolverError::InvalidInput(format!("step {step} exceeds max_time {max_time}")));
    }
    let trace = rho0.trace();
    if (trace.re - 1.0).abs() > 1e-9 || trace.im.abs() > 1e-9 {
        return Err(SolverError::InvalidInput(format!("initial state has trace {trace}, expected 1")));
    }

    let f = |rho: &DensityMatrix| rhs_derivative(params, rho);
    let mut rho = *rho0;
    let mut time = 0.0;
    loop {
        let k1 = f(&rho);
        let derivative_norm = k1.max_norm();
        if !derivative_norm.is_finite() {
            return Err(SolverError::InvalidInput(format!("evolution diverged at t = {time}")));
        }
        if derivative_norm <= settle_tol {
            return Ok(SteadyStateResult {
                rho,
                residual_norm: derivative_norm,
                condition_estimate: None,
                min_eigenvalue: check_positivity(&rho),
            });
        }
        if time >= max_time {
            return Err(SolverError::NotSettled { time, derivative_norm, settle_tol });
        }
        let k2 = f(&(rho + k1 * (step / 2.0)));
        let k3 = f(&(rho + k2 * (step / 2.0)));
        let k4 = f(&(rho + k3 * step));
        rho = rho + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (step / 6.0);
        time += step;
    }
}
