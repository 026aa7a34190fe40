//! From steady-state coherences to ε_r, μ_r and n.
//!
//! ρ₁₂ sets the electric polarizability and ρ₃₁ the magnetic one; each is
//! passed through the Clausius–Mossotti local-field relation, and the index
//! is the product of principal square roots of ε_r and μ_r, which puts it
//! on the negative branch when both real parts are negative and both media
//! absorb.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{build_liouvillian, MaterialConstants, ModelError, TqdParams};
use crate::solver::{solve_steady_state, SolverError, SteadyStateResult, DEFAULT_STEADY_TOL};

/// Default distance from the Clausius–Mossotti pole treated as divergence.
pub const DEFAULT_POLE_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResponseError {
    #[error("{field} Rabi frequency is zero; the polarizability is undefined")]
    ZeroProbe { field: &'static str },
    #[error("polarization catastrophe: |1 - Nα/3| = {distance:.3e} is within the pole guard")]
    PolarizationCatastrophe { distance: f64 },
    #[error("non-finite {quantity}")]
    NonFinite { quantity: &'static str },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponsePoint {
    pub detuning_p: f64,
    pub alpha_e: Complex64,
    pub alpha_m: Complex64,
    pub eps_r: Complex64,
    pub mu_r: Complex64,
    pub n: Complex64,
}

/// α_e = |d₂₁|² ρ₁₂ / (ε₀ ħ Ω_e), with Ω_e given in Γ₁₀ units.
pub fn electric_polarizability(
    rho12: Complex64,
    consts: &MaterialConstants,
    rabi_e: Complex64,
) -> Result<Complex64, ResponseError> {
    if rabi_e == Complex64::ZERO {
        return Err(ResponseError::ZeroProbe { field: "electric" });
    }
    let omega = consts.rate_unit.to_si(rabi_e);
    let d = consts.dipole_e;
    Ok(rho12 * (d * d) / (omega * (consts.vacuum_permittivity * consts.hbar)))
}

/// α_m = μ₀ |μ₁₃|² ρ₃₁ / (ħ Ω_b), with Ω_b given in Γ₁₀ units.
pub fn magnetic_polarizability(
    rho31: Complex64,
    consts: &MaterialConstants,
    rabi_b: Complex64,
) -> Result<Complex64, ResponseError> {
    if rabi_b == Complex64::ZERO {
        return Err(ResponseError::ZeroProbe { field: "magnetic" });
    }
    let omega = consts.rate_unit.to_si(rabi_b);
    let m = consts.dipole_m;
    Ok(rho31 * (consts.vacuum_permeability * m * m) / (omega * consts.hbar))
}

/// (1 + ⅔Nα)/(1 − ⅓Nα) with the default pole guard.
pub fn clausius_mossotti(alpha: Complex64, density_n: f64) -> Result<Complex64, ResponseError> {
    clausius_mossotti_guarded(alpha, density_n, DEFAULT_POLE_GUARD)
}

/// (1 + ⅔Nα)/(1 − ⅓Nα), failing when |1 − ⅓Nα| ≤ `pole_guard`.
///
/// Evaluated as −2 + 3/(1 − ⅓Nα). The two forms are equal, but this one
/// keeps the relative accuracy of a tiny imaginary part when Nα is large:
/// subtracting two nearly equal large products would round it away, and
/// the sign of Im ε_r decides the sign of Re n.
pub fn clausius_mossotti_guarded(
    alpha: Complex64,
    density_n: f64,
    pole_guard: f64,
) -> Result<Complex64, ResponseError> {
    let x = alpha * density_n;
    if !x.is_finite() {
        return Err(ResponseError::NonFinite { quantity: "N·alpha" });
    }
    let denom = Complex64::ONE - x / 3.0;
    let distance = denom.norm();
    if distance <= pole_guard {
        return Err(ResponseError::PolarizationCatastrophe { distance });
    }
    Ok(Complex64::new(-2.0, 0.0) + Complex64::new(3.0, 0.0) / denom)
}

/// Principal square root with the argument taken in (−π, π].
///
/// A negative real axis input with a −0.0 imaginary part is treated as
/// lying on the upper side, so √(−1) is always +i.
pub fn branch_sqrt(z: Complex64) -> Complex64 {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    Complex64::new(z.re, im).sqrt()
}

/// n = √ε_r · √μ_r with principal roots.
pub fn refractive_index(eps_r: Complex64, mu_r: Complex64) -> Complex64 {
    branch_sqrt(eps_r) * branch_sqrt(mu_r)
}

/// Tolerances for [`evaluate_response_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseOptions {
    pub steady_tol: f64,
    pub pole_guard: f64,
}

impl Default for ResponseOptions {
    fn default() -> Self {
        Self { steady_tol: DEFAULT_STEADY_TOL, pole_guard: DEFAULT_POLE_GUARD }
    }
}

/// Steady state, polarizabilities and index at one parameter point.
pub fn evaluate_response(params: &TqdParams, consts: &MaterialConstants) -> Result<ResponsePoint, ResponseError> {
    evaluate_response_with(params, consts, &ResponseOptions::default())
}

/// [`evaluate_response`] with explicit tolerances.
///
/// A field component with zero Rabi frequency does not probe the medium,
/// so its polarizability is taken as zero and the corresponding relative
/// constant is exactly one.
pub fn evaluate_response_with(
    params: &TqdParams,
    consts: &MaterialConstants,
    options: &ResponseOptions,
) -> Result<ResponsePoint, ResponseError> {
    evaluate_with_state(params, consts, options).map(|(point, _)| point)
}

/// [`evaluate_response_with`], also returning the steady state it used.
pub fn evaluate_with_state(
    params: &TqdParams,
    consts: &MaterialConstants,
    options: &ResponseOptions,
) -> Result<(ResponsePoint, SteadyStateResult), ResponseError> {
    consts.validate()?;
    let system = build_liouvillian(params)?;
    let steady = solve_steady_state(&system, options.steady_tol)?;
    let rho12 = steady.rho.get(1, 2);
    let rho31 = steady.rho.get(1, 3).conj();

    let alpha_e = match electric_polarizability(rho12, consts, params.rabi_e) {
        Err(ResponseError::ZeroProbe { .. }) => Complex64::ZERO,
        other => other?,
    };
    let alpha_m = match magnetic_polarizability(rho31, consts, params.rabi_b) {
        Err(ResponseError::ZeroProbe { .. }) => Complex64::ZERO,
        other => other?,
    };
    let eps_r = clausius_mossotti_guarded(alpha_e, consts.density_n, options.pole_guard)?;
    let mu_r = clausius_mossotti_guarded(alpha_m, consts.density_n, options.pole_guard)?;
    let n = refractive_index(eps_r, mu_r);
    if !n.is_finite() {
        return Err(ResponseError::NonFinite { quantity: "refractive index" });
    }
    Ok((ResponsePoint { detuning_p: params.detuning_p, alpha_e, alpha_m, eps_r, mu_r, n }, steady))
}
