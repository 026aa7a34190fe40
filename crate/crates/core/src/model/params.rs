//! Physical inputs for one evaluation point.
//!
//! Every rate in [`TqdParams`] is expressed in units of the reference rate
//! Γ₁₀ held by [`RateUnit`]; conversion to s⁻¹ happens only where absolute
//! magnitudes are needed (the polarizabilities).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ModelError;

/// Γ₁₀ magnitude quoted for the GaAs/AlGaAs dots, 1.6 γ with γ = 1 GHz.
pub const GAMMA_10: f64 = 1.6e9;

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Sheet density of the dots (m⁻²), 3.7×10¹¹ cm⁻².
pub const SHEET_DENSITY: f64 = 3.7e15;

/// Effective layer thickness (m) used to turn the sheet density into a
/// volume density when none is given explicitly.
pub const DEFAULT_LAYER_THICKNESS: f64 = 10e-9;

/// How the quoted Γ₁₀ figure is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FrequencyConvention {
    /// Γ₁₀ = 1.6×10⁹ s⁻¹.
    #[default]
    Angular,
    /// Γ₁₀ = 2π·1.6×10⁹ s⁻¹.
    Ordinary,
}

impl FrequencyConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            FrequencyConvention::Angular => "angular",
            FrequencyConvention::Ordinary => "ordinary",
        }
    }
}

/// The reference rate Γ₁₀ (s⁻¹) that scales every other rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateUnit {
    gamma_ref: f64,
}

impl RateUnit {
    pub fn new(gamma_ref: f64) -> Result<Self, ModelError> {
        if !(gamma_ref.is_finite() && gamma_ref > 0.0) {
            return Err(ModelError::invalid("gamma_ref", gamma_ref, "must be finite and > 0"));
        }
        Ok(Self { gamma_ref })
    }

    pub fn from_convention(convention: FrequencyConvention) -> Self {
        let gamma_ref = match convention {
            FrequencyConvention::Angular => GAMMA_10,
            FrequencyConvention::Ordinary => 2.0 * PI * GAMMA_10,
        };
        Self { gamma_ref }
    }

    pub fn gamma_ref(&self) -> f64 {
        self.gamma_ref
    }

    /// Converts a rate given in Γ₁₀ units to s⁻¹.
    pub fn to_si(&self, rate: Complex64) -> Complex64 {
        rate * self.gamma_ref
    }
}

impl Default for RateUnit {
    fn default() -> Self {
        Self::from_convention(FrequencyConvention::Angular)
    }
}

/// Pure-dephasing rates γᵈᵖʰᵢⱼ keyed by unordered level pair.
///
/// Pairs are stored as (2,1), (3,1), (4,1), (3,2), (4,2), (4,3); lookups
/// accept either order.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Dephasing([f64; 6]);

impl Dephasing {
    pub const PAIRS: [(usize, usize); 6] = [(2, 1), (3, 1), (4, 1), (3, 2), (4, 2), (4, 3)];

    fn slot(i: usize, j: usize) -> Option<usize> {
        let key = if i > j { (i, j) } else { (j, i) };
        Self::PAIRS.iter().position(|&p| p == key)
    }

    /// Rate for the pair (i, j); levels are numbered 1..=4.
    ///
    /// # Panics
    ///
    /// Panics if `i == j` or either level is outside 1..=4.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[Self::slot(i, j).expect("dephasing pair must be two distinct levels in 1..=4")]
    }

    pub fn set(&mut self, i: usize, j: usize, rate: f64) -> Result<(), ModelError> {
        let slot = Self::slot(i, j)
            .ok_or_else(|| ModelError::invalid("dephasing", rate, "pair must be two distinct levels in 1..=4"))?;
        self.0[slot] = rate;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        Self::PAIRS.iter().copied().zip(self.0.iter().copied())
    }
}

/// Total coherence decay rates Γᵢⱼ entering the six explicit coherence
/// equations, in Γ₁₀ units.
///
/// `rho32` is the rate used in the ρ₃₂ equation. The default construction
/// applies the pair rule to levels 3 and 2; [`CoherenceDecay::literal`]
/// instead reads the Γ₁₂ in that equation as Γ₂₁.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherenceDecay {
    pub rho12: f64,
    pub rho13: f64,
    pub rho14: f64,
    pub rho32: f64,
    pub rho42: f64,
    pub rho43: f64,
}

impl CoherenceDecay {
    /// Γᵢ₁ = γᵢ₁/2 + γᵈᵖʰᵢ₁ and Γᵢⱼ = (γᵢ₁ + γⱼ₁)/2 + γᵈᵖʰᵢⱼ.
    pub fn from_rates(params: &TqdParams) -> Self {
        let (g2, g3, g4) = (params.gamma_21, params.gamma_31, params.gamma_41);
        let dph = &params.dephasing;
        Self {
            rho12: g2 / 2.0 + dph.get(2, 1),
            rho13: g3 / 2.0 + dph.get(3, 1),
            rho14: g4 / 2.0 + dph.get(4, 1),
            rho32: (g3 + g2) / 2.0 + dph.get(3, 2),
            rho42: (g4 + g2) / 2.0 + dph.get(4, 2),
            rho43: (g4 + g3) / 2.0 + dph.get(4, 3),
        }
    }

    /// Same as [`from_rates`](Self::from_rates) but with the ρ₃₂ equation
    /// damped by Γ₂₁, the only defined rate matching the label Γ₁₂.
    pub fn literal(params: &TqdParams) -> Self {
        let mut decay = Self::from_rates(params);
        decay.rho32 = decay.rho12;
        decay
    }
}

/// All rates, couplings and detunings for one evaluation point (Γ₁₀ units).
///
/// Couplings are complex to admit phases; every constructor here sets
/// them real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TqdParams {
    /// Incoherent pump Γ on |1⟩–|2⟩.
    pub pump_rate: f64,
    /// T_a, tunneling |2⟩–|3⟩.
    pub tunneling_a: Complex64,
    /// T_b, tunneling |3⟩–|4⟩.
    pub tunneling_b: Complex64,
    /// Ω_e, electric probe component on |1⟩–|2⟩.
    pub rabi_e: Complex64,
    /// Ω_b, magnetic probe component on |1⟩–|3⟩.
    pub rabi_b: Complex64,
    /// Δ_p = ω₂₁ − ω_p.
    pub detuning_p: f64,
    pub omega_12: f64,
    pub omega_23: f64,
    pub omega_34: f64,
    pub gamma_21: f64,
    pub gamma_31: f64,
    pub gamma_41: f64,
    pub dephasing: Dephasing,
    /// Replaces the rates derived from `gamma_*` and `dephasing` when set.
    pub coherence_decay: Option<CoherenceDecay>,
}

impl TqdParams {
    /// No pump, no tunneling, no probe; unit spontaneous emission.
    pub fn decoupled() -> Self {
        Self {
            pump_rate: 0.0,
            tunneling_a: Complex64::ZERO,
            tunneling_b: Complex64::ZERO,
            rabi_e: Complex64::ZERO,
            rabi_b: Complex64::ZERO,
            detuning_p: 0.0,
            omega_12: 0.0,
            omega_23: 0.0,
            omega_34: 0.0,
            gamma_21: 1.0,
            gamma_31: 1.0,
            gamma_41: 1.0,
            dephasing: Dephasing::default(),
            coherence_decay: None,
        }
    }

    /// Γ = 0.2, T_a = 0.25, T_b = 0.60, Ω_e = 0.05 and Ω_b tied to Ω_e by the
    /// plane-wave relation for `consts`.
    pub fn baseline(consts: &MaterialConstants) -> Self {
        let rabi_e = Complex64::new(0.05, 0.0);
        Self {
            pump_rate: 0.2,
            tunneling_a: Complex64::new(0.25, 0.0),
            tunneling_b: Complex64::new(0.60, 0.0),
            rabi_e,
            rabi_b: consts.plane_wave_rabi_b(rabi_e),
            ..Self::decoupled()
        }
    }

    pub fn with_detuning(mut self, detuning_p: f64) -> Self {
        self.detuning_p = detuning_p;
        self
    }

    pub fn coherence_decay(&self) -> CoherenceDecay {
        self.coherence_decay.unwrap_or_else(|| CoherenceDecay::from_rates(self))
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let reals = [
            ("pump_rate", self.pump_rate),
            ("detuning_p", self.detuning_p),
            ("omega_12", self.omega_12),
            ("omega_23", self.omega_23),
            ("omega_34", self.omega_34),
            ("gamma_21", self.gamma_21),
            ("gamma_31", self.gamma_31),
            ("gamma_41", self.gamma_41),
        ];
        for (name, value) in reals {
            if !value.is_finite() {
                return Err(ModelError::invalid(name, value, "must be finite"));
            }
        }
        let complexes = [
            ("tunneling_a", self.tunneling_a),
            ("tunneling_b", self.tunneling_b),
            ("rabi_e", self.rabi_e),
            ("rabi_b", self.rabi_b),
        ];
        for (name, value) in complexes {
            if !value.is_finite() {
                return Err(ModelError::invalid(name, value.norm(), "must be finite"));
            }
        }
        for (name, value) in [
            ("pump_rate", self.pump_rate),
            ("gamma_21", self.gamma_21),
            ("gamma_31", self.gamma_31),
            ("gamma_41", self.gamma_41),
        ] {
            if value < 0.0 {
                return Err(ModelError::invalid(name, value, "must be >= 0"));
            }
        }
        for ((i, j), rate) in self.dephasing.iter() {
            if !(rate.is_finite() && rate >= 0.0) {
                return Err(ModelError::invalid(dephasing_name(i, j), rate, "must be finite and >= 0"));
            }
        }
        if let Some(decay) = self.coherence_decay {
            let rates = [decay.rho12, decay.rho13, decay.rho14, decay.rho32, decay.rho42, decay.rho43];
            if let Some(&bad) = rates.iter().find(|r| !r.is_finite()) {
                return Err(ModelError::invalid("coherence_decay", bad, "must be finite"));
            }
        }
        Ok(())
    }
}

fn dephasing_name(i: usize, j: usize) -> &'static str {
    match (i, j) {
        (2, 1) => "dephasing_21",
        (3, 1) => "dephasing_31",
        (4, 1) => "dephasing_41",
        (3, 2) => "dephasing_32",
        (4, 2) => "dephasing_42",
        _ => "dephasing_43",
    }
}

/// Material and SI constants for the polarizabilities and Clausius–Mossotti.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialConstants {
    /// Volume number density N (m⁻³).
    pub density_n: f64,
    /// |d₂₁| (C·m).
    pub dipole_e: f64,
    /// |μ₁₃| (C·m²·s⁻¹).
    pub dipole_m: f64,
    pub vacuum_permittivity: f64,
    pub vacuum_permeability: f64,
    pub hbar: f64,
    /// Converts Γ₁₀-scaled Rabi frequencies to s⁻¹.
    pub rate_unit: RateUnit,
}

impl MaterialConstants {
    /// Ω_b implied by Ω_e when both belong to one plane wave (B = E/c).
    pub fn plane_wave_rabi_b(&self, rabi_e: Complex64) -> Complex64 {
        rabi_e * (self.dipole_m / (self.dipole_e * SPEED_OF_LIGHT))
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, value) in [
            ("density_n", self.density_n),
            ("dipole_e", self.dipole_e),
            ("dipole_m", self.dipole_m),
            ("vacuum_permittivity", self.vacuum_permittivity),
            ("vacuum_permeability", self.vacuum_permeability),
            ("hbar", self.hbar),
            ("gamma_ref", self.rate_unit.gamma_ref()),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(ModelError::invalid(name, value, "must be finite and > 0"));
            }
        }
        Ok(())
    }
}

impl Default for MaterialConstants {
    fn default() -> Self {
        Self {
            density_n: SHEET_DENSITY / DEFAULT_LAYER_THICKNESS,
            dipole_e: 2.335 * 1.602e-19,
            dipole_m: 7.0e-23,
            vacuum_permittivity: 8.854_187_812_8e-12,
            vacuum_permeability: 1.256_637_062_12e-6,
            hbar: 1.054_571_817e-34,
            rate_unit: RateUnit::default(),
        }
    }
}
