//! Domain types and the equations of motion of the four-level dot molecule.
//!
//! Levels |1⟩ and |2⟩ belong to the first dot, |3⟩ and |4⟩ to the second
//! and third. The probe's electric component drives |1⟩–|2⟩, its magnetic
//! component drives |1⟩–|3⟩, an incoherent pump moves population between
//! |1⟩ and |2⟩, and tunnelings T_a, T_b couple |2⟩–|3⟩ and |3⟩–|4⟩.
//!
//! Two independent routes to dρ/dt are provided: [`rhs_derivative`]
//! evaluates the equations term by term, while [`build_liouvillian`]
//! assembles the same equations as a 16×16 operator from a coefficient
//! table.

mod density;
mod equations;
mod liouvillian;
mod params;

use thiserror::Error;

pub use density::{vec_index, DensityMatrix, LEVELS};
pub use equations::rhs_derivative;
pub use liouvillian::{build_liouvillian, LiouvillianSystem, Operator, StateVector, CONSTRAINT_ROW, DIM};
pub use params::{
    CoherenceDecay, Dephasing, FrequencyConvention, MaterialConstants, RateUnit, TqdParams, DEFAULT_LAYER_THICKNESS,
    GAMMA_10, SHEET_DENSITY, SPEED_OF_LIGHT,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },
}

impl ModelError {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        ModelError::InvalidParameter { name, value, reason }
    }
}
