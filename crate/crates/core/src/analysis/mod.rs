//! Sweeps, left-handed bands, zero-absorption windows and family trends.

mod monotonic;
mod sweep;
mod windows;

use thiserror::Error;

use crate::model::ModelError;

pub use monotonic::{monotonicity_report, FamilyMinimum, MonotonicityReport};
pub use sweep::{sweep, sweep_family, ResponseCurve, Sample, SweepAxis, SweepSpec};
pub use windows::{
    default_abs_tol, detect_windows, detect_windows_with, Interval, ModelSource, ResponseSource, WindowReport,
    DEFAULT_ABS_TOL_FRACTION, REFINE_TOL,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("invalid sweep: {0}")]
    InvalidSpec(String),
    #[error("all {steps} sweep points failed; first: {first_reason}")]
    AllPointsFailed { steps: usize, first_reason: String },
    #[error("curve for parameter {parameter} is on a different grid")]
    GridMismatch { parameter: f64 },
    #[error("a family needs at least 2 curves, got {found}")]
    InsufficientCurves { found: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}
