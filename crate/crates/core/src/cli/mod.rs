//! Configuration documents, presets, output tables and the run driver
//! behind the `tqd-lhm` binary.
//!
//! A configuration document is UTF-8 text with one `key = value` per line
//! and `#` comments. A `preset` line expands to the preset's own document
//! first; every other line then overrides it, regardless of order.
//!
//! ```
//! use tqd_lhm::cli::{load_config, render, Provenance};
//!
//! let cfg = load_config("preset = fig3\ntunneling_a = 0.23").unwrap();
//! assert_eq!(cfg.params.tunneling_a.re, 0.23);
//! assert_eq!(cfg.provenance_of("pump_rate"), Provenance::Preset);
//! assert_eq!(load_config(&render(&cfg)).unwrap(), cfg);
//! ```

mod config;
mod output;
mod run;

use std::path::PathBuf;

use thiserror::Error;

use crate::analysis::AnalysisError;
use crate::model::ModelError;
use crate::solver::SolverError;

pub use config::{load_config, load_layers, render, OutputFormat, Preset, Provenance, RunConfig, KEYS};
pub use output::{render_csv, render_json, CSV_HEADER};
pub use run::{member_path, run, CurveResult, RunOptions, RunOutcome, ORACLE_STRIDE, ORACLE_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { key: String, line: usize },
    #[error("`{key}` = {value}: {reason}")]
    Range { key: String, value: String, reason: String },
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("oracle deviation {deviation:.3e} exceeds {tol:e}")]
    OracleMismatch { deviation: f64, tol: f64, summary: String },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl From<ModelError> for RunError {
    fn from(e: ModelError) -> Self {
        RunError::Solver(SolverError::Model(e))
    }
}

impl RunError {
    /// Process exit status for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Analysis(AnalysisError::InvalidSpec(_)) => 2,
            RunError::Analysis(_) | RunError::Solver(_) => 3,
            RunError::OracleMismatch { .. } => 4,
            RunError::Io { .. } => 1,
        }
    }

    /// Short category printed on the diagnostic stream.
    pub fn category(&self) -> &'static str {
        match self.exit_code() {
            2 => "config",
            3 => "numerical",
            4 => "oracle",
            _ => "io",
        }
    }
}
