//! Steady-state optical response of a triple quantum dot molecule.
//!
//! The crate solves the density-matrix equations of a four-level dot
//! molecule probed by a weak field whose electric and magnetic components
//! drive different transitions, then turns the steady-state coherences into
//! permittivity and permeability, and from those the refractive index.
//! Sweeps over the probe detuning locate the frequency bands where the
//! medium is left-handed and the points inside them where absorption
//! vanishes.
//!
//! ```
//! use tqd_lhm::model::{MaterialConstants, TqdParams};
//! use tqd_lhm::response::evaluate_response;
//!
//! let consts = MaterialConstants::default();
//! let params = TqdParams::baseline(&consts).with_detuning(0.3);
//! let point = evaluate_response(&params, &consts).unwrap();
//! assert!(point.n.re.is_finite());
//! ```

pub mod analysis;
pub mod cli;
pub mod model;
pub mod response;
pub mod solver;

pub use analysis::{detect_windows, sweep, ResponseCurve, SweepSpec, WindowReport};
pub use model::{build_liouvillian, DensityMatrix, MaterialConstants, TqdParams};
pub use response::{evaluate_response, ResponsePoint};
pub use solver::{solve_steady_state, SteadyStateResult};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/solving.md")]
    mod solving {}
    #[doc = include_str!("../../../book/src/response.md")]
    mod response {}
    #[doc = include_str!("../../../book/src/windows.md")]
    mod windows {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
