use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::model::{MaterialConstants, TqdParams};
use crate::response::{evaluate_with_state, ResponseOptions, ResponsePoint};
use crate::solver::POSITIVITY_WARN;

/// Parameter varied along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    DetuningP,
    PumpRate,
    TunnelingA,
    TunnelingB,
}

impl SweepAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepAxis::DetuningP => "detuning_p",
            SweepAxis::PumpRate => "pump_rate",
            SweepAxis::TunnelingA => "tunneling_a",
            SweepAxis::TunnelingB => "tunneling_b",
        }
    }

    /// `base` with this axis set to `value` (real couplings for tunnelings).
    pub fn apply(self, base: &TqdParams, value: f64) -> TqdParams {
        let mut p = *base;
        match self {
            SweepAxis::DetuningP => p.detuning_p = value,
            SweepAxis::PumpRate => p.pump_rate = value,
            SweepAxis::TunnelingA => p.tunneling_a = value.into(),
            SweepAxis::TunnelingB => p.tunneling_b = value.into(),
        }
        p
    }
}

/// Uniform grid over one parameter, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub base: TqdParams,
    pub consts: MaterialConstants,
}

impl SweepSpec {
    /// Detuning sweep over [−3, 3] Γ₁₀ with 601 points.
    pub fn detuning(base: TqdParams, consts: MaterialConstants) -> Self {
        Self { axis: SweepAxis::DetuningP, start: -3.0, stop: 3.0, steps: 601, base, consts }
    }

    pub fn validate(&self) -> Result<(), AnalysisError> {
        if self.steps < 2 {
            return Err(AnalysisError::InvalidSpec(format!("steps must be >= 2, got {}", self.steps)));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(AnalysisError::InvalidSpec(format!(
                "need finite start < stop, got [{}, {}]",
                self.start, self.stop
            )));
        }
        self.base.validate()?;
        self.consts.validate()?;
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.stop - self.start) / (self.steps - 1) as f64
    }

    pub fn grid(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(
                |k| {
                    if k == last {
                        self.stop
                    } else {
                        self.start + (self.stop - self.start) * (k as f64 / last as f64)
                    }
                },
            )
            .collect()
    }

    /// Parameters at coordinate `value` along the axis.
    pub fn params_at(&self, value: f64) -> TqdParams {
        self.axis.apply(&self.base, value)
    }
}

/// One grid point: either a response or the reason there is none.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub coordinate: f64,
    pub response: Option<ResponsePoint>,
    pub failure: Option<String>,
}

impl Sample {
    pub fn ok(coordinate: f64, response: ResponsePoint) -> Self {
        Self { coordinate, response: Some(response), failure: None }
    }

    pub fn failed(coordinate: f64, reason: impl Into<String>) -> Self {
        Self { coordinate, response: None, failure: Some(reason.into()) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResponseCurve {
    pub spec: SweepSpec,
    pub samples: Vec<Sample>,
}

impl ResponseCurve {
    pub fn coordinates(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.coordinate).collect()
    }

    /// Successful points with their coordinates.
    pub fn points(&self) -> impl Iterator<Item = (f64, &ResponsePoint)> + '_ {
        self.samples.iter().filter_map(|s| s.response.as_ref().map(|r| (s.coordinate, r)))
    }

    pub fn failures(&self) -> impl Iterator<Item = &Sample> + '_ {
        self.samples.iter().filter(|s| s.response.is_none())
    }

    /// Smallest Re n and where it occurs.
    pub fn min_re_n(&self) -> Option<(f64, f64)> {
        self.points().map(|(x, r)| (x, r.n.re)).fold(None, |best, (x, v)| match best {
            Some((_, b)) if b <= v => best,
            _ => Some((x, v)),
        })
    }

    pub fn max_abs_im_n(&self) -> f64 {
        self.points().map(|(_, r)| r.n.im.abs()).fold(0.0, f64::max)
    }

    /// Same samples in descending coordinate order.
    pub fn reversed(&self) -> Self {
        let mut samples = self.samples.clone();
        samples.reverse();
        Self { spec: self.spec, samples }
    }
}

/// Evaluates the response at every grid point, in parallel.
///
/// Points where the solver or the pole guard fails are kept as failed
/// samples; only a sweep with no usable point at all is an error.
pub fn sweep(spec: &SweepSpec) -> Result<ResponseCurve, AnalysisError> {
    spec.validate()?;
    let options = ResponseOptions::default();
    let (samples, min_eigs): (Vec<Sample>, Vec<f64>) = spec
        .grid()
        .into_par_iter()
        .map(|x| match evaluate_with_state(&spec.params_at(x), &spec.consts, &options) {
            Ok((point, steady)) => (Sample::ok(x, point), steady.min_eigenvalue),
            Err(e) => (Sample::failed(x, e.to_string()), 0.0),
        })
        .unzip();
    let negative = min_eigs.iter().filter(|&&e| e < -POSITIVITY_WARN).count();
    if negative > 0 {
        let worst = min_eigs.iter().copied().fold(0.0, f64::min);
        log::warn!(
            "{negative} of {} steady states are not positive semidefinite (smallest eigenvalue {worst:.3e})",
            spec.steps
        );
    }
    if samples.iter().all(|s| s.response.is_none()) {
        let reason = samples[0].failure.clone().unwrap_or_default();
        return Err(AnalysisError::AllPointsFailed { steps: spec.steps, first_reason: reason });
    }
    for s in samples.iter().filter(|s| s.response.is_none()) {
        log::warn!("{} = {}: {}", spec.axis.as_str(), s.coordinate, s.failure.as_deref().unwrap_or(""));
    }
    Ok(ResponseCurve { spec: *spec, samples })
}

/// One curve of `spec` per value of `param`, in the order given.
pub fn sweep_family(
    spec: &SweepSpec,
    param: SweepAxis,
    values: &[f64],
) -> Result<Vec<(f64, ResponseCurve)>, AnalysisError> {
    if param == spec.axis {
        return Err(AnalysisError::InvalidSpec(format!("family parameter {} is the swept axis", param.as_str())));
    }
    values
        .iter()
        .map(|&v| {
            let member = SweepSpec { base: param.apply(&spec.base, v), ..*spec };
            sweep(&member).map(|curve| (v, curve))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn grid_is_uniform_with_exact_endpoints() {
        let spec = SweepSpec::detuning(TqdParams::decoupled(), MaterialConstants::default());
        let g = spec.grid();
        assert_eq!(g.len(), 601);
        assert_eq!(g[0], -3.0);
        assert_eq!(g[600], 3.0);
        assert!((g[300]).abs() < 1e-15);
        assert!((spec.spacing() - 0.01).abs() < 1e-15);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let base = SweepSpec::detuning(TqdParams::decoupled(), MaterialConstants::default());
        assert!(SweepSpec { steps: 1, ..base }.validate().is_err());
        assert!(SweepSpec { start: 1.0, stop: 1.0, ..base }.validate().is_err());
        assert!(SweepSpec { stop: f64::NAN, ..base }.validate().is_err());
    }

    #[test]
    fn two_point_decoupled_sweep() {
        let spec = SweepSpec {
            start: -1.0,
            stop: 1.0,
            steps: 2,
            ..SweepSpec::detuning(TqdParams::decoupled(), MaterialConstants::default())
        };
        let curve = sweep(&spec).unwrap();
        assert_eq!(curve.samples.len(), 2);
        for (_, p) in curve.points() {
            assert_eq!(p.n, Complex64::ONE);
        }
    }

    #[test]
    fn all_failed_is_an_error() {
        // |3⟩ and |4⟩ isolated without decay: every point is singular
        let mut p = TqdParams::decoupled();
        p.gamma_31 = 0.0;
        let spec = SweepSpec { steps: 3, ..SweepSpec::detuning(p, MaterialConstants::default()) };
        assert!(matches!(sweep(&spec), Err(AnalysisError::AllPointsFailed { .. })));
    }

    #[test]
    fn axis_apply_sets_one_field() {
        let base = TqdParams::decoupled();
        assert_eq!(SweepAxis::PumpRate.apply(&base, 0.3).pump_rate, 0.3);
        assert_eq!(SweepAxis::TunnelingB.apply(&base, 0.5).tunneling_b, Complex64::new(0.5, 0.0));
        assert_eq!(SweepAxis::DetuningP.apply(&base, -2.0).detuning_p, -2.0);
    }
}
