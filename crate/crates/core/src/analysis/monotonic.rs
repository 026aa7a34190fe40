use serde::{Deserialize, Serialize};

use super::{AnalysisError, ResponseCurve};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyMinimum {
    pub parameter: f64,
    pub min_re_n: f64,
    /// Coordinate of the minimum on the swept axis.
    pub location: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    /// One entry per curve, ascending in `parameter`.
    pub minima: Vec<FamilyMinimum>,
    /// True when `min_re_n` never increases with the parameter.
    pub monotone_enhancing: bool,
}

/// Minimum of Re n for each member of a family sharing one grid.
pub fn monotonicity_report(family: &[(f64, ResponseCurve)]) -> Result<MonotonicityReport, AnalysisError> {
    if family.len() < 2 {
        return Err(AnalysisError::InsufficientCurves { found: family.len() });
    }
    let grid = family[0].1.coordinates();
    let mut minima = Vec::with_capacity(family.len());
    for (parameter, curve) in family {
        if curve.coordinates() != grid {
            return Err(AnalysisError::GridMismatch { parameter: *parameter });
        }
        let (location, min_re_n) = curve.min_re_n().ok_or(AnalysisError::AllPointsFailed {
            steps: curve.samples.len(),
            first_reason: "no evaluable point in family member".into(),
        })?;
        minima.push(FamilyMinimum { parameter: *parameter, min_re_n, location });
    }
    minima.sort_by(|a, b| a.parameter.total_cmp(&b.parameter));
    let monotone_enhancing = minima.windows(2).all(|w| w[1].min_re_n <= w[0].min_re_n);
    Ok(MonotonicityReport { minima, monotone_enhancing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{sweep, SweepSpec};
    use crate::model::{MaterialConstants, TqdParams};

    fn small_curve(steps: usize) -> ResponseCurve {
        let spec = SweepSpec { steps, ..SweepSpec::detuning(TqdParams::decoupled(), MaterialConstants::default()) };
        sweep(&spec).unwrap()
    }

    #[test]
    fn identical_curves_are_weakly_monotone() {
        let c = small_curve(5);
        let report = monotonicity_report(&[(0.0, c.clone()), (1.0, c)]).unwrap();
        assert!(report.monotone_enhancing);
        assert_eq!(report.minima[0].min_re_n, report.minima[1].min_re_n);
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let err = monotonicity_report(&[(0.0, small_curve(5)), (1.0, small_curve(6))]).unwrap_err();
        assert!(matches!(err, AnalysisError::GridMismatch { parameter } if parameter == 1.0));
    }

    #[test]
    fn single_curve_is_rejected() {
        assert!(matches!(
            monotonicity_report(&[(0.0, small_curve(3))]),
            Err(AnalysisError::InsufficientCurves { found: 1 })
        ));
    }

    #[test]
    fn increase_breaks_monotonicity() {
        let a = small_curve(3);
        let mut b = a.clone();
        for s in &mut b.samples {
            if let Some(r) = s.response.as_mut() {
                r.n.re += 0.5;
            }
        }
        let report = monotonicity_report(&[(1.0, b), (0.0, a)]).unwrap();
        assert_eq!(report.minima[0].parameter, 0.0);
        assert!(!report.monotone_enhancing);
    }
}
