use serde::{Deserialize, Serialize};

use super::{ResponseCurve, SweepSpec};
use crate::response::{evaluate_response, ResponsePoint};

/// Bracket width at which boundary bisection stops (Γ₁₀ units).
pub const REFINE_TOL: f64 = 1e-4;

/// Fraction of max |Im n| used as the default zero-absorption threshold.
pub const DEFAULT_ABS_TOL_FRACTION: f64 = 0.02;

/// Closed interval [lo, hi] on the swept axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowReport {
    pub abs_tol: f64,
    /// Where Re ε_r, Re μ_r and Re n are all negative.
    pub left_handed_bands: Vec<Interval>,
    /// Where |Im n| < `abs_tol`.
    pub zero_absorption_windows: Vec<Interval>,
    pub windows_inside_lh: Vec<Interval>,
    /// Largest |c_left + c_right| over windows paired across Δ_p = 0.
    pub symmetry_defect: f64,
}

/// Anything that can produce a response between grid points.
pub trait ResponseSource {
    /// Response at coordinate `x`, or `None` if it cannot be evaluated.
    fn response_at(&self, x: f64) -> Option<ResponsePoint>;
}

impl<F> ResponseSource for F
where
    F: Fn(f64) -> Option<ResponsePoint>,
{
    fn response_at(&self, x: f64) -> Option<ResponsePoint> {
        self(x)
    }
}

/// Re-solves the model described by a sweep spec.
#[derive(Debug, Clone, Copy)]
pub struct ModelSource<'a> {
    pub spec: &'a SweepSpec,
}

impl ResponseSource for ModelSource<'_> {
    fn response_at(&self, x: f64) -> Option<ResponsePoint> {
        evaluate_response(&self.spec.params_at(x), &self.spec.consts).ok()
    }
}

/// 2% of the largest |Im n| on the curve.
pub fn default_abs_tol(curve: &ResponseCurve) -> f64 {
    DEFAULT_ABS_TOL_FRACTION * curve.max_abs_im_n()
}

/// Bands and zero-absorption windows, boundaries refined against the model.
pub fn detect_windows(curve: &ResponseCurve, abs_tol: f64) -> WindowReport {
    detect_windows_with(curve, abs_tol, &ModelSource { spec: &curve.spec })
}

/// [`detect_windows`] with boundaries refined against `source`.
///
/// Samples are ordered by coordinate first, so the report does not depend
/// on the sweep direction. Failed samples end any interval in progress at
/// the last good grid point. A non-positive `abs_tol` selects nothing,
/// since the test |Im n| < `abs_tol` is strict.
pub fn detect_windows_with(curve: &ResponseCurve, abs_tol: f64, source: &dyn ResponseSource) -> WindowReport {
    let mut samples: Vec<(f64, Option<&ResponsePoint>)> =
        curve.samples.iter().map(|s| (s.coordinate, s.response.as_ref())).collect();
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));

    let transparent = |r: &ResponsePoint| r.n.im.abs() < abs_tol;
    let left_handed = |r: &ResponsePoint| r.eps_r.re < 0.0 && r.mu_r.re < 0.0 && r.n.re < 0.0;

    let zero_absorption_windows = intervals(&samples, &transparent, source);
    let left_handed_bands = intervals(&samples, &left_handed, source);
    let windows_inside_lh =
        zero_absorption_windows.iter().filter(|w| left_handed_bands.iter().any(|b| b.intersects(w))).copied().collect();
    let symmetry_defect = symmetry_defect(&zero_absorption_windows);

    WindowReport { abs_tol, left_handed_bands, zero_absorption_windows, windows_inside_lh, symmetry_defect }
}

/// Maximal runs of `inside` samples, with each interior boundary bisected.
fn intervals(
    samples: &[(f64, Option<&ResponsePoint>)],
    inside: &dyn Fn(&ResponsePoint) -> bool,
    source: &dyn ResponseSource,
) -> Vec<Interval> {
    let state: Vec<Option<bool>> = samples.iter().map(|(_, r)| r.map(inside)).collect();
    let mut out = Vec::new();
    let mut open: Option<f64> = None;
    for k in 0..samples.len() {
        let x = samples[k].0;
        match (open, state[k]) {
            (None, Some(true)) => {
                let lo = match k.checked_sub(1).map(|j| state[j]) {
                    Some(Some(false)) => bisect(samples[k - 1].0, x, inside, source),
                    _ => x,
                };
                open = Some(lo);
            }
            (Some(lo), Some(false)) => {
                out.push(Interval { lo, hi: bisect(x, samples[k - 1].0, inside, source) });
                open = None;
            }
            (Some(lo), None) => {
                out.push(Interval { lo, hi: samples[k - 1].0 });
                open = None;
            }
            _ => {}
        }
    }
    if let (Some(lo), Some(&(x, _))) = (open, samples.last()) {
        out.push(Interval { lo, hi: x });
    }
    out
}

/// Boundary between `outside` (predicate false) and `inside` (true).
fn bisect(
    mut outside: f64,
    mut inside_x: f64,
    inside: &dyn Fn(&ResponsePoint) -> bool,
    source: &dyn ResponseSource,
) -> f64 {
    while (inside_x - outside).abs() > REFINE_TOL {
        let mid = 0.5 * (outside + inside_x);
        match source.response_at(mid) {
            Some(r) if inside(&r) => inside_x = mid,
            Some(_) => outside = mid,
            None => break,
        }
    }
    0.5 * (outside + inside_x)
}

/// Windows not containing 0 are split by side and matched in order of
/// |center|; unmatched windows contribute nothing.
fn symmetry_defect(windows: &[Interval]) -> f64 {
    let mut left: Vec<f64> = Vec::new();
    let mut right: Vec<f64> = Vec::new();
    for w in windows.iter().filter(|w| !w.contains(0.0)) {
        let c = w.center();
        if c < 0.0 {
            left.push(c);
        } else {
            right.push(c);
        }
    }
    left.sort_by(|a, b| b.total_cmp(a));
    right.sort_by(|a, b| a.total_cmp(b));
    left.iter().zip(&right).map(|(l, r)| (l + r).abs()).fold(0.0, f64::max)
}
