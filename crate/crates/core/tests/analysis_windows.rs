mod common;

use num_complex::Complex64;
use tqd_lhm::analysis::{
    default_abs_tol, detect_windows, detect_windows_with, sweep, ResponseCurve, Sample, SweepAxis, SweepSpec,
};
use tqd_lhm::cli::{load_config, Preset};
use tqd_lhm::model::{MaterialConstants, TqdParams};
use tqd_lhm::response::{evaluate_response, ResponsePoint};

fn point(x: f64, eps_re: f64, mu_re: f64, im_n: f64) -> ResponsePoint {
    let n_re = if eps_re < 0.0 && mu_re < 0.0 { -1.0 } else { 1.0 };
    ResponsePoint {
        detuning_p: x,
        alpha_e: Complex64::ZERO,
        alpha_m: Complex64::ZERO,
        eps_r: Complex64::new(eps_re, 0.1),
        mu_r: Complex64::new(mu_re, 0.1),
        n: Complex64::new(n_re, im_n),
    }
}

fn analytic(x: f64) -> ResponsePoint {
    // Im n = cos(2x) + 0.9; left-handed where x² < 0.5 and x < 0.6
    point(x, x * x - 0.5, x - 0.6, (2.0 * x).cos() + 0.9)
}

fn synthetic_curve(f: fn(f64) -> ResponsePoint, start: f64, stop: f64, steps: usize) -> ResponseCurve {
    let spec = SweepSpec {
        axis: SweepAxis::DetuningP,
        start,
        stop,
        steps,
        base: TqdParams::decoupled(),
        consts: MaterialConstants::default(),
    };
    let samples = spec.grid().into_iter().map(|x| Sample::ok(x, f(x))).collect();
    ResponseCurve { spec, samples }
}

#[test]
fn synthetic_endpoints_match_closed_form() {
    let curve = synthetic_curve(analytic, -3.0, 3.0, 121);
    let tol = 0.05f64;
    let report = detect_windows_with(&curve, tol, &|x| Some(analytic(x)));
    // |cos(2x) + 0.9| < tol  ⇔  cos(2x) ∈ (−0.95, −0.85)
    let mut expected = Vec::new();
    for k in -2i32..=1 {
        let base = std::f64::consts::PI * k as f64;
        for (a, b) in [
            ((-0.85f64).acos(), (-0.95f64).acos()),
            (2.0 * std::f64::consts::PI - (-0.95f64).acos(), 2.0 * std::f64::consts::PI - (-0.85f64).acos()),
        ] {
            let (lo, hi) = (base + a / 2.0, base + b / 2.0);
            if lo > -3.0 && hi < 3.0 {
                expected.push((lo, hi));
            }
        }
    }
    expected.sort_by(|a, b| a.0.total_cmp(&b.0));
    assert!(expected.len() >= 4);
    let got = &report.zero_absorption_windows;
    assert_eq!(got.len(), expected.len(), "{got:?} vs {expected:?}");
    for (w, (lo, hi)) in got.iter().zip(&expected) {
        assert!((w.lo - lo).abs() < 1e-3 && (w.hi - hi).abs() < 1e-3, "{w:?} vs ({lo}, {hi})");
    }
    let bands = &report.left_handed_bands;
    assert_eq!(bands.len(), 1);
    assert!((bands[0].lo + 0.5f64.sqrt()).abs() < 1e-3);
    assert!((bands[0].hi - 0.6).abs() < 1e-3);
    for w in &report.windows_inside_lh {
        assert!(bands.iter().any(|b| b.intersects(w)));
    }
}

#[test]
fn parabola_windows_and_symmetry() {
    let f: fn(f64) -> ResponsePoint = |x| point(x, 1.0, 1.0, x * x - 1.0);
    let curve = synthetic_curve(f, -2.0, 2.0, 41);
    let report = detect_windows_with(&curve, 0.05, &|x| Some(f(x)));
    let w = &report.zero_absorption_windows;
    assert_eq!(w.len(), 2);
    assert!((w[0].lo + 1.05f64.sqrt()).abs() < 1e-3 && (w[0].hi + 0.95f64.sqrt()).abs() < 1e-3);
    assert!((w[1].lo - 0.95f64.sqrt()).abs() < 1e-3 && (w[1].hi - 1.05f64.sqrt()).abs() < 1e-3);
    assert!(report.symmetry_defect < 1e-3);
}

#[test]
fn report_is_invariant_under_reversal() {
    let curve = synthetic_curve(analytic, -3.0, 3.0, 121);
    let a = detect_windows_with(&curve, 0.05, &|x| Some(analytic(x)));
    let b = detect_windows_with(&curve.reversed(), 0.05, &|x| Some(analytic(x)));
    assert_eq!(a, b);

    let spec = SweepSpec { steps: 121, ..load_config("preset = fig3").unwrap().sweep_spec() };
    let curve = sweep(&spec).unwrap();
    let tol = default_abs_tol(&curve);
    assert_eq!(detect_windows(&curve, tol), detect_windows(&curve.reversed(), tol));
}

#[test]
fn doubling_resolution_keeps_window_centers() {
    let spec = load_config("preset = fig3").unwrap().sweep_spec();
    let coarse = sweep(&SweepSpec { steps: 301, ..spec }).unwrap();
    let fine = sweep(&SweepSpec { steps: 601, ..spec }).unwrap();
    let tol = 0.085;
    let (a, b) = (detect_windows(&coarse, tol), detect_windows(&fine, tol));
    assert_eq!(a.zero_absorption_windows.len(), b.zero_absorption_windows.len());
    let h = coarse.spec.spacing();
    for (wa, wb) in a.zero_absorption_windows.iter().zip(&b.zero_absorption_windows) {
        assert!((wa.center() - wb.center()).abs() < h, "{wa:?} vs {wb:?}");
    }
}

#[test]
fn pump_axis_sweep_matches_single_evaluations() {
    let cfg = load_config("preset = fig2").unwrap();
    let spec = SweepSpec {
        axis: SweepAxis::PumpRate,
        start: 0.0,
        stop: 0.4,
        steps: 5,
        base: cfg.params.with_detuning(0.0),
        consts: cfg.consts,
    };
    let curve = sweep(&spec).unwrap();
    for (x, r) in curve.points() {
        let mut p = cfg.params.with_detuning(0.0);
        p.pump_rate = x;
        assert_eq!(*r, evaluate_response(&p, &cfg.consts).unwrap());
    }
    let family: Vec<f64> = [0.0, 0.2, 0.3, 0.4]
        .iter()
        .map(|&g| {
            let mut p = cfg.params.with_detuning(0.0);
            p.pump_rate = g;
            evaluate_response(&p, &cfg.consts).unwrap().n.re
        })
        .collect();
    let swept: Vec<f64> = curve.points().map(|(_, r)| r.n.re).collect();
    assert_eq!(swept[0], family[0]);
    assert_eq!(swept[2], family[1]);
    assert_eq!(swept[4], family[3]);
}

#[test]
fn fig2_curve_reaches_negative_index() {
    let curve = sweep(&load_config("preset = fig2").unwrap().sweep_spec()).unwrap();
    assert_eq!(curve.samples.len(), 601);
    let (_, min) = curve.min_re_n().unwrap();
    assert!(min < 0.0);
    assert!(common::preset_params(Preset::Fig2).pump_rate == 0.4);
}
