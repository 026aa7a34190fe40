use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{OutputFormat, Preset, RunConfig};
use super::output::{render_csv, render_json};
use super::RunError;
use crate::analysis::{
    default_abs_tol, detect_windows, monotonicity_report, sweep, sweep_family, MonotonicityReport, ResponseCurve,
    WindowReport,
};
use crate::model::{build_liouvillian, DensityMatrix};
use crate::solver::{
    evolve_to_steady_state, solve_steady_state, DEFAULT_MAX_TIME, DEFAULT_SETTLE_TOL, DEFAULT_STEADY_TOL, DEFAULT_STEP,
};

/// Grid stride at which `--oracle` re-solves by time evolution.
pub const ORACLE_STRIDE: usize = 50;

/// Largest elementwise gap allowed between the two steady-state routes.
pub const ORACLE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub oracle: bool,
    pub summary_only: bool,
}

#[derive(Debug, Clone)]
pub struct CurveResult {
    /// Family parameter value, if this curve is a family member.
    pub member: Option<f64>,
    pub curve: ResponseCurve,
    pub report: WindowReport,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub curves: Vec<CurveResult>,
    pub monotonicity: Option<MonotonicityReport>,
    pub oracle_deviation: Option<f64>,
    pub files: Vec<PathBuf>,
    pub summary: String,
}

/// Output path for one family member: `stem_<param>_<value>.<ext>`.
pub fn member_path(base: &Path, param: &str, value: f64, format: OutputFormat) -> PathBuf {
    let stem = base.file_stem().map_or_else(|| "tqd_lhm".into(), |s| s.to_string_lossy().into_owned());
    let name = format!("{stem}_{param}_{value}.{}", format.extension());
    base.with_file_name(name)
}

/// Sweeps, detects windows, optionally checks the oracle and writes files.
pub fn run(config: &RunConfig, options: RunOptions) -> Result<RunOutcome, RunError> {
    let spec = config.sweep_spec();
    let family = match (config.family, config.preset) {
        (true, Some(p)) => Some(p.family()),
        _ => None,
    };

    let curves: Vec<(Option<f64>, ResponseCurve)> = match family {
        Some((param, values)) => sweep_family(&spec, param, values)?.into_iter().map(|(v, c)| (Some(v), c)).collect(),
        None => vec![(None, sweep(&spec)?)],
    };
    let monotonicity = if curves.len() >= 2 {
        let members: Vec<(f64, ResponseCurve)> =
            curves.iter().map(|(v, c)| (v.unwrap_or_default(), c.clone())).collect();
        Some(monotonicity_report(&members)?)
    } else {
        None
    };
    let curves: Vec<CurveResult> = curves
        .into_iter()
        .map(|(member, curve)| {
            let tol = config.abs_tol.unwrap_or_else(|| default_abs_tol(&curve));
            let report = detect_windows(&curve, tol);
            CurveResult { member, curve, report }
        })
        .collect();

    let oracle_deviation = if options.oracle { Some(oracle_check(&curves)?) } else { None };

    let mut files = Vec::new();
    if !options.summary_only {
        let base =
            config.output.clone().unwrap_or_else(|| PathBuf::from(format!("tqd_lhm.{}", config.format.extension())));
        for c in &curves {
            let path = match (c.member, family) {
                (Some(v), Some((param, _))) => member_path(&base, param.as_str(), v, config.format),
                _ => base.clone(),
            };
            let text = match config.format {
                OutputFormat::Csv => render_csv(&c.curve),
                OutputFormat::Json => render_json(&c.curve, &c.report),
            };
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| RunError::Io { path: dir.to_path_buf(), source: e })?;
            }
            std::fs::write(&path, text).map_err(|e| RunError::Io { path: path.clone(), source: e })?;
            files.push(path);
        }
    }

    let summary = summarize(config, &curves, monotonicity.as_ref(), oracle_deviation, &files);
    if let Some(dev) = oracle_deviation {
        if dev > ORACLE_TOL {
            return Err(RunError::OracleMismatch { deviation: dev, tol: ORACLE_TOL, summary });
        }
    }
    Ok(RunOutcome { curves, monotonicity, oracle_deviation, files, summary })
}

/// Max elementwise gap between the linear solve and time evolution at
/// every `ORACLE_STRIDE`-th grid point of every curve.
fn oracle_check(curves: &[CurveResult]) -> Result<f64, RunError> {
    let jobs: Vec<_> = curves
        .iter()
        .flat_map(|c| c.curve.samples.iter().step_by(ORACLE_STRIDE).map(move |s| c.curve.spec.params_at(s.coordinate)))
        .collect();
    let deviations: Result<Vec<f64>, RunError> = jobs
        .par_iter()
        .map(|params| {
            let linear = solve_steady_state(&build_liouvillian(params)?, DEFAULT_STEADY_TOL)?;
            let evolved = evolve_to_steady_state(
                params,
                &DensityMatrix::ground(),
                DEFAULT_MAX_TIME,
                DEFAULT_STEP,
                DEFAULT_SETTLE_TOL,
            )?;
            Ok(linear.rho.max_abs_diff(&evolved.rho))
        })
        .collect();
    Ok(deviations?.into_iter().fold(0.0, f64::max))
}

fn intervals(list: &[crate::analysis::Interval]) -> String {
    list.iter().map(|i| format!(" [{:.4}, {:.4}]", i.lo, i.hi)).collect()
}

fn summarize(
    config: &RunConfig,
    curves: &[CurveResult],
    monotonicity: Option<&MonotonicityReport>,
    oracle: Option<f64>,
    files: &[PathBuf],
) -> String {
    let mut s = String::new();
    let preset = config.preset.map_or("none", Preset::name);
    let _ = writeln!(
        s,
        "preset: {preset}  grid: [{}, {}] x {}  N = {:e} m^-3",
        config.detuning_start, config.detuning_stop, config.steps, config.consts.density_n
    );
    for c in curves {
        if let (Some(v), Some(p)) = (c.member, config.preset) {
            let _ = writeln!(s, "-- {} = {v}", p.family().0.as_str());
        }
        let r = &c.report;
        let _ = writeln!(s, "left-handed bands: {}{}", r.left_handed_bands.len(), intervals(&r.left_handed_bands));
        let _ = writeln!(
            s,
            "zero-absorption windows: {} (abs_tol {:.4e}){}",
            r.zero_absorption_windows.len(),
            r.abs_tol,
            intervals(&r.zero_absorption_windows)
        );
        let _ = writeln!(s, "windows inside left-handed bands: {}", r.windows_inside_lh.len());
        let _ = writeln!(s, "symmetry defect: {:.4e}", r.symmetry_defect);
        if let Some((x, v)) = c.curve.min_re_n() {
            let _ = writeln!(s, "min Re n: {v:.6} at delta_p = {x:.4}");
        }
        let failed: Vec<String> = c.curve.failures().map(|f| format!("{}", f.coordinate)).collect();
        if failed.is_empty() {
            let _ = writeln!(s, "failed points: 0");
        } else {
            let _ = writeln!(s, "failed points: {} at delta_p = {}", failed.len(), failed.join(", "));
        }
    }
    if let Some(m) = monotonicity {
        let minima: Vec<String> = m.minima.iter().map(|e| format!("{}: {:.6}", e.parameter, e.min_re_n)).collect();
        let _ = writeln!(
            s,
            "monotonicity: {} ({})",
            if m.monotone_enhancing { "nonincreasing" } else { "not monotone" },
            minima.join(", ")
        );
    }
    if let Some(dev) = oracle {
        let _ = writeln!(s, "oracle max deviation: {dev:.3e} (tolerance {ORACLE_TOL:e})");
    }
    for f in files {
        let _ = writeln!(s, "wrote {}", f.display());
    }
    s
}
