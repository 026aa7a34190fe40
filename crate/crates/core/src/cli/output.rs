use std::fmt::Write as _;

use serde::Serialize;

use crate::analysis::{ResponseCurve, WindowReport};

pub const CSV_HEADER: &str = "delta_p,re_eps,im_eps,re_mu,im_mu,re_n,im_n";

/// 17 significant digits, exponent form.
fn fixed(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.16e}")
    }
}

/// The response table; failed points carry `nan` in every response column.
pub fn render_csv(curve: &ResponseCurve) -> String {
    let mut out = String::with_capacity(128 * (curve.samples.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for s in &curve.samples {
        out.push_str(&fixed(s.coordinate));
        match &s.response {
            Some(r) => {
                for v in [r.eps_r.re, r.eps_r.im, r.mu_r.re, r.mu_r.im, r.n.re, r.n.im] {
                    out.push(',');
                    out.push_str(&fixed(v));
                }
            }
            None => out.push_str(",nan,nan,nan,nan,nan,nan"),
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    curve: &'a ResponseCurve,
    report: &'a WindowReport,
}

/// The curve and its window report as one JSON object.
pub fn render_json(curve: &ResponseCurve, report: &WindowReport) -> String {
    let mut out = serde_json::to_string_pretty(&JsonDocument { curve, report }).expect("response curve serializes");
    let _ = writeln!(out);
    out
}
