use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ConfigError;
use crate::analysis::{SweepAxis, SweepSpec};
use crate::model::{
    Dephasing, FrequencyConvention, MaterialConstants, RateUnit, TqdParams, DEFAULT_LAYER_THICKNESS, SHEET_DENSITY,
};

/// Every key accepted in a configuration document.
pub const KEYS: &[&str] = &[
    "preset",
    "pump_rate",
    "tunneling_a",
    "tunneling_b",
    "rabi_e",
    "rabi_b",
    "detuning_start",
    "detuning_stop",
    "steps",
    "density_n",
    "layer_thickness",
    "gamma_21",
    "gamma_31",
    "gamma_41",
    "dephasing_21",
    "dephasing_31",
    "dephasing_41",
    "dephasing_32",
    "dephasing_42",
    "dephasing_43",
    "angular_frequency_convention",
    "abs_tol",
    "family",
    "output",
    "format",
];

/// Where a resolved value came from, lowest precedence first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Default,
    Preset,
    Override,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Fig2, Preset::Fig3, Preset::Fig4];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    /// The preset as a configuration document.
    ///
    /// All three share the calibrated decay rates, magnetic Rabi frequency
    /// and density; they differ in pump and tunneling.
    pub fn document(self) -> String {
        let (pump, ta, tb) = match self {
            Preset::Fig2 => (0.4, 0.25, 0.60),
            Preset::Fig3 => (0.2, 0.24, 0.60),
            Preset::Fig4 => (0.2, 0.24, 0.65),
        };
        format!(
            "pump_rate = {pump}\n\
             tunneling_a = {ta}\n\
             tunneling_b = {tb}\n\
             rabi_e = 0.05\n\
             rabi_b = 0.3\n\
             gamma_21 = 2.0\n\
             gamma_31 = 0.1\n\
             gamma_41 = 0.1\n\
             density_n = 7e27\n\
             detuning_start = -3\n\
             detuning_stop = 3\n\
             steps = 601\n"
        )
    }

    /// The parameter varied across the preset's family of curves.
    pub fn family(self) -> (SweepAxis, &'static [f64]) {
        match self {
            Preset::Fig2 => (SweepAxis::PumpRate, &[0.0, 0.2, 0.3, 0.4]),
            Preset::Fig3 => (SweepAxis::TunnelingA, &[0.23, 0.235, 0.24]),
            Preset::Fig4 => (SweepAxis::TunnelingB, &[0.35, 0.50, 0.65]),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// A fully resolved run: parameters, grid, output and where each came from.
///
/// Equality ignores `provenance`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub preset: Option<Preset>,
    pub params: TqdParams,
    pub consts: MaterialConstants,
    pub convention: FrequencyConvention,
    /// Set when the density was derived from a layer thickness.
    pub layer_thickness: Option<f64>,
    pub detuning_start: f64,
    pub detuning_stop: f64,
    pub steps: usize,
    /// Zero-absorption threshold; `None` selects 2% of max |Im n|.
    pub abs_tol: Option<f64>,
    /// Sweep the preset's whole family instead of one curve.
    pub family: bool,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    pub provenance: BTreeMap<String, Provenance>,
}

impl PartialEq for RunConfig {
    fn eq(&self, other: &Self) -> bool {
        self.preset == other.preset
            && self.params == other.params
            && self.consts == other.consts
            && self.convention == other.convention
            && self.layer_thickness == other.layer_thickness
            && self.detuning_start == other.detuning_start
            && self.detuning_stop == other.detuning_stop
            && self.steps == other.steps
            && self.abs_tol == other.abs_tol
            && self.family == other.family
            && self.output == other.output
            && self.format == other.format
    }
}

impl RunConfig {
    pub fn sweep_spec(&self) -> SweepSpec {
        SweepSpec {
            axis: SweepAxis::DetuningP,
            start: self.detuning_start,
            stop: self.detuning_stop,
            steps: self.steps,
            base: self.params,
            consts: self.consts,
        }
    }

    pub fn provenance_of(&self, key: &str) -> Provenance {
        self.provenance.get(key).copied().unwrap_or(Provenance::Default)
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        load_config("").expect("empty document resolves")
    }
}

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: usize,
    provenance: Provenance,
}

fn parse_document(text: &str) -> Result<Vec<(String, String, usize)>, ConfigError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Parse { line, reason: format!("expected `key = value`, got `{content}`") });
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            return Err(ConfigError::Parse { line, reason: "missing key".into() });
        }
        if value.is_empty() {
            return Err(ConfigError::Parse { line, reason: format!("missing value for `{key}`") });
        }
        let key = canonical_key(key).ok_or_else(|| ConfigError::UnknownKey { key: key.to_string(), line })?;
        out.push((key, value.to_string(), line));
    }
    Ok(out)
}

/// Dephasing keys are accepted with the pair in either order.
fn canonical_key(key: &str) -> Option<String> {
    if KEYS.contains(&key) {
        return Some(key.to_string());
    }
    let digits = key.strip_prefix("dephasing_")?;
    let mut chars = digits.chars();
    let (a, b) = (chars.next()?, chars.next()?);
    if chars.next().is_some() {
        return None;
    }
    let swapped = format!("dephasing_{b}{a}");
    KEYS.contains(&swapped.as_str()).then_some(swapped)
}

/// Resolves one configuration document.
pub fn load_config(text: &str) -> Result<RunConfig, ConfigError> {
    load_layers(&[text])
}

/// Resolves stacked documents; later layers take precedence over earlier
/// ones, and all of them over the preset they select.
///
/// Line numbers in errors are relative to the layer they occur in.
pub fn load_layers(layers: &[&str]) -> Result<RunConfig, ConfigError> {
    let mut user: BTreeMap<String, Entry> = BTreeMap::new();
    for layer in layers {
        for (key, value, line) in parse_document(layer)? {
            user.insert(key, Entry { value, line, provenance: Provenance::Override });
        }
    }

    let preset = match user.get("preset") {
        None => None,
        Some(e) if e.value == "none" => None,
        Some(e) => Some(Preset::from_name(&e.value).ok_or_else(|| ConfigError::Range {
            key: "preset".into(),
            value: e.value.clone(),
            reason: "expected fig2, fig3, fig4 or none".into(),
        })?),
    };

    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    if let Some(p) = preset {
        for (key, value, line) in parse_document(&p.document())? {
            entries.insert(key, Entry { value, line, provenance: Provenance::Preset });
        }
    }
    entries.extend(user);
    Resolver { entries }.resolve(preset)
}

struct Resolver {
    entries: BTreeMap<String, Entry>,
}

impl Resolver {
    fn real(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        let Some(e) = self.entries.get(key) else { return Ok(default) };
        let v: f64 = e.value.parse().map_err(|_| ConfigError::Parse {
            line: e.line,
            reason: format!("`{key}`: `{}` is not a number", e.value),
        })?;
        if !v.is_finite() {
            return Err(range(key, &e.value, "must be finite"));
        }
        Ok(v)
    }

    fn nonneg(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        let v = self.real(key, default)?;
        if v < 0.0 {
            return Err(range(key, &v.to_string(), "must be >= 0"));
        }
        Ok(v)
    }

    fn positive(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        if !self.entries.contains_key(key) {
            return Ok(None);
        }
        let v = self.real(key, 0.0)?;
        if v <= 0.0 {
            return Err(range(key, &v.to_string(), "must be > 0"));
        }
        Ok(Some(v))
    }

    fn text(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.value.as_str())
    }

    fn provenance(&self, key: &str) -> Provenance {
        self.entries.get(key).map_or(Provenance::Default, |e| e.provenance)
    }

    fn resolve(self, preset: Option<Preset>) -> Result<RunConfig, ConfigError> {
        let convention = match self.text("angular_frequency_convention") {
            None | Some("true") | Some("angular") => FrequencyConvention::Angular,
            Some("false") | Some("ordinary") => FrequencyConvention::Ordinary,
            Some(other) => {
                return Err(range("angular_frequency_convention", other, "expected angular, ordinary, true or false"))
            }
        };

        let density = self.positive("density_n")?;
        let thickness = self.positive("layer_thickness")?;
        let (density_n, layer_thickness) = match (density, thickness) {
            (None, None) => (SHEET_DENSITY / DEFAULT_LAYER_THICKNESS, Some(DEFAULT_LAYER_THICKNESS)),
            (Some(n), None) => (n, None),
            (None, Some(t)) => (SHEET_DENSITY / t, Some(t)),
            (Some(n), Some(t)) => match self.provenance("density_n").cmp(&self.provenance("layer_thickness")) {
                std::cmp::Ordering::Greater => (n, None),
                std::cmp::Ordering::Less => (SHEET_DENSITY / t, Some(t)),
                std::cmp::Ordering::Equal => {
                    return Err(range("density_n", &n.to_string(), "conflicts with layer_thickness at the same level"))
                }
            },
        };
        let consts = MaterialConstants {
            density_n,
            rate_unit: RateUnit::from_convention(convention),
            ..MaterialConstants::default()
        };

        let baseline = TqdParams::baseline(&consts);
        let rabi_e = self.real("rabi_e", baseline.rabi_e.re)?;
        let rabi_b = self.real("rabi_b", consts.plane_wave_rabi_b(rabi_e.into()).re)?;
        let mut dephasing = Dephasing::default();
        for (i, j) in Dephasing::PAIRS {
            let key = format!("dephasing_{i}{j}");
            let rate = self.nonneg(&key, 0.0)?;
            dephasing.set(i, j, rate).expect("pair from PAIRS");
        }
        let params = TqdParams {
            pump_rate: self.nonneg("pump_rate", baseline.pump_rate)?,
            tunneling_a: self.real("tunneling_a", baseline.tunneling_a.re)?.into(),
            tunneling_b: self.real("tunneling_b", baseline.tunneling_b.re)?.into(),
            rabi_e: Complex64::new(rabi_e, 0.0),
            rabi_b: Complex64::new(rabi_b, 0.0),
            gamma_21: self.nonneg("gamma_21", baseline.gamma_21)?,
            gamma_31: self.nonneg("gamma_31", baseline.gamma_31)?,
            gamma_41: self.nonneg("gamma_41", baseline.gamma_41)?,
            dephasing,
            ..baseline
        };

        let detuning_start = self.real("detuning_start", -3.0)?;
        let detuning_stop = self.real("detuning_stop", 3.0)?;
        if detuning_start >= detuning_stop {
            return Err(range("detuning_start", &detuning_start.to_string(), "must be below detuning_stop"));
        }
        let steps = match self.entries.get("steps") {
            None => 601,
            Some(e) => e.value.parse::<usize>().map_err(|_| ConfigError::Parse {
                line: e.line,
                reason: format!("`steps`: `{}` is not a nonnegative integer", e.value),
            })?,
        };
        if steps < 2 {
            return Err(range("steps", &steps.to_string(), "must be >= 2"));
        }

        let family = match self.text("family") {
            None | Some("false") => false,
            Some("true") => true,
            Some(other) => return Err(range("family", other, "expected true or false")),
        };
        if family && preset.is_none() {
            return Err(range("family", "true", "requires a preset"));
        }
        let format = match self.text("format") {
            None | Some("csv") => OutputFormat::Csv,
            Some("json") => OutputFormat::Json,
            Some(other) => return Err(range("format", other, "expected csv or json")),
        };

        let provenance = KEYS.iter().map(|k| (k.to_string(), self.provenance(k))).collect();
        Ok(RunConfig {
            preset,
            params,
            consts,
            convention,
            layer_thickness,
            detuning_start,
            detuning_stop,
            steps,
            abs_tol: self.positive("abs_tol")?,
            family,
            output: self.text("output").map(PathBuf::from),
            format,
            provenance,
        })
    }
}

fn range(key: &str, value: &str, reason: &str) -> ConfigError {
    ConfigError::Range { key: key.to_string(), value: value.to_string(), reason: reason.to_string() }
}

/// Shortest text that parses back to the same `f64`.
fn number(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// A document that [`load_config`] resolves back to `config`.
///
/// Every value is written explicitly, so the result does not depend on the
/// preset tables or built-in defaults staying the same.
pub fn render(config: &RunConfig) -> String {
    let p = &config.params;
    let mut out = String::new();
    let mut line = |key: &str, value: String| {
        let _ = writeln!(out, "{key} = {value}");
    };
    line("preset", config.preset.map_or("none", Preset::name).to_string());
    line("pump_rate", number(p.pump_rate));
    line("tunneling_a", number(p.tunneling_a.re));
    line("tunneling_b", number(p.tunneling_b.re));
    line("rabi_e", number(p.rabi_e.re));
    line("rabi_b", number(p.rabi_b.re));
    line("detuning_start", number(config.detuning_start));
    line("detuning_stop", number(config.detuning_stop));
    line("steps", config.steps.to_string());
    match config.layer_thickness {
        Some(t) => line("layer_thickness", number(t)),
        None => line("density_n", number(config.consts.density_n)),
    }
    line("gamma_21", number(p.gamma_21));
    line("gamma_31", number(p.gamma_31));
    line("gamma_41", number(p.gamma_41));
    for ((i, j), rate) in p.dephasing.iter() {
        line(&format!("dephasing_{i}{j}"), number(rate));
    }
    line("angular_frequency_convention", config.convention.as_str().to_string());
    if let Some(tol) = config.abs_tol {
        line("abs_tol", number(tol));
    }
    line("family", config.family.to_string());
    if let Some(path) = &config.output {
        line("output", path.display().to_string());
    }
    line("format", config.format.extension().to_string());
    out
}
