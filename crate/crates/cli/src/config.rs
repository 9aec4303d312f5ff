//! Run configuration: a flat `key = value` format grouped in `[sections]`.
//!
//! ```text
//! # comment (also `;`); trailing `# ...` comments are stripped
//! [coupling]            required: gamma_l1 gamma_r1 gamma_l2 gamma_r2 (all ≥ 0)
//! [atom]                required: omega_e; optional: omega_s (= omega_e), omega_drive (= 0)
//! [geometry]            tau (= 0), theta (= 0), theta_mode = free | derived, markovian = true | false
//! [grid]                delta_min delta_max steps [omega_min omega_max omega_steps]
//! [special_points]      kind = transmission | reflection | decoupling | all, tolerance (= 1e-9)
//! [special_tau]         sign = plus | minus | both, tau_min, tau_max
//! [verify]              draws (= 10000), seed (= 0)
//! [output]              path, format = csv | json
//! ```
//!
//! Numeric values accept the expressions described in [`crate::number`].
//! Unknown sections or keys, duplicates and malformed lines are errors that
//! name the line and key.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;

use giant_atom_core::spectral::{PointKind, SweepGrid, TauSign, DEFAULT_SPECIAL_TOL};
use giant_atom_core::{AtomParams, ChiralCoupling, GeometryPhase};

use crate::number::parse_number;

const SCHEMA: &[(&str, &[&str])] = &[
    (
        "coupling",
        &["gamma_l1", "gamma_r1", "gamma_l2", "gamma_r2"],
    ),
    ("atom", &["omega_e", "omega_s", "omega_drive"]),
    ("geometry", &["tau", "theta", "theta_mode", "markovian"]),
    (
        "grid",
        &[
            "delta_min",
            "delta_max",
            "steps",
            "omega_min",
            "omega_max",
            "omega_steps",
        ],
    ),
    ("special_points", &["kind", "tolerance"]),
    ("special_tau", &["sign", "tau_min", "tau_max"]),
    ("verify", &["draws", "seed"]),
    ("output", &["path", "format"]),
];

pub const DEFAULT_VERIFY_DRAWS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: Option<String>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some(key) = &self.key {
            write!(f, "{key}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignChoice {
    Plus,
    Minus,
    Both,
}

impl SignChoice {
    pub fn signs(self) -> &'static [TauSign] {
        match self {
            SignChoice::Plus => &[TauSign::Plus],
            SignChoice::Minus => &[TauSign::Minus],
            SignChoice::Both => &[TauSign::Plus, TauSign::Minus],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialPointsOptions {
    /// `None` scans every kind.
    pub kind: Option<PointKind>,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialTauOptions {
    pub sign: SignChoice,
    pub window: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub draws: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputOptions {
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub coupling: ChiralCoupling,
    pub atom: AtomParams,
    pub geometry: GeometryPhase,
    pub grid: Option<SweepGrid>,
    pub special_points: SpecialPointsOptions,
    pub special_tau: SpecialTauOptions,
    pub verify: VerifyOptions,
    pub output: OutputOptions,
}

struct Entry {
    value: String,
    line: usize,
}

struct Document {
    entries: HashMap<(String, String), Entry>,
    sections: HashMap<String, usize>,
}

impl Document {
    fn raw(&self, section: &str, key: &str) -> Option<&Entry> {
        self.entries.get(&(section.to_string(), key.to_string()))
    }

    fn has_section(&self, section: &str) -> bool {
        self.sections.contains_key(section)
    }

    fn number(&self, section: &str, key: &str) -> Result<Option<f64>, ConfigError> {
        self.raw(section, key)
            .map(|e| parse_number(&e.value).map_err(|m| err_at(e.line, section, key, m)))
            .transpose()
    }

    fn required_number(&self, section: &str, key: &str) -> Result<f64, ConfigError> {
        self.number(section, key)?
            .ok_or_else(|| missing(section, key))
    }

    fn integer<T: std::str::FromStr>(
        &self,
        section: &str,
        key: &str,
    ) -> Result<Option<T>, ConfigError> {
        self.raw(section, key)
            .map(|e| {
                e.value.parse::<T>().map_err(|_| {
                    err_at(
                        e.line,
                        section,
                        key,
                        format!("expected a non-negative integer, got `{}`", e.value),
                    )
                })
            })
            .transpose()
    }

    fn choice<T>(
        &self,
        section: &str,
        key: &str,
        options: &[(&str, T)],
    ) -> Result<Option<T>, ConfigError>
    where
        T: Copy,
    {
        let Some(e) = self.raw(section, key) else {
            return Ok(None);
        };
        options
            .iter()
            .find(|(name, _)| *name == e.value)
            .map(|(_, v)| Some(*v))
            .ok_or_else(|| {
                let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
                err_at(
                    e.line,
                    section,
                    key,
                    format!("expected one of {}, got `{}`", names.join(" | "), e.value),
                )
            })
    }

    fn line_of(&self, section: &str, key: &str) -> Option<usize> {
        self.raw(section, key)
            .map(|e| e.line)
            .or_else(|| self.sections.get(section).copied())
    }
}

fn err_at(line: usize, section: &str, key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line: Some(line),
        key: Some(format!("{section}.{key}")),
        message: message.into(),
    }
}

fn missing(section: &str, key: &str) -> ConfigError {
    ConfigError {
        line: None,
        key: Some(format!("{section}.{key}")),
        message: "missing required key".into(),
    }
}

fn domain(doc: &Document, section: &str, key: &str, e: giant_atom_core::Error) -> ConfigError {
    ConfigError {
        line: doc.line_of(section, key),
        key: Some(format!("{section}.{key}")),
        message: e.to_string(),
    }
}

fn strip_comment(line: &str) -> &str {
    let cut = line.find(['#', ';']).unwrap_or(line.len());
    line[..cut].trim()
}

fn tokenize(text: &str) -> Result<Document, ConfigError> {
    let mut doc = Document {
        entries: HashMap::new(),
        sections: HashMap::new(),
    };
    let mut current: Option<&'static str> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        let bad = |message: String| ConfigError {
            line: Some(line),
            key: None,
            message,
        };
        if let Some(inner) = content.strip_prefix('[') {
            let name = inner
                .strip_suffix(']')
                .ok_or_else(|| bad(format!("malformed section header `{content}`")))?
                .trim();
            let (known, _) = SCHEMA
                .iter()
                .find(|(s, _)| *s == name)
                .ok_or_else(|| bad(format!("unknown section [{name}]")))?;
            if doc.sections.insert(name.to_string(), line).is_some() {
                return Err(bad(format!("duplicate section [{name}]")));
            }
            current = Some(known);
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| bad(format!("expected `key = value`, got `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let section =
            current.ok_or_else(|| bad(format!("key `{key}` appears before any section")))?;
        let allowed = SCHEMA
            .iter()
            .find(|(s, _)| *s == section)
            .map(|(_, k)| *k)
            .unwrap_or(&[]);
        if !allowed.contains(&key) {
            return Err(err_at(line, section, key, "unknown key"));
        }
        if value.is_empty() {
            return Err(err_at(line, section, key, "empty value"));
        }
        let slot = (section.to_string(), key.to_string());
        if let Some(prev) = doc.entries.get(&slot) {
            return Err(err_at(
                line,
                section,
                key,
                format!("duplicate key (first set on line {})", prev.line),
            ));
        }
        doc.entries.insert(
            slot,
            Entry {
                value: value.to_string(),
                line,
            },
        );
    }
    Ok(doc)
}

fn parse_coupling(doc: &Document) -> Result<ChiralCoupling, ConfigError> {
    let mut rates = [0.0; 4];
    for (slot, key) in rates
        .iter_mut()
        .zip(["gamma_l1", "gamma_r1", "gamma_l2", "gamma_r2"])
    {
        let value = doc.required_number("coupling", key)?;
        if value < 0.0 {
            let line = doc.line_of("coupling", key).unwrap_or(0);
            return Err(err_at(
                line,
                "coupling",
                key,
                format!("rate must be ≥ 0, got {value}"),
            ));
        }
        *slot = value;
    }
    ChiralCoupling::new(rates[0], rates[1], rates[2], rates[3])
        .map_err(|e| domain(doc, "coupling", "gamma_l1", e))
}

fn parse_atom(doc: &Document) -> Result<AtomParams, ConfigError> {
    let omega_e = doc.required_number("atom", "omega_e")?;
    let omega_s = doc.number("atom", "omega_s")?.unwrap_or(omega_e);
    let drive = doc.number("atom", "omega_drive")?.unwrap_or(0.0);
    AtomParams::new(omega_e, omega_s, drive).map_err(|e| domain(doc, "atom", "omega_drive", e))
}

fn parse_geometry(doc: &Document, omega_e: f64) -> Result<GeometryPhase, ConfigError> {
    let derived = doc
        .choice(
            "geometry",
            "theta_mode",
            &[("free", false), ("derived", true)],
        )?
        .unwrap_or(false);
    let markovian = doc
        .choice("geometry", "markovian", &[("true", true), ("false", false)])?
        .unwrap_or(false);
    let tau = doc.number("geometry", "tau")?;
    let theta = doc.number("geometry", "theta")?;

    if markovian && tau.is_some_and(|t| t != 0.0) {
        let line = doc.line_of("geometry", "tau").unwrap_or(0);
        return Err(err_at(
            line,
            "geometry",
            "tau",
            "must be 0 or absent when markovian = true",
        ));
    }
    if derived && theta.is_some() {
        let line = doc.line_of("geometry", "theta").unwrap_or(0);
        return Err(err_at(
            line,
            "geometry",
            "theta",
            "theta is computed from omega_e * tau when theta_mode = derived",
        ));
    }
    let tau = tau.unwrap_or(0.0);
    let made = if derived {
        GeometryPhase::derived(tau, omega_e)
    } else if markovian {
        GeometryPhase::markovian(theta.unwrap_or(0.0))
    } else {
        GeometryPhase::free(tau, theta.unwrap_or(0.0))
    };
    made.map_err(|e| domain(doc, "geometry", "tau", e))
}

fn parse_grid(doc: &Document) -> Result<Option<SweepGrid>, ConfigError> {
    if !doc.has_section("grid") {
        return Ok(None);
    }
    let dmin = doc.required_number("grid", "delta_min")?;
    let dmax = doc.required_number("grid", "delta_max")?;
    let steps: usize = doc
        .integer("grid", "steps")?
        .ok_or_else(|| missing("grid", "steps"))?;
    let grid = SweepGrid::new(dmin, dmax, steps).map_err(|e| domain(doc, "grid", "steps", e))?;

    let omega_keys = ["omega_min", "omega_max", "omega_steps"];
    let present = omega_keys
        .iter()
        .filter(|k| doc.raw("grid", k).is_some())
        .count();
    match present {
        0 => Ok(Some(grid)),
        3 => {
            let omin = doc.required_number("grid", "omega_min")?;
            let omax = doc.required_number("grid", "omega_max")?;
            let osteps: usize = doc
                .integer("grid", "omega_steps")?
                .ok_or_else(|| missing("grid", "omega_steps"))?;
            grid.with_omega(omin, omax, osteps)
                .map(Some)
                .map_err(|e| domain(doc, "grid", "omega_min", e))
        }
        _ => {
            let absent = omega_keys
                .iter()
                .find(|k| doc.raw("grid", k).is_none())
                .unwrap();
            Err(ConfigError {
                line: doc.line_of("grid", absent),
                key: Some(format!("grid.{absent}")),
                message: "omega_min, omega_max and omega_steps must be given together".into(),
            })
        }
    }
}

fn parse_special_points(doc: &Document) -> Result<SpecialPointsOptions, ConfigError> {
    let kind = doc
        .choice(
            "special_points",
            "kind",
            &[
                ("transmission", Some(PointKind::PerfectTransmission)),
                ("reflection", Some(PointKind::PerfectReflection)),
                ("decoupling", Some(PointKind::Decoupling)),
                ("all", None),
            ],
        )?
        .flatten();
    let tolerance = doc
        .number("special_points", "tolerance")?
        .unwrap_or(DEFAULT_SPECIAL_TOL);
    if tolerance <= 0.0 {
        let line = doc.line_of("special_points", "tolerance").unwrap_or(0);
        return Err(err_at(line, "special_points", "tolerance", "must be > 0"));
    }
    Ok(SpecialPointsOptions { kind, tolerance })
}

fn parse_special_tau(doc: &Document) -> Result<SpecialTauOptions, ConfigError> {
    let sign = doc
        .choice(
            "special_tau",
            "sign",
            &[
                ("plus", SignChoice::Plus),
                ("minus", SignChoice::Minus),
                ("both", SignChoice::Both),
            ],
        )?
        .unwrap_or(SignChoice::Both);
    let lo = doc.number("special_tau", "tau_min")?;
    let hi = doc.number("special_tau", "tau_max")?;
    let window = match (lo, hi) {
        (None, None) => None,
        (Some(lo), Some(hi)) if lo <= hi => Some((lo, hi)),
        (Some(_), Some(_)) => {
            let line = doc.line_of("special_tau", "tau_max").unwrap_or(0);
            return Err(err_at(line, "special_tau", "tau_max", "must be ≥ tau_min"));
        }
        (None, Some(_)) => return Err(missing("special_tau", "tau_min")),
        (Some(_), None) => return Err(missing("special_tau", "tau_max")),
    };
    Ok(SpecialTauOptions { sign, window })
}

fn parse_verify(doc: &Document) -> Result<VerifyOptions, ConfigError> {
    Ok(VerifyOptions {
        draws: doc
            .integer("verify", "draws")?
            .unwrap_or(DEFAULT_VERIFY_DRAWS),
        seed: doc.integer("verify", "seed")?.unwrap_or(0),
    })
}

fn parse_output(doc: &Document) -> Result<OutputOptions, ConfigError> {
    let format = doc
        .choice(
            "output",
            "format",
            &[("csv", Format::Csv), ("json", Format::Json)],
        )?
        .unwrap_or_default();
    let path = doc.raw("output", "path").map(|e| PathBuf::from(&e.value));
    Ok(OutputOptions { path, format })
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let doc = tokenize(text)?;
    let coupling = parse_coupling(&doc)?;
    let atom = parse_atom(&doc)?;
    let geometry = parse_geometry(&doc, atom.omega_e)?;
    Ok(RunConfig {
        coupling,
        atom,
        geometry,
        grid: parse_grid(&doc)?,
        special_points: parse_special_points(&doc)?,
        special_tau: parse_special_tau(&doc)?,
        verify: parse_verify(&doc)?,
        output: parse_output(&doc)?,
    })
}
