//! Run configuration: flat `[section]` blocks of `key = value` lines.
//!
//! ```text
//! [substrate]
//! permittivity = 3.5
//! loss_tangent = 0.0027
//! thickness = 50 um
//!
//! [design]
//! frequency = 280 GHz
//!
//! [sweep]
//! fermi_level = 0.3:1.2:0.3 eV
//! relaxation_time = 0.3:1.2:0.3 ps
//! band = 220:325 GHz
//! points = 421
//! ```
//!
//! Optional keys: `design.temperature` (300 K), `patch.width` / `patch.length`
//! (load a fixed geometry instead of designing one), `sweep.variants`
//! (`metal, graphene`), `sweep.metal_conductivity` (aluminium),
//! `output.format` (`csv`) and `output.path` (`gpatch_out`).
//! `#` and `;` start comments.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use gpatch_core::circuit::ALUMINUM_CONDUCTIVITY;
use gpatch_core::material::DEFAULT_TEMPERATURE_K;
use gpatch_core::patch::{PadGeometry, DESIGN_FREQUENCY_RANGE};
use gpatch_core::{ConductorSpec, GrapheneSheet, PatchGeometry, SubstrateSpec};

use crate::units::{parse_band, parse_list, parse_quantity, Dimension, UnitError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// Where the geometry comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeometrySource {
    /// Transmission-line design at `RunConfig::design_frequency`.
    Design,
    /// Fixed width and length in metres.
    Fixed { width: f64, length: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    /// eV
    pub fermi_levels: Vec<f64>,
    /// ps
    pub relaxation_times: Vec<f64>,
    /// Hz
    pub frequency_band: (f64, f64),
    pub frequency_points: usize,
    /// Metal variants first, then graphene cells E_F-major.
    pub conductor_variants: Vec<ConductorSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub substrate: SubstrateSpec,
    pub design_frequency: f64,
    pub geometry: GeometrySource,
    pub sweep: SweepGrid,
    pub output_format: OutputFormat,
    pub output_path: PathBuf,
    pub temperature: f64,
    /// S/m; the metal variant and the feed match both use it.
    pub metal_conductivity: f64,
}

impl RunConfig {
    pub fn build_geometry(&self) -> gpatch_core::Result<PatchGeometry> {
        match self.geometry {
            GeometrySource::Design => gpatch_core::patch::design_patch(self.design_frequency, &self.substrate),
            GeometrySource::Fixed { width, length } => PatchGeometry::new(width, length, self.substrate),
        }
    }

}

#[derive(Debug, Clone, PartialEq)]
pub enum ErrorKind {
    Parse(String),
    Validation(String),
    Unit(UnitError),
}

/// Config error tied to a key and a 1-based line (the last line for missing keys).
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: usize,
    pub key: String,
    pub kind: ErrorKind,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (what, msg) = match &self.kind {
            ErrorKind::Parse(m) => ("parse error", m.clone()),
            ErrorKind::Validation(m) => ("validation error", m.clone()),
            ErrorKind::Unit(e) => ("unit error", e.to_string()),
        };
        write!(f, "line {}: {what} in `{}`: {msg}", self.line, self.key)
    }
}

impl std::error::Error for ConfigError {}

const KNOWN_KEYS: &[&str] = &[
    "substrate.permittivity",
    "substrate.loss_tangent",
    "substrate.thickness",
    "design.frequency",
    "design.temperature",
    "patch.width",
    "patch.length",
    "sweep.fermi_level",
    "sweep.relaxation_time",
    "sweep.band",
    "sweep.points",
    "sweep.variants",
    "sweep.metal_conductivity",
    "output.format",
    "output.path",
];

const REQUIRED_KEYS: &[&str] = &[
    "substrate.permittivity",
    "substrate.loss_tangent",
    "substrate.thickness",
    "design.frequency",
    "sweep.fermi_level",
    "sweep.relaxation_time",
    "sweep.band",
    "sweep.points",
];

struct Entries {
    values: BTreeMap<String, (usize, String)>,
    last_line: usize,
}

impl Entries {
    fn get(&self, key: &str) -> Option<(usize, &str)> {
        self.values.get(key).map(|(l, v)| (*l, v.as_str()))
    }

    fn line(&self, key: &str) -> usize {
        self.values.get(key).map_or(self.last_line, |e| e.0)
    }

    fn err(&self, key: &str, kind: ErrorKind) -> ConfigError {
        ConfigError {
            line: self.line(key),
            key: key.into(),
            kind,
        }
    }

    fn invalid(&self, key: &str, msg: impl Into<String>) -> ConfigError {
        self.err(key, ErrorKind::Validation(msg.into()))
    }

    fn required(&self, key: &str) -> Result<(usize, &str), ConfigError> {
        self.get(key)
            .ok_or_else(|| self.err(key, ErrorKind::Parse("missing required key".into())))
    }

    fn quantity(&self, key: &str, dim: Dimension) -> Result<Option<f64>, ConfigError> {
        self.get(key)
            .map(|(_, v)| parse_quantity(v, dim).map_err(|e| self.err(key, ErrorKind::Unit(e))))
            .transpose()
    }

    fn list(&self, key: &str, dim: Dimension) -> Result<Vec<f64>, ConfigError> {
        let (_, v) = self.required(key)?;
        parse_list(v, dim).map_err(|e| self.err(key, ErrorKind::Unit(e)))
    }
}

fn lex(text: &str) -> Result<Entries, ConfigError> {
    let mut values = BTreeMap::new();
    let mut section: Option<String> = None;
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split(['#', ';']).next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parse_err = |key: &str, msg: String| ConfigError {
            line,
            key: key.into(),
            kind: ErrorKind::Parse(msg),
        };
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| parse_err(content, "unterminated section header".into()))?
                .trim();
            if !KNOWN_KEYS.iter().any(|k| k.split('.').next() == Some(name)) {
                return Err(parse_err(name, "unknown section".into()));
            }
            section = Some(name.to_string());
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(parse_err(content, "expected `key = value`".into()));
        };
        let key = key.trim();
        let Some(sec) = &section else {
            return Err(parse_err(key, "key outside any [section]".into()));
        };
        let full = format!("{sec}.{key}");
        if !KNOWN_KEYS.contains(&full.as_str()) {
            return Err(parse_err(&full, "unknown key".into()));
        }
        let value = value.trim();
        if value.is_empty() {
            return Err(parse_err(&full, "empty value".into()));
        }
        if let Some((first, _)) = values.insert(full.clone(), (line, value.to_string())) {
            return Err(parse_err(&full, format!("duplicate key (first set on line {first})")));
        }
    }
    Ok(Entries { values, last_line })
}

/// Parses and validates a config; nothing is computed until every value passes.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let e = lex(text)?;
    for key in REQUIRED_KEYS {
        e.required(key)?;
    }

    let permittivity = e.quantity("substrate.permittivity", Dimension::Ratio)?.unwrap_or_default();
    let loss_tangent = e.quantity("substrate.loss_tangent", Dimension::Ratio)?.unwrap_or_default();
    let thickness = e.quantity("substrate.thickness", Dimension::Length)?.unwrap_or_default();
    let substrate = SubstrateSpec::new(permittivity, loss_tangent, thickness, PadGeometry::default_cpw())
        .map_err(|err| {
            let key = match &err {
                gpatch_core::Error::Validation { name, .. } if name.starts_with("rel_perm") => "substrate.permittivity",
                gpatch_core::Error::Validation { name, .. } if name.starts_with("loss") => "substrate.loss_tangent",
                _ => "substrate.thickness",
            };
            e.invalid(key, err.to_string())
        })?;

    let (f_lo, f_hi) = DESIGN_FREQUENCY_RANGE;
    let design_frequency = e.quantity("design.frequency", Dimension::Frequency)?.unwrap_or_default();
    if !(f_lo..=f_hi).contains(&design_frequency) {
        return Err(e.invalid("design.frequency", format!("{design_frequency} Hz outside [{f_lo}, {f_hi}] Hz")));
    }
    let temperature = e
        .quantity("design.temperature", Dimension::Temperature)?
        .unwrap_or(DEFAULT_TEMPERATURE_K);
    if temperature <= 0.0 {
        return Err(e.invalid("design.temperature", "must be > 0 K"));
    }

    let geometry = match (
        e.quantity("patch.width", Dimension::Length)?,
        e.quantity("patch.length", Dimension::Length)?,
    ) {
        (None, None) => GeometrySource::Design,
        (Some(width), Some(length)) => {
            PatchGeometry::new(width, length, substrate).map_err(|err| e.invalid("patch.width", err.to_string()))?;
            GeometrySource::Fixed { width, length }
        }
        (Some(_), None) => return Err(e.err("patch.length", ErrorKind::Parse("missing required key".into()))),
        (None, Some(_)) => return Err(e.err("patch.width", ErrorKind::Parse("missing required key".into()))),
    };

    let fermi_levels = e.list("sweep.fermi_level", Dimension::Energy)?;
    let taus_s = e.list("sweep.relaxation_time", Dimension::Time)?;
    let relaxation_times: Vec<f64> = taus_s.iter().map(|t| t * 1e12).collect();
    let (_, band_text) = e.required("sweep.band")?;
    let band = parse_band(band_text, Dimension::Frequency).map_err(|err| e.err("sweep.band", ErrorKind::Unit(err)))?;
    if !(band.0 >= f_lo && band.1 <= f_hi && band.0 < band.1) {
        return Err(e.invalid(
            "sweep.band",
            format!("need {f_lo} Hz <= start < stop <= {f_hi} Hz, got [{}, {}]", band.0, band.1),
        ));
    }
    let (_, points_text) = e.required("sweep.points")?;
    let points: usize = points_text
        .parse()
        .map_err(|_| e.err("sweep.points", ErrorKind::Parse(format!("`{points_text}` is not a whole number"))))?;
    if points < 2 {
        return Err(e.invalid("sweep.points", "need at least 2 points"));
    }

    let metal_conductivity = e
        .quantity("sweep.metal_conductivity", Dimension::Conductivity)?
        .unwrap_or(ALUMINUM_CONDUCTIVITY);
    let metal = ConductorSpec::metal(metal_conductivity)
        .map_err(|err| e.invalid("sweep.metal_conductivity", err.to_string()))?;

    let variant_names: Vec<String> = match e.get("sweep.variants") {
        Some((_, v)) => v.split(',').map(|s| s.trim().to_string()).collect(),
        None => vec!["metal".into(), "graphene".into()],
    };
    let mut conductor_variants = Vec::new();
    for name in &variant_names {
        match name.as_str() {
            "metal" => conductor_variants.push(metal),
            "graphene" => {
                for &ef in &fermi_levels {
                    for &tau in &relaxation_times {
                        let sheet = GrapheneSheet::with_temperature(ef, tau, temperature).map_err(|err| {
                            let key = match &err {
                                gpatch_core::Error::Validation { name, .. } if name.starts_with("fermi") => {
                                    "sweep.fermi_level"
                                }
                                gpatch_core::Error::Validation { name, .. } if name.starts_with("relax") => {
                                    "sweep.relaxation_time"
                                }
                                _ => "design.temperature",
                            };
                            e.invalid(key, err.to_string())
                        })?;
                        conductor_variants.push(ConductorSpec::Graphene(sheet));
                    }
                }
            }
            other => {
                return Err(e.invalid("sweep.variants", format!("unknown variant `{other}` (expected metal or graphene)")))
            }
        }
    }
    if fermi_levels.is_empty() || relaxation_times.is_empty() {
        return Err(e.invalid("sweep.fermi_level", "sweep lists must not be empty"));
    }

    let output_format = match e.get("output.format") {
        Some((_, v)) => v.parse().map_err(|m: String| e.invalid("output.format", m))?,
        None => OutputFormat::Csv,
    };
    let output_path = e.get("output.path").map_or_else(|| PathBuf::from("gpatch_out"), |(_, v)| PathBuf::from(v));

    Ok(RunConfig {
        substrate,
        design_frequency,
        geometry,
        sweep: SweepGrid {
            fermi_levels,
            relaxation_times,
            frequency_band: band,
            frequency_points: points,
            conductor_variants,
        },
        output_format,
        output_path,
        temperature,
        metal_conductivity,
    })
}
