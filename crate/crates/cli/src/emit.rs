//! CSV and JSON writers for sweep results.
//!
//! CSV goes to `<stem>_spectra.csv` and `<stem>_summary.csv`, JSON to
//! `<stem>.json`. Numbers carry 9 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use gpatch_core::ConductorSpec;
use serde::Serialize;
use serde_json::Value;

use crate::config::OutputFormat;
use crate::sweep::SweepCell;

pub const SPECTRA_HEADER: [&str; 7] = ["variant", "fermi_eV", "tau_ps", "freq_GHz", "s11_dB", "Rin_ohm", "Xin_ohm"];
pub const SUMMARY_HEADER: [&str; 9] = [
    "variant", "fermi_eV", "tau_ps", "f_res_GHz", "min_s11_dB", "bw_GHz", "eff", "D_dBi", "G_dBi",
];

#[derive(Debug, thiserror::Error)]
#[error("cannot write {}: {source}", path.display())]
pub struct EmitError {
    pub path: PathBuf,
    #[source]
    pub source: std::io::Error,
}

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// 9-significant-digit text, plain notation for moderate magnitudes.
pub fn fmt_num(x: f64) -> String {
    let r = round_sig(x, 9);
    if !r.is_finite() {
        return r.to_string();
    }
    let a = r.abs();
    if a == 0.0 || (1e-4..1e9).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

fn json_num(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x, 9)).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, Copy)]
struct Variant {
    name: &'static str,
    fermi_ev: Option<f64>,
    tau_ps: Option<f64>,
}

fn variant(c: &ConductorSpec) -> Variant {
    match c {
        ConductorSpec::Metal { .. } => Variant { name: "metal", fermi_ev: None, tau_ps: None },
        ConductorSpec::Graphene(s) => Variant {
            name: "graphene",
            fermi_ev: Some(s.fermi_level),
            tau_ps: Some(s.relaxation_time_ps()),
        },
    }
}

fn opt_text(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

fn opt_json(x: Option<f64>) -> Value {
    x.map_or(Value::Null, json_num)
}

#[derive(Serialize)]
struct SummaryRow {
    variant: &'static str,
    #[serde(rename = "fermi_eV")]
    fermi_ev: Value,
    tau_ps: Value,
    #[serde(rename = "f_res_GHz")]
    f_res_ghz: Value,
    #[serde(rename = "min_s11_dB")]
    min_s11_db: Value,
    #[serde(rename = "bw_GHz")]
    bw_ghz: Value,
    eff: Value,
    #[serde(rename = "D_dBi")]
    d_dbi: Value,
    #[serde(rename = "G_dBi")]
    g_dbi: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct SpectrumRow {
    variant: &'static str,
    #[serde(rename = "fermi_eV")]
    fermi_ev: Value,
    tau_ps: Value,
    #[serde(rename = "freq_GHz")]
    freq_ghz: Value,
    #[serde(rename = "s11_dB")]
    s11_db: Value,
    #[serde(rename = "Rin_ohm")]
    rin_ohm: Value,
    #[serde(rename = "Xin_ohm")]
    xin_ohm: Value,
}

#[derive(Serialize)]
struct JsonDoc {
    summary: Vec<SummaryRow>,
    spectra: Vec<SpectrumRow>,
}

fn csv_line(out: &mut String, fields: &[String]) {
    out.push_str(&fields.join(","));
    out.push('\n');
}

/// Summary CSV. Failed cells keep their variant columns and leave the rest empty.
pub fn summary_csv(cells: &[SweepCell]) -> String {
    let mut out = SUMMARY_HEADER.join(",") + "\n";
    for cell in cells {
        let v = variant(&cell.conductor);
        let mut fields = vec![v.name.to_string(), opt_text(v.fermi_ev), opt_text(v.tau_ps)];
        match &cell.outcome {
            Ok(o) => {
                let r = &o.report;
                fields.extend(
                    [
                        r.resonant_frequency * 1e-9,
                        r.min_s11_db,
                        r.bandwidth_minus10db * 1e-9,
                        r.efficiency,
                        r.directivity_dbi,
                        r.gain_dbi,
                    ]
                    .map(fmt_num),
                );
            }
            Err(_) => fields.extend(std::iter::repeat_n(String::new(), 6)),
        }
        csv_line(&mut out, &fields);
    }
    out
}

pub fn spectra_csv(cells: &[SweepCell]) -> String {
    let mut out = SPECTRA_HEADER.join(",") + "\n";
    for cell in cells {
        let v = variant(&cell.conductor);
        let Ok(o) = &cell.outcome else { continue };
        for p in &o.spectrum {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                v.name,
                opt_text(v.fermi_ev),
                opt_text(v.tau_ps),
                fmt_num(p.frequency * 1e-9),
                fmt_num(p.s11_db),
                fmt_num(p.input_resistance),
                fmt_num(p.input_reactance),
            );
        }
    }
    out
}

pub fn to_json(cells: &[SweepCell]) -> String {
    let mut doc = JsonDoc { summary: Vec::new(), spectra: Vec::new() };
    for cell in cells {
        let v = variant(&cell.conductor);
        let (fermi_ev, tau_ps) = (opt_json(v.fermi_ev), opt_json(v.tau_ps));
        match &cell.outcome {
            Ok(o) => {
                let r = &o.report;
                doc.summary.push(SummaryRow {
                    variant: v.name,
                    fermi_ev: fermi_ev.clone(),
                    tau_ps: tau_ps.clone(),
                    f_res_ghz: json_num(r.resonant_frequency * 1e-9),
                    min_s11_db: json_num(r.min_s11_db),
                    bw_ghz: json_num(r.bandwidth_minus10db * 1e-9),
                    eff: json_num(r.efficiency),
                    d_dbi: json_num(r.directivity_dbi),
                    g_dbi: json_num(r.gain_dbi),
                    error: None,
                });
                doc.spectra.extend(o.spectrum.iter().map(|p| SpectrumRow {
                    variant: v.name,
                    fermi_ev: fermi_ev.clone(),
                    tau_ps: tau_ps.clone(),
                    freq_ghz: json_num(p.frequency * 1e-9),
                    s11_db: json_num(p.s11_db),
                    rin_ohm: json_num(p.input_resistance),
                    xin_ohm: json_num(p.input_reactance),
                }));
            }
            Err(e) => doc.summary.push(SummaryRow {
                variant: v.name,
                fermi_ev,
                tau_ps,
                f_res_ghz: Value::Null,
                min_s11_db: Value::Null,
                bw_ghz: Value::Null,
                eff: Value::Null,
                d_dbi: Value::Null,
                g_dbi: Value::Null,
                error: Some(e.to_string()),
            }),
        }
    }
    let mut text = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    text.push('\n');
    text
}

fn with_suffix(stem: &Path, suffix: &str) -> PathBuf {
    let mut name = stem.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn write(path: PathBuf, text: &str) -> Result<PathBuf, EmitError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| EmitError { path: dir.to_path_buf(), source })?;
    }
    fs::write(&path, text).map_err(|source| EmitError { path: path.clone(), source })?;
    Ok(path)
}

/// Writes the result files for `stem` and returns their paths.
pub fn emit(cells: &[SweepCell], format: OutputFormat, stem: &Path) -> Result<Vec<PathBuf>, EmitError> {
    match format {
        OutputFormat::Csv => Ok(vec![
            write(with_suffix(stem, "_spectra.csv"), &spectra_csv(cells))?,
            write(with_suffix(stem, "_summary.csv"), &summary_csv(cells))?,
        ]),
        OutputFormat::Json => Ok(vec![write(with_suffix(stem, ".json"), &to_json(cells))?]),
    }
}
