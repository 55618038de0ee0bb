//! Subcommands and exit codes.
//!
//! Exit 0 on success, 1 for usage, parse, validation and I/O errors, 2 when a
//! numerical procedure fails.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gpatch_core::circuit::{antenna_report, linspace, FeedMatch, ALUMINUM_CONDUCTIVITY};
use gpatch_core::fdtd::{compare_fdtd_analytic, Grid1D};
use gpatch_core::patch::{design_patch, f_res_metal, patch_for_target};
use gpatch_core::spp::confinement_sweep;
use gpatch_core::{ConductorSpec, DielectricHalfspaces, GrapheneSheet, PadGeometry, PatchGeometry, SubstrateSpec};

use crate::config::{parse_config, ConfigError, OutputFormat};
use crate::emit::{emit, fmt_num, spectra_csv, summary_csv, to_json, EmitError};
use crate::sweep::{evaluate_cell, run_sweep, SweepCell};
use crate::units::{parse_band, parse_list, parse_quantity, Dimension, UnitError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{flag}: {source}")]
    Unit { flag: &'static str, source: UnitError },
    #[error(transparent)]
    Model(#[from] gpatch_core::Error),
    #[error(transparent)]
    Emit(#[from] EmitError),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "gpatch", version, about = "Graphene and metal THz patch antenna models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transmission-line patch design for a metal patch.
    Design {
        #[command(flatten)]
        substrate: SubstrateArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Resonance, S11 dip, bandwidth, efficiency and gain of one antenna.
    Analyze(AnalyzeArgs),
    /// Run a config file sweep.
    Sweep {
        config: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// SPP dispersion table over a frequency band.
    Spp(SppArgs),
    /// 1-D FDTD sheet scattering against the analytic thin-sheet result.
    FdtdCheck(FdtdArgs),
    /// Shortest graphene patch resonating at the design frequency.
    Resize {
        #[command(flatten)]
        substrate: SubstrateArgs,
        #[command(flatten)]
        sheet: SheetArgs,
        /// Reference patch length to compare against, e.g. 220um.
        #[arg(long)]
        reference_length: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct SubstrateArgs {
    /// Design frequency, e.g. 280GHz.
    #[arg(long, default_value = "280GHz")]
    f0: String,
    /// Relative permittivity.
    #[arg(long, default_value = "3.5")]
    er: String,
    /// Loss tangent.
    #[arg(long, default_value = "0.0027")]
    tand: String,
    /// Substrate thickness, e.g. 50um.
    #[arg(long, default_value = "50um")]
    h: String,
}

#[derive(Debug, Args)]
struct SheetArgs {
    /// Fermi level, e.g. 1.2eV.
    #[arg(long, default_value = "1.2eV")]
    ef: String,
    /// Relaxation time, e.g. 1.2ps.
    #[arg(long, default_value = "1.2ps")]
    tau: String,
    /// Temperature, e.g. 300K.
    #[arg(long, default_value = "300K")]
    temperature: String,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format; without it results are printed as text.
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
    /// Output path (a file stem for `sweep`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Suppress progress messages.
    #[arg(long)]
    quiet: bool,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    substrate: SubstrateArgs,
    #[command(flatten)]
    sheet: SheetArgs,
    /// Analyze a metal patch of this conductivity instead of graphene, e.g. 3.56e7S/m.
    #[arg(long)]
    metal: Option<String>,
    /// Patch width; with --length, skips the design step.
    #[arg(long, requires = "length")]
    width: Option<String>,
    #[arg(long, requires = "width")]
    length: Option<String>,
    #[arg(long, default_value = "220:325GHz")]
    band: String,
    #[arg(long, default_value_t = 421)]
    points: usize,
    /// Also emit the S11 spectrum.
    #[arg(long)]
    spectrum: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct SppArgs {
    /// Fermi levels, e.g. 1.2eV or 0.3:1.2:0.3eV.
    #[arg(long, default_value = "1.2eV")]
    ef: String,
    /// Relaxation times, e.g. 1.2ps.
    #[arg(long, default_value = "1.2ps")]
    tau: String,
    #[arg(long, default_value = "220:325GHz")]
    band: String,
    #[arg(long, default_value_t = 22)]
    points: usize,
    #[arg(long, default_value = "1")]
    eps_above: String,
    #[arg(long, default_value = "1")]
    eps_below: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct FdtdArgs {
    #[command(flatten)]
    sheet: SheetArgs,
    /// Cells per shortest wavelength in the band.
    #[arg(long, default_value_t = 200)]
    resolution: usize,
    #[arg(long, default_value = "220:325GHz")]
    band: String,
    #[command(flatten)]
    out: OutputArgs,
}

fn unit(flag: &'static str, text: &str, dim: Dimension) -> CliResult<f64> {
    parse_quantity(text, dim).map_err(|source| CliError::Unit { flag, source })
}

fn band(text: &str) -> CliResult<(f64, f64)> {
    parse_band(text, Dimension::Frequency).map_err(|source| CliError::Unit { flag: "--band", source })
}

impl SubstrateArgs {
    fn substrate(&self) -> CliResult<SubstrateSpec> {
        Ok(SubstrateSpec::new(
            unit("--er", &self.er, Dimension::Ratio)?,
            unit("--tand", &self.tand, Dimension::Ratio)?,
            unit("--h", &self.h, Dimension::Length)?,
            PadGeometry::default_cpw(),
        )?)
    }

    fn f0(&self) -> CliResult<f64> {
        unit("--f0", &self.f0, Dimension::Frequency)
    }
}

impl SheetArgs {
    fn sheet(&self) -> CliResult<GrapheneSheet> {
        Ok(GrapheneSheet::with_temperature(
            unit("--ef", &self.ef, Dimension::Energy)?,
            unit("--tau", &self.tau, Dimension::Time)? * 1e12,
            unit("--temperature", &self.temperature, Dimension::Temperature)?,
        )?)
    }
}

/// Rows of named values rendered as text, CSV or JSON.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn render(&self, format: Option<OutputFormat>) -> String {
        match format {
            None => {
                let mut s = String::new();
                for row in &self.rows {
                    for (k, v) in self.header.iter().zip(row) {
                        let _ = writeln!(s, "{k} = {}", fmt_num(*v));
                    }
                    if self.rows.len() > 1 {
                        s.push('\n');
                    }
                }
                s
            }
            Some(OutputFormat::Csv) => {
                let mut s = self.header.join(",") + "\n";
                for row in &self.rows {
                    let fields: Vec<String> = row.iter().map(|v| fmt_num(*v)).collect();
                    s += &(fields.join(",") + "\n");
                }
                s
            }
            Some(OutputFormat::Json) => {
                let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
                    .rows
                    .iter()
                    .map(|row| {
                        self.header
                            .iter()
                            .zip(row)
                            .map(|(k, v)| {
                                let n = serde_json::Number::from_f64(crate::emit::round_sig(*v, 9));
                                (k.to_string(), n.map_or(serde_json::Value::Null, serde_json::Value::Number))
                            })
                            .collect()
                    })
                    .collect();
                serde_json::to_string_pretty(&rows).expect("plain data serializes") + "\n"
            }
        }
    }
}

impl OutputArgs {
    fn format(&self) -> Option<OutputFormat> {
        self.format.as_deref().map(|f| f.parse().expect("restricted by clap"))
    }

    /// Data to `--out` or standard output.
    fn deliver(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => {
                if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir)
                        .map_err(|source| EmitError { path: dir.to_path_buf(), source })?;
                }
                std::fs::write(path, text).map_err(|source| EmitError { path: path.clone(), source })?;
                self.note(&format!("wrote {}", path.display()));
            }
            None => {
                let _ = std::io::stdout().write_all(text.as_bytes());
            }
        }
        Ok(())
    }

    fn note(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

fn design(substrate: &SubstrateArgs, out: &OutputArgs) -> CliResult<()> {
    let g = design_patch(substrate.f0()?, &substrate.substrate()?)?;
    let table = Table {
        header: vec!["W_um", "L_um", "eps_eff", "dL_um", "f_res_GHz"],
        rows: vec![vec![
            g.width * 1e6,
            g.length * 1e6,
            g.eps_eff,
            g.fringing_extension * 1e6,
            f_res_metal(&g) * 1e-9,
        ]],
    };
    out.deliver(&table.render(out.format()))
}

fn analyze(a: &AnalyzeArgs) -> CliResult<()> {
    let substrate = a.substrate.substrate()?;
    let geometry = match (&a.width, &a.length) {
        (Some(w), Some(l)) => PatchGeometry::new(
            unit("--width", w, Dimension::Length)?,
            unit("--length", l, Dimension::Length)?,
            substrate,
        )?,
        _ => design_patch(a.substrate.f0()?, &substrate)?,
    };
    let conductor = match &a.metal {
        Some(s) => ConductorSpec::metal(unit("--metal", s, Dimension::Conductivity)?)?,
        None => ConductorSpec::Graphene(a.sheet.sheet()?),
    };
    let feed_sigma = match conductor {
        ConductorSpec::Metal { bulk_conductivity } => bulk_conductivity,
        ConductorSpec::Graphene(_) => ALUMINUM_CONDUCTIVITY,
    };
    let feed = FeedMatch::metal_matched(&geometry, feed_sigma)?;
    let band = band(&a.band)?;
    let cells = if a.spectrum {
        vec![SweepCell {
            conductor,
            outcome: Ok(evaluate_cell(&geometry, &conductor, &feed, band, a.points)?),
        }]
    } else {
        let report = antenna_report(&geometry, &conductor, &feed, band, a.points)?;
        let table = Table {
            header: vec!["f_res_GHz", "min_s11_dB", "bw_GHz", "eff", "D_dBi", "G_dBi"],
            rows: vec![vec![
                report.resonant_frequency * 1e-9,
                report.min_s11_db,
                report.bandwidth_minus10db * 1e-9,
                report.efficiency,
                report.directivity_dbi,
                report.gain_dbi,
            ]],
        };
        return a.out.deliver(&table.render(a.out.format()));
    };
    let text = match a.out.format() {
        Some(OutputFormat::Json) => to_json(&cells),
        _ => summary_csv(&cells) + "\n" + &spectra_csv(&cells),
    };
    a.out.deliver(&text)
}

fn sweep(path: &PathBuf, out: &OutputArgs) -> CliResult<()> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.clone(), source })?;
    let config = parse_config(&text)?;
    let format = out.format().unwrap_or(config.output_format);
    let stem = out.out.clone().unwrap_or_else(|| config.output_path.clone());
    out.note(&format!("sweeping {} conductor variants", config.sweep.conductor_variants.len()));
    let result = run_sweep(&config)?;
    for cell in &result.cells {
        if let Err(e) = &cell.outcome {
            out.note(&format!("cell {:?} failed: {e}", cell.conductor));
        }
    }
    for p in emit(&result.cells, format, &stem)? {
        out.note(&format!("wrote {}", p.display()));
    }
    Ok(())
}

fn spp(a: &SppArgs) -> CliResult<()> {
    let list = |flag, text: &str, dim| parse_list(text, dim).map_err(|source| CliError::Unit { flag, source });
    let efs = list("--ef", &a.ef, Dimension::Energy)?;
    let taus = list("--tau", &a.tau, Dimension::Time)?;
    let mut sheets = Vec::new();
    for &ef in &efs {
        for &tau in &taus {
            sheets.push(GrapheneSheet::new(ef, tau * 1e12)?);
        }
    }
    let (lo, hi) = band(&a.band)?;
    if a.points < 2 {
        return Err(gpatch_core::Error::Validation {
            name: "points",
            value: a.points as f64,
            reason: "need at least 2 points".into(),
        }
        .into());
    }
    let halfspaces = DielectricHalfspaces::new(
        unit("--eps-above", &a.eps_above, Dimension::Ratio)?,
        unit("--eps-below", &a.eps_below, Dimension::Ratio)?,
    )?;
    let cells = confinement_sweep(&sheets, &linspace(lo, hi, a.points), &halfspaces)?;
    let mut rows = Vec::new();
    for c in &cells {
        match &c.result {
            Ok(s) => rows.push(vec![
                c.sheet.fermi_level,
                c.sheet.relaxation_time_ps(),
                c.frequency * 1e-9,
                s.wavenumber.re,
                s.wavenumber.im,
                s.confinement_ratio,
                s.spp_wavelength * 1e6,
                s.propagation_length * 1e6,
            ]),
            Err(e) => {
                a.out.note(&format!(
                    "{} eV, {} ps, {} GHz: {e}",
                    fmt_num(c.sheet.fermi_level),
                    fmt_num(c.sheet.relaxation_time_ps()),
                    fmt_num(c.frequency * 1e-9)
                ));
                rows.push(vec![
                    c.sheet.fermi_level,
                    c.sheet.relaxation_time_ps(),
                    c.frequency * 1e-9,
                    f64::NAN,
                    f64::NAN,
                    f64::NAN,
                    f64::NAN,
                    f64::NAN,
                ]);
            }
        }
    }
    let table = Table {
        header: vec![
            "fermi_eV", "tau_ps", "freq_GHz", "q_re_per_m", "q_im_per_m", "confinement", "lambda_spp_um", "Lp_um",
        ],
        rows,
    };
    a.out.deliver(&table.render(Some(a.out.format().unwrap_or(OutputFormat::Csv))))
}

fn fdtd_check(a: &FdtdArgs) -> CliResult<()> {
    let sheet = a.sheet.sheet()?;
    let grid = Grid1D::for_resolution(a.resolution)?;
    let cmp = compare_fdtd_analytic(&sheet, &grid, band(&a.band)?)?;
    let table = Table {
        header: vec!["resolution", "max_error", "energy_balance_error", "cells"],
        rows: vec![vec![
            a.resolution as f64,
            cmp.max_error,
            cmp.fdtd.energy_balance_error(),
            grid.cell_count as f64,
        ]],
    };
    a.out.deliver(&table.render(a.out.format()))
}

fn resize(
    substrate: &SubstrateArgs,
    sheet: &SheetArgs,
    reference_length: Option<&str>,
    out: &OutputArgs,
) -> CliResult<()> {
    let inv = patch_for_target(substrate.f0()?, &substrate.substrate()?, &sheet.sheet()?)?;
    let mut header = vec!["W_um", "L_um", "L_metal_um", "f_res_GHz", "area_reduction", "iterations"];
    let mut row = vec![
        inv.geometry.width * 1e6,
        inv.geometry.length * 1e6,
        inv.metal_geometry.length * 1e6,
        inv.resonance * 1e-9,
        inv.area_reduction(),
        inv.iterations as f64,
    ];
    if let Some(text) = reference_length {
        let cmp = inv.compare_length(unit("--reference-length", text, Dimension::Length)?);
        header.extend(["reference_L_um", "L_difference_um", "reference_area_reduction"]);
        row.extend([cmp.reference_length * 1e6, cmp.difference * 1e6, cmp.reference_area_reduction]);
        out.note(&format!(
            "note: model length {} um vs reference {} um; the reference area reduction ({}) is not reproduced \
             by the transmission-line model ({})",
            fmt_num(cmp.model_length * 1e6),
            fmt_num(cmp.reference_length * 1e6),
            fmt_num(cmp.reference_area_reduction),
            fmt_num(cmp.model_area_reduction),
        ));
    }
    out.deliver(&Table { header, rows: vec![row] }.render(out.format()))
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Design { substrate, out } => design(substrate, out),
        Command::Analyze(a) => analyze(a),
        Command::Sweep { config, out } => sweep(config, out),
        Command::Spp(a) => spp(a),
        Command::FdtdCheck(a) => fdtd_check(a),
        Command::Resize { substrate, sheet, reference_length, out } => {
            resize(substrate, sheet, reference_length.as_deref(), out)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
