//! 1-D FDTD check of the sheet conductivity model.
//!
//! A normally incident plane wave hits a conductive sheet sitting on one
//! electric-field node. The sheet carries a surface current `K` obeying the
//! Drude auxiliary equation
//!
//! ```text
//! dK/dt + K / tau = A E
//! ```
//!
//! which is advanced with an exponential integrator and coupled to the
//! field update semi-implicitly (trapezoidal in E and K), so the sheet term
//! is stable for any weight. The grid ends in first-order Mur absorbers.
//! Reflection and transmission come from DFTs of probe time series,
//! normalized by a sheet-free reference run on the same grid.
//!
//! This verifies the material update only. It does not model the patch.

use alloc::vec;
use alloc::vec::Vec;

use crate::constants::{LIGHT_SPEED, VACUUM_PERMEABILITY, VACUUM_PERMITTIVITY};
use crate::error::{check_positive, invalid, Error, Result};
use crate::material::{drude_sigma, drude_weight, GrapheneSheet};
use crate::math::{cos, exp, sin, sqrt, PI};
use crate::{constants, Complex};

/// Highest frequency the grid must resolve, Hz.
pub const MAX_FREQUENCY: f64 = 325e9;
/// Centre of the differentiated-Gaussian source spectrum, Hz.
pub const SOURCE_PEAK_FREQUENCY: f64 = 272.5e9;
pub const DEFAULT_COURANT: f64 = 0.99;
pub const MIN_CELLS_PER_WAVELENGTH: f64 = 100.0;
/// Frequencies sampled across the band by [`compare_fdtd_analytic`].
pub const BAND_POINTS: usize = 43;
const INSTABILITY_FACTOR: f64 = 1e6;
/// Source spectrum level (relative to peak) that bounds the usable band.
const SOURCE_SUPPORT_LEVEL: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub cell_size: f64,
    pub cell_count: usize,
    pub time_step: f64,
    pub sheet_index: usize,
    pub courant_number: f64,
    pub source_index: usize,
    /// Distance of both probes from the sheet, in cells.
    pub probe_offset: usize,
}

impl Grid1D {
    /// Grid with `cells_per_wavelength` cells per free-space wavelength at 325 GHz.
    ///
    /// Layout, in wavelengths: Mur wall, 1/2 to the source, 1 to the sheet,
    /// 1/2 to the far Mur wall. Probes sit 1/4 wavelength either side of the sheet.
    pub fn for_resolution(cells_per_wavelength: usize) -> Result<Self> {
        if (cells_per_wavelength as f64) < MIN_CELLS_PER_WAVELENGTH {
            return Err(invalid(
                "resolution [cells/wavelength]",
                cells_per_wavelength as f64,
                "must be at least 100",
            ));
        }
        let r = cells_per_wavelength;
        let cell_size = LIGHT_SPEED / MAX_FREQUENCY / r as f64;
        let source_index = r / 2;
        let sheet_index = source_index + r;
        Self::new(
            cell_size,
            sheet_index + r / 2 + 1,
            DEFAULT_COURANT,
            sheet_index,
            source_index,
            r / 4,
        )
    }

    pub fn new(
        cell_size: f64,
        cell_count: usize,
        courant_number: f64,
        sheet_index: usize,
        source_index: usize,
        probe_offset: usize,
    ) -> Result<Self> {
        check_positive("cell_size [m]", cell_size)?;
        if cell_size > LIGHT_SPEED / MAX_FREQUENCY / MIN_CELLS_PER_WAVELENGTH * (1.0 + 1e-12) {
            return Err(invalid(
                "cell_size [m]",
                cell_size,
                "must resolve the 325 GHz wavelength with at least 100 cells",
            ));
        }
        if !(courant_number > 0.0 && courant_number <= 1.0) {
            return Err(invalid("courant_number", courant_number, "must be in (0, 1]"));
        }
        if probe_offset == 0 {
            return Err(invalid("probe_offset", 0.0, "must be at least one cell"));
        }
        // Node 0 and node cell_count-1 are the absorbing walls.
        let before = sheet_index.checked_sub(probe_offset);
        let inside = matches!(before, Some(b) if b > source_index)
            && source_index >= 1
            && sheet_index + probe_offset + 1 < cell_count;
        if !inside {
            return Err(invalid(
                "sheet_index",
                sheet_index as f64,
                "source, probes and sheet must lie strictly between the absorbing walls in that order",
            ));
        }
        Ok(Grid1D {
            cell_size,
            cell_count,
            time_step: courant_number * cell_size / LIGHT_SPEED,
            sheet_index,
            courant_number,
            source_index,
            probe_offset,
        })
    }

    /// Numerical wavenumber of the Yee scheme at angular frequency `w`.
    pub fn numerical_wavenumber(&self, w: f64) -> f64 {
        let arg = sin(0.5 * w * self.time_step) / self.courant_number;
        2.0 * libm::asin(arg) / self.cell_size
    }
}

/// Complex reflection and transmission of the sheet (`exp(-i w t)` convention).
#[derive(Debug, Clone, PartialEq)]
pub struct SheetScatteringResult {
    pub frequencies: Vec<f64>,
    pub reflection: Vec<Complex>,
    pub transmission: Vec<Complex>,
    /// Absorbed fraction of the incident power.
    pub absorption: Vec<f64>,
}

impl SheetScatteringResult {
    /// max |1 - |r|^2 - |t|^2 - absorption| over the grid.
    pub fn energy_balance_error(&self) -> f64 {
        self.reflection
            .iter()
            .zip(&self.transmission)
            .zip(&self.absorption)
            .map(|((r, t), a)| (1.0 - r.norm_sqr() - t.norm_sqr() - a).abs())
            .fold(0.0, f64::max)
    }
}

/// Closed-form free-standing sheet coefficients for a conductivity in the
/// `exp(-i w t)` convention: `r = -x / (1 + x)`, `t = 1 / (1 + x)`, `x = eta0 sigma / 2`.
pub fn thin_sheet_coefficients(sigma: Complex) -> (Complex, Complex, f64) {
    let eta0 = constants::eta0();
    let x = sigma * (0.5 * eta0);
    let one = Complex::new(1.0, 0.0);
    let t = one / (one + x);
    let r = -x / (one + x);
    let absorption = eta0 * sigma.re * t.norm_sqr();
    (r, t, absorption)
}

pub fn analytic_sheet_coefficients(
    sheet: &GrapheneSheet,
    frequencies: &[f64],
) -> Result<SheetScatteringResult> {
    analytic_drude_coefficients(drude_weight(sheet), sheet.relaxation_time, frequencies)
}

/// Analytic coefficients for a Drude sheet of weight `weight` (S/s); zero is allowed.
pub fn analytic_drude_coefficients(
    weight: f64,
    tau: f64,
    frequencies: &[f64],
) -> Result<SheetScatteringResult> {
    check_drude(weight, tau)?;
    let mut out = SheetScatteringResult {
        frequencies: frequencies.to_vec(),
        reflection: Vec::with_capacity(frequencies.len()),
        transmission: Vec::with_capacity(frequencies.len()),
        absorption: Vec::with_capacity(frequencies.len()),
    };
    for &f in frequencies {
        check_positive("frequency [Hz]", f)?;
        let sigma = drude_sigma(weight, tau, 2.0 * PI * f).to_complex();
        let (r, t, a) = thin_sheet_coefficients(sigma);
        out.reflection.push(r);
        out.transmission.push(t);
        out.absorption.push(a);
    }
    Ok(out)
}

fn check_drude(weight: f64, tau: f64) -> Result<()> {
    if !weight.is_finite() || weight < 0.0 {
        return Err(invalid("drude weight [S/s]", weight, "must be finite and >= 0"));
    }
    check_positive("relaxation_time [s]", tau)?;
    Ok(())
}

/// Differentiated Gaussian whose spectrum `~ w exp(-w^2 T^2 / 4)` peaks at 272.5 GHz.
#[derive(Debug, Clone, Copy)]
struct Source {
    width: f64,
    delay: f64,
}

impl Source {
    fn new() -> Self {
        let width = sqrt(2.0) / (2.0 * PI * SOURCE_PEAK_FREQUENCY);
        Source {
            width,
            delay: 6.0 * width,
        }
    }

    fn at(&self, t: f64) -> f64 {
        let x = (t - self.delay) / self.width;
        -sqrt(2.0) * x * exp(0.5 - x * x)
    }

    /// Spectral magnitude relative to the peak.
    fn relative_spectrum(f: f64) -> f64 {
        let x = f / SOURCE_PEAK_FREQUENCY;
        x * exp(0.5 * (1.0 - x * x))
    }
}

fn check_band(band: (f64, f64)) -> Result<()> {
    check_positive("band start [Hz]", band.0)?;
    check_positive("band stop [Hz]", band.1)?;
    if band.0 >= band.1 {
        return Err(invalid("band stop [Hz]", band.1, "must exceed the band start"));
    }
    for (name, f) in [("band start [Hz]", band.0), ("band stop [Hz]", band.1)] {
        if f > MAX_FREQUENCY * (1.0 + 1e-12) || Source::relative_spectrum(f) < SOURCE_SUPPORT_LEVEL {
            return Err(invalid(name, f, "outside the source's -20 dB support below 325 GHz"));
        }
    }
    Ok(())
}

/// Running DFT `X(w) = sum x(t_n) exp(+i w t_n) dt` on a fixed frequency list.
struct Dft {
    rotors: Vec<Complex>,
    phase: Vec<Complex>,
    sums: Vec<Complex>,
}

impl Dft {
    fn new(omegas: &[f64], dt: f64, t0: f64) -> Self {
        Dft {
            rotors: omegas.iter().map(|&w| Complex::new(cos(w * dt), sin(w * dt))).collect(),
            phase: omegas.iter().map(|&w| Complex::new(cos(w * t0), sin(w * t0))).collect(),
            sums: vec![Complex::new(0.0, 0.0); omegas.len()],
        }
    }

    fn add(&mut self, x: f64) {
        for ((s, p), r) in self.sums.iter_mut().zip(self.phase.iter_mut()).zip(&self.rotors) {
            *s += *p * x;
            *p *= *r;
        }
    }
}

struct Probes {
    before: Dft,
    behind: Dft,
    sheet_field: Dft,
    sheet_current: Dft,
}

/// Field arrays of one run; public so tests can compare runs node by node.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub e: Vec<f64>,
    pub h: Vec<f64>,
    pub sheet_current: f64,
}

fn simulation_steps(grid: &Grid1D, weight: f64, tau: f64, source: &Source) -> usize {
    let transit = grid.cell_count as f64 * grid.cell_size / LIGHT_SPEED;
    let decay_rate = 1.0 / tau + 0.5 * weight * constants::eta0();
    let duration = source.delay + 8.0 * source.width + 4.0 * transit + 30.0 / decay_rate;
    (duration / grid.time_step) as usize + 1
}

/// `weight = None` runs the plain vacuum update at the sheet node.
fn run(
    grid: &Grid1D,
    weight: Option<f64>,
    tau: f64,
    omegas: &[f64],
    steps: usize,
) -> Result<(Probes, FieldState)> {
    let has_sheet = weight.is_some();
    let weight = weight.unwrap_or(0.0);
    let n = grid.cell_count;
    let dt = grid.time_step;
    let dx = grid.cell_size;
    let ce = dt / (VACUUM_PERMITTIVITY * dx);
    let ch = dt / (VACUUM_PERMEABILITY * dx);
    let s = grid.courant_number;
    let mur = (s - 1.0) / (s + 1.0);
    let alpha = exp(-dt / tau);
    let beta = weight * tau * (1.0 - alpha);
    let implicit = 0.25 * ce * beta;

    let source = Source::new();
    let source_peak = sqrt(2.0);
    let limit = INSTABILITY_FACTOR * source_peak;

    let mut e = vec![0.0; n];
    let mut h = vec![0.0; n - 1];
    let mut k = 0.0;
    let ks = grid.sheet_index;
    let before = ks - grid.probe_offset;
    let behind = ks + grid.probe_offset;

    // E and K live on integer time levels; H on half levels.
    let mut probes = Probes {
        before: Dft::new(omegas, dt, dt),
        behind: Dft::new(omegas, dt, dt),
        sheet_field: Dft::new(omegas, dt, dt),
        sheet_current: Dft::new(omegas, dt, dt),
    };

    for step in 0..steps {
        for i in 0..n - 1 {
            h[i] += ch * (e[i] - e[i + 1]);
        }
        let e_left_old = e[0];
        let e_left_next_old = e[1];
        let e_right_old = e[n - 1];
        let e_right_next_old = e[n - 2];
        for i in 1..n - 1 {
            if i == ks && has_sheet {
                continue;
            }
            e[i] += ce * (h[i - 1] - h[i]);
        }
        if has_sheet {
            let e_old = e[ks];
            let curl = ce * (h[ks - 1] - h[ks]);
            let e_new = (e_old * (1.0 - implicit) + curl - ce * (1.0 + alpha) * k * 0.5)
                / (1.0 + implicit);
            k = alpha * k + beta * (e_new + e_old) * 0.5;
            e[ks] = e_new;
        }

        let t = (step + 1) as f64 * dt;
        e[grid.source_index] += source.at(t);

        e[0] = e_left_next_old + mur * (e[1] - e_left_old);
        e[n - 1] = e_right_next_old + mur * (e[n - 2] - e_right_old);

        probes.before.add(e[before]);
        probes.behind.add(e[behind]);
        probes.sheet_field.add(e[ks]);
        probes.sheet_current.add(k);

        let watch = e[before].abs().max(e[behind].abs()).max(e[ks].abs());
        if !(watch < limit) || (step % 64 == 0 && !e.iter().all(|v| v.abs() < limit)) {
            let magnitude = e.iter().fold(watch, |m, v| m.max(v.abs()));
            return Err(Error::Instability { step, magnitude });
        }
    }
    Ok((
        probes,
        FieldState {
            e,
            h,
            sheet_current: k,
        },
    ))
}

/// Field state after `steps` updates with a Drude sheet of `weight`, or with
/// no sheet at all when `weight` is `None`.
pub fn final_fields(grid: &Grid1D, weight: Option<f64>, tau: f64, steps: usize) -> Result<FieldState> {
    if let Some(w) = weight {
        check_drude(w, tau)?;
    }
    Ok(run(grid, weight, tau, &[], steps)?.1)
}

/// FDTD reflection/transmission of a graphene sheet at `BAND_POINTS` frequencies over `band`.
pub fn run_sheet_scattering(
    sheet: &GrapheneSheet,
    grid: &Grid1D,
    band: (f64, f64),
) -> Result<SheetScatteringResult> {
    run_drude_scattering(drude_weight(sheet), sheet.relaxation_time, grid, band)
}

pub fn run_drude_scattering(
    weight: f64,
    tau: f64,
    grid: &Grid1D,
    band: (f64, f64),
) -> Result<SheetScatteringResult> {
    check_drude(weight, tau)?;
    check_band(band)?;
    let grid = Grid1D::new(
        grid.cell_size,
        grid.cell_count,
        grid.courant_number,
        grid.sheet_index,
        grid.source_index,
        grid.probe_offset,
    )?;
    let frequencies = crate::circuit::linspace(band.0, band.1, BAND_POINTS);
    let omegas: Vec<f64> = frequencies.iter().map(|f| 2.0 * PI * f).collect();
    let steps = simulation_steps(&grid, weight, tau, &Source::new());

    let (reference, _) = run(&grid, None, tau, &omegas, steps)?;
    let (loaded, _) = run(&grid, Some(weight), tau, &omegas, steps)?;

    let eta0 = constants::eta0();
    let d = grid.probe_offset as f64 * grid.cell_size;
    let mut out = SheetScatteringResult {
        frequencies,
        reflection: Vec::with_capacity(omegas.len()),
        transmission: Vec::with_capacity(omegas.len()),
        absorption: Vec::with_capacity(omegas.len()),
    };
    for (i, &w) in omegas.iter().enumerate() {
        let k = grid.numerical_wavenumber(w);
        let inc_before = reference.before.sums[i];
        let scattered = loaded.before.sums[i] - inc_before;
        let back_propagate = Complex::new(cos(2.0 * k * d), -sin(2.0 * k * d));
        out.reflection.push(scattered / inc_before * back_propagate);
        out.transmission
            .push(loaded.behind.sums[i] / reference.behind.sums[i]);
        let inc_sheet = reference.sheet_field.sums[i];
        let power = (loaded.sheet_current.sums[i] * loaded.sheet_field.sums[i].conj()).re;
        out.absorption.push(eta0 * power / inc_sheet.norm_sqr());
    }
    Ok(out)
}

/// FDTD run and analytic coefficients on the same frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct FdtdComparison {
    pub fdtd: SheetScatteringResult,
    pub analytic: SheetScatteringResult,
    /// max over the band of |r_fdtd - r_analytic| and |t_fdtd - t_analytic|.
    pub max_error: f64,
}

pub fn compare_fdtd_analytic(
    sheet: &GrapheneSheet,
    grid: &Grid1D,
    band: (f64, f64),
) -> Result<FdtdComparison> {
    compare_drude(drude_weight(sheet), sheet.relaxation_time, grid, band)
}

pub fn compare_drude(
    weight: f64,
    tau: f64,
    grid: &Grid1D,
    band: (f64, f64),
) -> Result<FdtdComparison> {
    let fdtd = run_drude_scattering(weight, tau, grid, band)?;
    let analytic = analytic_drude_coefficients(weight, tau, &fdtd.frequencies)?;
    let max_error = fdtd
        .reflection
        .iter()
        .zip(&analytic.reflection)
        .chain(fdtd.transmission.iter().zip(&analytic.transmission))
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(FdtdComparison {
        fdtd,
        analytic,
        max_error,
    })
}
