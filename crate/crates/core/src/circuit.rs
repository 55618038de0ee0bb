//! Cavity / equivalent-circuit model of a metal or graphene patch.
//!
//! The graphene sheet enters through its kinetic inductance `L_k`, which sits
//! in series with the magnetic inductance `mu0 h` of the patch-over-ground
//! line, so
//!
//! ```text
//! f_graphene = f_metal / sqrt(1 + L_k / (mu0 h))
//! ```
//!
//! Losses are tracked as quality factors (radiation through two edge slots,
//! conductor, dielectric). Near resonance the patch is a parallel RLC with
//! `Q = Q_total` and peak resistance `Q_total / (w_res C)`. The feed is an
//! ideal transformer that matches the aluminium patch of the same geometry to
//! 50 ohm; graphene variants see the same transformer, so tuning shows up as
//! mismatch.
//!
//! Impedances reported here use the `exp(+j w t)` circuit convention
//! (positive reactance is inductive).

use alloc::vec::Vec;

use crate::constants::{LIGHT_SPEED, VACUUM_PERMEABILITY, VACUUM_PERMITTIVITY};
use crate::error::{check_positive, invalid, Result};
use crate::material::{sheet_impedance, GrapheneSheet};
use crate::math::{cos, db10, db20, sin, sqrt, PI};
use crate::patch::{f_res_metal, PatchGeometry};
use crate::Complex;

/// Bulk conductivity of aluminium, S/m.
pub const ALUMINUM_CONDUCTIVITY: f64 = 3.56e7;
pub const REFERENCE_IMPEDANCE: f64 = 50.0;
/// Magnitude floor for |S11| so perfectly matched points stay finite (-300 dB).
const MIN_REFLECTION: f64 = 1e-15;
const MINUS_10_DB: f64 = -10.0;
const QUADRATURE_PANELS: usize = 240;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConductorSpec {
    Metal { bulk_conductivity: f64 },
    Graphene(GrapheneSheet),
}

impl ConductorSpec {
    pub fn aluminum() -> Self {
        ConductorSpec::Metal {
            bulk_conductivity: ALUMINUM_CONDUCTIVITY,
        }
    }

    pub fn metal(bulk_conductivity: f64) -> Result<Self> {
        Ok(ConductorSpec::Metal {
            bulk_conductivity: check_positive("bulk_conductivity [S/m]", bulk_conductivity)?,
        })
    }

    fn validate(&self) -> Result<()> {
        if let ConductorSpec::Metal { bulk_conductivity } = self {
            check_positive("bulk_conductivity [S/m]", *bulk_conductivity)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QFactors {
    pub q_radiation: f64,
    pub q_conductor: f64,
    pub q_dielectric: f64,
    pub q_total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumResult {
    /// Hz.
    pub frequency: f64,
    pub s11_db: f64,
    /// Ohm, seen through the feed transformer.
    pub input_resistance: f64,
    pub input_reactance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaReport {
    pub resonant_frequency: f64,
    pub min_s11_db: f64,
    /// Hz; zero when S11 never drops below -10 dB.
    pub bandwidth_minus10db: f64,
    pub efficiency: f64,
    pub directivity_dbi: f64,
    pub gain_dbi: f64,
}

/// Resonant frequency of the patch made of `conductor`, Hz.
pub fn graphene_resonance(geometry: &PatchGeometry, conductor: &ConductorSpec) -> Result<f64> {
    conductor.validate()?;
    let f_metal = f_res_metal(geometry);
    Ok(match conductor {
        ConductorSpec::Metal { .. } => f_metal,
        ConductorSpec::Graphene(sheet) => {
            let lk = sheet_impedance(sheet).kinetic_inductance;
            f_metal / sqrt(1.0 + lk / magnetic_inductance(geometry))
        }
    })
}

/// mu0 h, the per-square inductance of the patch-over-ground line.
fn magnetic_inductance(geometry: &PatchGeometry) -> f64 {
    VACUUM_PERMEABILITY * geometry.substrate.thickness
}

/// Parallel-plate cavity capacitance eps0 eps_eff L W / (2 h), F.
pub fn cavity_capacitance(geometry: &PatchGeometry) -> f64 {
    VACUUM_PERMITTIVITY * geometry.eps_eff * geometry.length * geometry.width
        / (2.0 * geometry.substrate.thickness)
}

/// Conductance of one radiating edge slot, S.
pub fn slot_conductance(width: f64, frequency: f64) -> f64 {
    let w_over_lambda = width * frequency / LIGHT_SPEED;
    if w_over_lambda < 1.0 {
        w_over_lambda * w_over_lambda / 90.0
    } else {
        w_over_lambda / 120.0
    }
}

pub fn q_factors(
    geometry: &PatchGeometry,
    conductor: &ConductorSpec,
    frequency: f64,
) -> Result<QFactors> {
    conductor.validate()?;
    check_positive("frequency [Hz]", frequency)?;
    let w = 2.0 * PI * frequency;
    let l_mag = magnetic_inductance(geometry);
    let q_conductor = match conductor {
        ConductorSpec::Metal { bulk_conductivity } => {
            let skin_resistance = sqrt(w * VACUUM_PERMEABILITY / (2.0 * bulk_conductivity));
            w * l_mag / skin_resistance
        }
        ConductorSpec::Graphene(sheet) => {
            let z = sheet_impedance(sheet);
            w * (l_mag + z.kinetic_inductance) / z.sheet_resistance
        }
    };
    let tan_d = geometry.substrate.loss_tangent;
    let q_dielectric = if tan_d > 0.0 { 1.0 / tan_d } else { f64::INFINITY };
    let q_radiation = w * cavity_capacitance(geometry)
        / (2.0 * slot_conductance(geometry.width, frequency));
    let q_total = 1.0 / (1.0 / q_radiation + 1.0 / q_conductor + 1.0 / q_dielectric);
    Ok(QFactors {
        q_radiation,
        q_conductor,
        q_dielectric,
        q_total,
    })
}

/// Parallel RLC seen at the feed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonator {
    pub frequency: f64,
    pub q_total: f64,
    /// Peak (resonant) resistance before the feed transformer, ohm.
    pub peak_resistance: f64,
}

impl Resonator {
    pub fn of(geometry: &PatchGeometry, conductor: &ConductorSpec) -> Result<Self> {
        let f = graphene_resonance(geometry, conductor)?;
        let q = q_factors(geometry, conductor, f)?;
        Ok(Resonator {
            frequency: f,
            q_total: q.q_total,
            peak_resistance: q.q_total / (2.0 * PI * f * cavity_capacitance(geometry)),
        })
    }

    /// Engineering-convention impedance `R / (1 + j Q (f/f0 - f0/f))`.
    pub fn impedance(&self, frequency: f64) -> Complex {
        let detune = frequency / self.frequency - self.frequency / frequency;
        Complex::new(self.peak_resistance, 0.0) / Complex::new(1.0, self.q_total * detune)
    }
}

/// Ideal impedance transformer between the patch and the 50 ohm reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeedMatch {
    /// Impedance ratio n^2 applied to the patch impedance.
    pub impedance_ratio: f64,
}

impl FeedMatch {
    /// Transformer matching a metal patch of this geometry at its resonance.
    pub fn metal_matched(geometry: &PatchGeometry, bulk_conductivity: f64) -> Result<Self> {
        let metal = ConductorSpec::metal(bulk_conductivity)?;
        let r = Resonator::of(geometry, &metal)?;
        Ok(FeedMatch {
            impedance_ratio: REFERENCE_IMPEDANCE / r.peak_resistance,
        })
    }

    pub fn aluminum_matched(geometry: &PatchGeometry) -> Result<Self> {
        Self::metal_matched(geometry, ALUMINUM_CONDUCTIVITY)
    }
}

fn spectrum_point(res: &Resonator, feed: &FeedMatch, frequency: f64) -> SpectrumResult {
    let z = res.impedance(frequency) * feed.impedance_ratio;
    let gamma = (z - REFERENCE_IMPEDANCE) / (z + REFERENCE_IMPEDANCE);
    SpectrumResult {
        frequency,
        s11_db: db20(gamma.norm().max(MIN_REFLECTION)).min(0.0),
        input_resistance: z.re,
        input_reactance: z.im,
    }
}

/// `points` equally spaced frequencies from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let step = (hi - lo) / (points as f64 - 1.0);
    (0..points)
        .map(|i| if i + 1 == points { hi } else { lo + step * i as f64 })
        .collect()
}

fn check_band(band: (f64, f64), points: usize) -> Result<()> {
    check_positive("band start [Hz]", band.0)?;
    check_positive("band stop [Hz]", band.1)?;
    if band.0 >= band.1 {
        return Err(invalid("band stop [Hz]", band.1, "must exceed the band start"));
    }
    if points < 2 {
        return Err(invalid("points", points as f64, "need at least 2 points"));
    }
    Ok(())
}

/// S11 over `band` with the aluminium-matched feed.
pub fn s11_spectrum(
    geometry: &PatchGeometry,
    conductor: &ConductorSpec,
    band: (f64, f64),
    points: usize,
) -> Result<Vec<SpectrumResult>> {
    let feed = FeedMatch::aluminum_matched(geometry)?;
    s11_spectrum_with_feed(geometry, conductor, &feed, band, points)
}

pub fn s11_spectrum_with_feed(
    geometry: &PatchGeometry,
    conductor: &ConductorSpec,
    feed: &FeedMatch,
    band: (f64, f64),
    points: usize,
) -> Result<Vec<SpectrumResult>> {
    check_band(band, points)?;
    let res = Resonator::of(geometry, conductor)?;
    Ok(linspace(band.0, band.1, points)
        .into_iter()
        .map(|f| spectrum_point(&res, feed, f))
        .collect())
}

/// Width of the contiguous S11 < -10 dB interval around the global minimum.
/// Crossings are linearly interpolated; an interval running into the band edge
/// stops there.
pub fn bandwidth_minus10db(spectrum: &[SpectrumResult]) -> f64 {
    let Some((imin, min)) = spectrum
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.s11_db.total_cmp(&b.1.s11_db))
    else {
        return 0.0;
    };
    if !(min.s11_db < MINUS_10_DB) {
        return 0.0;
    }
    let crossing = |a: &SpectrumResult, b: &SpectrumResult| {
        a.frequency + (MINUS_10_DB - a.s11_db) * (b.frequency - a.frequency) / (b.s11_db - a.s11_db)
    };
    let mut lo = imin;
    while lo > 0 && spectrum[lo - 1].s11_db < MINUS_10_DB {
        lo -= 1;
    }
    let mut hi = imin;
    while hi + 1 < spectrum.len() && spectrum[hi + 1].s11_db < MINUS_10_DB {
        hi += 1;
    }
    let f_lo = if lo == 0 {
        spectrum[0].frequency
    } else {
        crossing(&spectrum[lo - 1], &spectrum[lo])
    };
    let f_hi = if hi + 1 == spectrum.len() {
        spectrum[hi].frequency
    } else {
        crossing(&spectrum[hi], &spectrum[hi + 1])
    };
    f_hi - f_lo
}

fn slot_pattern(half_electrical_width: f64, cos_theta: f64) -> f64 {
    if cos_theta.abs() < 1e-12 {
        half_electrical_width
    } else {
        sin(half_electrical_width * cos_theta) / cos_theta
    }
}

fn simpson_weight(i: usize, n: usize) -> f64 {
    if i == 0 || i == n {
        1.0
    } else if i % 2 == 1 {
        4.0
    } else {
        2.0
    }
}

/// Directivity (linear) of two radiating slots of width `width` separated by
/// `effective_length`:
///
/// ```text
/// D = (2 pi W / lambda0)^2 pi / I2
/// I2 = int_0^pi int_0^pi [sin(k0 W cos(t) / 2) / cos(t)]^2 sin^3(t) cos^2(k0 Leff sin(t) sin(p) / 2) dt dp
/// ```
///
/// I2 is evaluated with composite Simpson on a 240 x 240 panel grid.
pub fn two_slot_directivity(width: f64, effective_length: f64, frequency: f64) -> f64 {
    let lambda0 = LIGHT_SPEED / frequency;
    let k0 = 2.0 * PI / lambda0;
    let a = 0.5 * k0 * width;
    let b = 0.5 * k0 * effective_length;
    let n = QUADRATURE_PANELS;
    let h = PI / n as f64;
    let mut integral = 0.0;
    for i in 0..=n {
        let theta = h * i as f64;
        let (st, ct) = (sin(theta), cos(theta));
        let slot = slot_pattern(a, ct);
        let radial = slot * slot * st * st * st;
        if radial == 0.0 {
            continue;
        }
        let mut inner = 0.0;
        for j in 0..=n {
            let phi = h * j as f64;
            let af = cos(b * st * sin(phi));
            inner += simpson_weight(j, n) * af * af;
        }
        integral += simpson_weight(i, n) * radial * inner * h / 3.0;
    }
    integral *= h / 3.0;
    let x = 2.0 * PI * width / lambda0;
    x * x * PI / integral
}

/// Report with a spectrum on `f_res * (1 +/- 0.25)` and the aluminium-matched feed.
pub fn gain_report(geometry: &PatchGeometry, conductor: &ConductorSpec) -> Result<AntennaReport> {
    let feed = FeedMatch::aluminum_matched(geometry)?;
    let f = graphene_resonance(geometry, conductor)?;
    antenna_report(geometry, conductor, &feed, (0.75 * f, 1.25 * f), 4001)
}

pub fn antenna_report(
    geometry: &PatchGeometry,
    conductor: &ConductorSpec,
    feed: &FeedMatch,
    band: (f64, f64),
    points: usize,
) -> Result<AntennaReport> {
    let spectrum = s11_spectrum_with_feed(geometry, conductor, feed, band, points)?;
    let f_res = graphene_resonance(geometry, conductor)?;
    let q = q_factors(geometry, conductor, f_res)?;
    let efficiency = q.q_total / q.q_radiation;
    let directivity_dbi = db10(two_slot_directivity(
        geometry.width,
        geometry.effective_length(),
        f_res,
    ));
    let min_s11_db = spectrum
        .iter()
        .map(|p| p.s11_db)
        .fold(f64::INFINITY, f64::min);
    Ok(AntennaReport {
        resonant_frequency: f_res,
        min_s11_db,
        bandwidth_minus10db: bandwidth_minus10db(&spectrum),
        efficiency,
        directivity_dbi,
        gain_dbi: directivity_dbi + db10(efficiency),
    })
}
