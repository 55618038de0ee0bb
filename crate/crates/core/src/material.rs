//! Graphene sheet electrodynamics in the intraband (Drude-like) Kubo form.
//!
//! The surface conductivity is
//!
//! ```text
//! sigma(w) = A * i / (w + i/tau),   A = (2 e^2 kB T / (pi hbar^2)) ln[2 cosh(E_F / (2 kB T))]
//! ```
//!
//! written for the `exp(-i w t)` time dependence, so a lossy inductive sheet has
//! `Re sigma > 0` and `Im sigma > 0`. [`SheetConductivity::engineering`] is the
//! one place that converts to the `exp(+j w t)` convention.
//!
//! The Fermi level is sometimes written as the chemical potential `mu_c`; both
//! names refer to [`GrapheneSheet::fermi_level`].

use crate::constants::{PhysicalConstants, EV};
use crate::error::{check_positive, check_range, Result};
use crate::math::{cosh, exp, ln, ln_1p, PI};
use crate::Complex;

pub const FERMI_LEVEL_RANGE_EV: (f64, f64) = (0.05, 2.0);
pub const RELAXATION_TIME_RANGE_PS: (f64, f64) = (0.05, 5.0);
pub const DEFAULT_TEMPERATURE_K: f64 = 300.0;

/// Electronic state of a graphene sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrapheneSheet {
    /// Fermi level, eV.
    pub fermi_level: f64,
    /// Carrier relaxation time, s.
    pub relaxation_time: f64,
    /// Temperature, K.
    pub temperature: f64,
}

impl GrapheneSheet {
    /// Sheet at 300 K from a Fermi level in eV and a relaxation time in ps.
    pub fn new(fermi_level_ev: f64, relaxation_time_ps: f64) -> Result<Self> {
        Self::with_temperature(fermi_level_ev, relaxation_time_ps, DEFAULT_TEMPERATURE_K)
    }

    pub fn with_temperature(
        fermi_level_ev: f64,
        relaxation_time_ps: f64,
        temperature_k: f64,
    ) -> Result<Self> {
        let (ef_lo, ef_hi) = FERMI_LEVEL_RANGE_EV;
        let (tau_lo, tau_hi) = RELAXATION_TIME_RANGE_PS;
        check_range("fermi_level [eV]", fermi_level_ev, ef_lo, ef_hi)?;
        check_range("relaxation_time [ps]", relaxation_time_ps, tau_lo, tau_hi)?;
        check_positive("temperature [K]", temperature_k)?;
        Ok(GrapheneSheet {
            fermi_level: fermi_level_ev,
            relaxation_time: relaxation_time_ps * 1e-12,
            temperature: temperature_k,
        })
    }

    pub fn relaxation_time_ps(&self) -> f64 {
        self.relaxation_time * 1e12
    }
}

/// Time-dependence convention a complex quantity is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeConvention {
    /// Fields vary as `exp(-i w t)`; inductive sheets have `Im sigma > 0`.
    PhysicsMinusIwt,
}

/// Complex surface conductivity in siemens (per square).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetConductivity {
    pub real_part: f64,
    pub imag_part: f64,
    pub convention: TimeConvention,
}

impl SheetConductivity {
    pub fn new(real_part: f64, imag_part: f64) -> Self {
        SheetConductivity {
            real_part,
            imag_part,
            convention: TimeConvention::PhysicsMinusIwt,
        }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0)
    }

    /// Value in the stored `exp(-i w t)` convention.
    pub fn to_complex(&self) -> Complex {
        Complex::new(self.real_part, self.imag_part)
    }

    /// Value in the `exp(+j w t)` engineering convention (complex conjugate).
    pub fn engineering(&self) -> Complex {
        self.to_complex().conj()
    }

    pub fn magnitude(&self) -> f64 {
        self.to_complex().norm()
    }
}

/// Frequency-independent series R-L decomposition of `1/sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetImpedance {
    /// Ohm per square.
    pub sheet_resistance: f64,
    /// Henry per square.
    pub kinetic_inductance: f64,
}

impl SheetImpedance {
    /// `1/sigma(w) = R_s - i w L_k` in the stored convention.
    pub fn at(&self, angular_frequency: f64) -> Complex {
        Complex::new(
            self.sheet_resistance,
            -angular_frequency * self.kinetic_inductance,
        )
    }
}

/// `ln(2 cosh x)` without overflow for large `x`.
pub(crate) fn ln_two_cosh(x: f64) -> f64 {
    let x = x.abs();
    if x > 20.0 {
        x + ln_1p(exp(-2.0 * x))
    } else {
        ln(2.0 * cosh(x))
    }
}

/// Drude weight `A` in S/s.
pub fn drude_weight(sheet: &GrapheneSheet) -> f64 {
    drude_weight_with(sheet, &PhysicalConstants::SI)
}

pub fn drude_weight_with(sheet: &GrapheneSheet, k: &PhysicalConstants) -> f64 {
    let kt = k.boltzmann * sheet.temperature;
    let x = sheet.fermi_level * EV / (2.0 * kt);
    let e2 = k.electron_charge * k.electron_charge;
    2.0 * e2 * kt / (PI * k.reduced_planck * k.reduced_planck) * ln_two_cosh(x)
}

/// Surface conductivity at `angular_frequency` (rad/s).
pub fn kubo_sigma(sheet: &GrapheneSheet, angular_frequency: f64) -> Result<SheetConductivity> {
    check_positive("angular_frequency [rad/s]", angular_frequency)?;
    Ok(drude_sigma(
        drude_weight(sheet),
        sheet.relaxation_time,
        angular_frequency,
    ))
}

/// Drude conductivity for an explicit weight, used by the FDTD module as well.
pub(crate) fn drude_sigma(weight: f64, tau: f64, w: f64) -> SheetConductivity {
    let gamma = 1.0 / tau;
    let denom = w * w + gamma * gamma;
    SheetConductivity::new(weight * gamma / denom, weight * w / denom)
}

pub fn sheet_impedance(sheet: &GrapheneSheet) -> SheetImpedance {
    let a = drude_weight(sheet);
    SheetImpedance {
        sheet_resistance: 1.0 / (a * sheet.relaxation_time),
        kinetic_inductance: 1.0 / a,
    }
}

/// Carrier mobility `tau e vF^2 / E_F`, in cm^2/(V s).
pub fn mobility(sheet: &GrapheneSheet) -> f64 {
    mobility_with(sheet, &PhysicalConstants::SI)
}

pub fn mobility_with(sheet: &GrapheneSheet, k: &PhysicalConstants) -> f64 {
    let ef_joule = sheet.fermi_level * EV;
    let si = sheet.relaxation_time * k.electron_charge * k.fermi_velocity * k.fermi_velocity
        / ef_joule;
    si * 1e4
}

/// Relaxation time (s) giving `mobility_cm2` (cm^2/(V s)) at `fermi_level_ev`.
pub fn relaxation_from_mobility(mobility_cm2: f64, fermi_level_ev: f64) -> Result<f64> {
    relaxation_from_mobility_with(mobility_cm2, fermi_level_ev, &PhysicalConstants::SI)
}

pub fn relaxation_from_mobility_with(
    mobility_cm2: f64,
    fermi_level_ev: f64,
    k: &PhysicalConstants,
) -> Result<f64> {
    check_positive("mobility [cm^2/Vs]", mobility_cm2)?;
    check_positive("fermi_level [eV]", fermi_level_ev)?;
    let mobility_si = mobility_cm2 * 1e-4;
    Ok(mobility_si * fermi_level_ev * EV
        / (k.electron_charge * k.fermi_velocity * k.fermi_velocity))
}
