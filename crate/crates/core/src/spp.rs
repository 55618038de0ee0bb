//! TM surface-plasmon dispersion of a conductive sheet between two dielectrics.
//!
//! With `u = q / k0`, transverse decay constants `s_j = sqrt(u^2 - eps_j)` and
//! the `exp(-i w t)` convention, the bound TM mode satisfies
//!
//! ```text
//! eps_above / s_above + eps_below / s_below + i eta0 sigma = 0
//! ```
//!
//! For equal permittivities this has the closed form
//! `u = sqrt(eps) * sqrt(1 - (2 sqrt(eps) / (eta0 sigma))^2)`. The unequal case is
//! solved by damped complex Newton iteration seeded from the closed form.
//! These are the standard thin-sheet relations from the graphene plasmonics
//! literature; the antenna models in this crate do not depend on them.

use alloc::vec::Vec;

use crate::constants::{LIGHT_SPEED, PhysicalConstants};
use crate::error::{check_positive, invalid, Error, Result};
use crate::material::{kubo_sigma, GrapheneSheet, SheetConductivity};
use crate::math::{sqrt, PI};
use crate::Complex;

const MAX_NEWTON_ITERATIONS: usize = 100;
const RESIDUAL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DielectricHalfspaces {
    pub eps_above: f64,
    pub eps_below: f64,
}

impl DielectricHalfspaces {
    pub fn new(eps_above: f64, eps_below: f64) -> Result<Self> {
        check_eps("eps_above", eps_above)?;
        check_eps("eps_below", eps_below)?;
        Ok(DielectricHalfspaces {
            eps_above,
            eps_below,
        })
    }

    pub fn symmetric(eps: f64) -> Result<Self> {
        Self::new(eps, eps)
    }

    pub fn is_symmetric(&self) -> bool {
        self.eps_above == self.eps_below
    }
}

fn check_eps(name: &'static str, eps: f64) -> Result<f64> {
    if !eps.is_finite() || eps < 1.0 {
        return Err(invalid(name, eps, "relative permittivity must be finite and >= 1"));
    }
    Ok(eps)
}

/// A bound surface-plasmon solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SppSolution {
    /// Complex in-plane wavenumber q, rad/m.
    pub wavenumber: Complex,
    /// k0 = w / c, rad/m.
    pub free_space_wavenumber: f64,
    /// Re q / k0.
    pub confinement_ratio: f64,
    /// 2 pi / Re q, m.
    pub spp_wavelength: f64,
    /// 1 / (2 Im q), m. Infinite for a lossless sheet.
    pub propagation_length: f64,
    /// Relative dispersion-relation residual of the returned root.
    pub residual: f64,
}

impl SppSolution {
    fn from_normalized(u: Complex, k0: f64, residual: f64) -> Self {
        let q = u * k0;
        SppSolution {
            wavenumber: q,
            free_space_wavenumber: k0,
            confinement_ratio: u.re,
            spp_wavelength: 2.0 * PI / q.re,
            propagation_length: if q.im > 0.0 {
                1.0 / (2.0 * q.im)
            } else {
                f64::INFINITY
            },
            residual,
        }
    }

    /// Normalized transverse decay constants `sqrt(u^2 - eps)` on each side.
    pub fn decay_constants(&self, halfspaces: &DielectricHalfspaces) -> (Complex, Complex) {
        let u = self.wavenumber / self.free_space_wavenumber;
        (
            decay(u, halfspaces.eps_above),
            decay(u, halfspaces.eps_below),
        )
    }
}

/// Principal-branch `sqrt(u^2 - eps)`; `Re >= 0`.
fn decay(u: Complex, eps: f64) -> Complex {
    (u * u - eps).sqrt()
}

fn eta_sigma(sigma: &SheetConductivity) -> Complex {
    sigma.to_complex() * PhysicalConstants::SI.free_space_impedance()
}

/// Left-hand side of the dispersion relation and its derivative in `u`.
fn dispersion(u: Complex, h: &DielectricHalfspaces, eta_sigma: Complex) -> (Complex, Complex) {
    let sa = decay(u, h.eps_above);
    let sb = decay(u, h.eps_below);
    let f = h.eps_above / sa + h.eps_below / sb + Complex::i() * eta_sigma;
    let df = -(u * h.eps_above) / (sa * sa * sa) - (u * h.eps_below) / (sb * sb * sb);
    (f, df)
}

/// Dispersion residual of a solution, relative to `|eta0 sigma|`.
pub fn dispersion_residual(
    solution: &SppSolution,
    sigma: &SheetConductivity,
    halfspaces: &DielectricHalfspaces,
) -> f64 {
    let es = eta_sigma(sigma);
    let u = solution.wavenumber / solution.free_space_wavenumber;
    dispersion(u, halfspaces, es).0.norm() / es.norm()
}

fn symmetric_root(es: Complex, eps: f64) -> Complex {
    let ratio = Complex::new(2.0 * sqrt(eps), 0.0) / es;
    let u = (Complex::new(1.0, 0.0) - ratio * ratio).sqrt() * sqrt(eps);
    if u.im < 0.0 {
        -u
    } else {
        u
    }
}

/// Re u - sqrt(eps_max) without cancellation: `Re(s^2 / (u + sqrt(eps)))`.
fn bound_margin(u: Complex, eps_max: f64) -> f64 {
    let root = sqrt(eps_max);
    ((u * u - eps_max) / (u + root)).re
}

fn check_bound(u: Complex, eps_max: f64) -> Result<()> {
    if u.im < 0.0 || !(bound_margin(u, eps_max) > 0.0) {
        return Err(Error::NoBoundMode {
            confinement: u.re,
            threshold: sqrt(eps_max),
        });
    }
    Ok(())
}

/// Closed-form solution for a sheet embedded in a uniform dielectric `eps`.
pub fn spp_wavenumber_symmetric(
    sigma: &SheetConductivity,
    eps: f64,
    angular_frequency: f64,
) -> Result<SppSolution> {
    check_eps("eps", eps)?;
    check_positive("angular_frequency [rad/s]", angular_frequency)?;
    let es = eta_sigma(sigma);
    if es.norm() == 0.0 || !es.norm().is_finite() {
        return Err(Error::NoBoundMode {
            confinement: f64::NAN,
            threshold: sqrt(eps),
        });
    }
    let u = symmetric_root(es, eps);
    check_bound(u, eps)?;
    let h = DielectricHalfspaces {
        eps_above: eps,
        eps_below: eps,
    };
    let residual = dispersion(u, &h, es).0.norm() / es.norm();
    Ok(SppSolution::from_normalized(
        u,
        angular_frequency / LIGHT_SPEED,
        residual,
    ))
}

fn newton(u0: Complex, h: &DielectricHalfspaces, es: Complex) -> (Complex, f64, bool) {
    let scale = es.norm();
    let mut u = u0;
    let (mut f, mut df) = dispersion(u, h, es);
    let mut residual = f.norm() / scale;
    for _ in 0..MAX_NEWTON_ITERATIONS {
        if residual < RESIDUAL_TOLERANCE * 1e-2 {
            return (u, residual, true);
        }
        let step = f / df;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        let mut damping = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial = u - step * damping;
            let (ft, dft) = dispersion(trial, h, es);
            let rt = ft.norm() / scale;
            if rt.is_finite() && rt < residual {
                u = trial;
                f = ft;
                df = dft;
                residual = rt;
                accepted = true;
                break;
            }
            damping *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (u, residual, residual < RESIDUAL_TOLERANCE)
}

/// General solution for different dielectrics above and below the sheet.
pub fn spp_wavenumber_asymmetric(
    sigma: &SheetConductivity,
    halfspaces: &DielectricHalfspaces,
    angular_frequency: f64,
) -> Result<SppSolution> {
    let h = DielectricHalfspaces::new(halfspaces.eps_above, halfspaces.eps_below)?;
    check_positive("angular_frequency [rad/s]", angular_frequency)?;
    let es = eta_sigma(sigma);
    let eps_max = h.eps_above.max(h.eps_below);
    if es.norm() == 0.0 || !es.norm().is_finite() {
        return Err(Error::NoBoundMode {
            confinement: f64::NAN,
            threshold: sqrt(eps_max),
        });
    }
    let eps_mean = 0.5 * (h.eps_above + h.eps_below);
    // The mean-permittivity seed can land on the wrong side of the denser
    // medium's branch point for weakly confined modes; retry from eps_max.
    let mut last_residual = f64::INFINITY;
    for seed_eps in [eps_mean, eps_max] {
        let (u, residual, converged) = newton(symmetric_root(es, seed_eps), &h, es);
        if converged {
            check_bound(u, eps_max)?;
            return Ok(SppSolution::from_normalized(
                u,
                angular_frequency / LIGHT_SPEED,
                residual,
            ));
        }
        last_residual = last_residual.min(residual);
    }
    Err(Error::Convergence {
        iterations: MAX_NEWTON_ITERATIONS,
        residual: last_residual,
    })
}

/// Dispatches to the closed form when both sides are the same dielectric.
pub fn spp_wavenumber(
    sigma: &SheetConductivity,
    halfspaces: &DielectricHalfspaces,
    angular_frequency: f64,
) -> Result<SppSolution> {
    if halfspaces.is_symmetric() {
        spp_wavenumber_symmetric(sigma, halfspaces.eps_above, angular_frequency)
    } else {
        spp_wavenumber_asymmetric(sigma, halfspaces, angular_frequency)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SppCell {
    pub sheet: GrapheneSheet,
    pub frequency: f64,
    pub result: Result<SppSolution>,
}

/// Sheet-major table: all frequencies for `sheets[0]`, then `sheets[1]`, ...
/// Per-cell failures are stored in the cell.
pub fn confinement_sweep(
    sheets: &[GrapheneSheet],
    frequencies: &[f64],
    halfspaces: &DielectricHalfspaces,
) -> Result<Vec<SppCell>> {
    if sheets.is_empty() {
        return Err(invalid("sheet grid", 0.0, "must not be empty"));
    }
    if frequencies.is_empty() {
        return Err(invalid("frequency grid", 0.0, "must not be empty"));
    }
    let mut out = Vec::with_capacity(sheets.len() * frequencies.len());
    for sheet in sheets {
        for &f in frequencies {
            let w = 2.0 * PI * f;
            let result =
                kubo_sigma(sheet, w).and_then(|sigma| spp_wavenumber(&sigma, halfspaces, w));
            out.push(SppCell {
                sheet: *sheet,
                frequency: f,
                result,
            });
        }
    }
    Ok(out)
}
