//! Semi-analytic models for graphene and metal THz patch antennas.
//!
//! The crate is `no_std` (it needs `alloc` for spectra, sweep tables and the
//! FDTD field arrays) and covers:
//!
//! - [`material`]: intraband Kubo sheet conductivity, Drude weight, sheet
//!   impedance and carrier mobility of graphene.
//! - [`spp`]: TM surface-plasmon dispersion of a conductive sheet between two
//!   dielectrics.
//! - [`patch`]: transmission-line design equations for rectangular microstrip
//!   patches and the graphene inverse design.
//! - [`circuit`]: cavity / parallel-RLC model of the patch giving resonance,
//!   S11, bandwidth, efficiency and gain.
//! - [`fdtd`]: a 1-D FDTD solver with the sheet as an auxiliary-differential
//!   equation current, checked against closed-form sheet coefficients.
//!
//! Public constructors take engineering units (eV, ps, GHz, um) where noted;
//! everything is stored and computed in SI.

#![no_std]
// `!(x < y)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod circuit;
pub mod constants;
pub mod error;
pub mod fdtd;
pub mod material;
mod math;
pub mod patch;
pub mod spp;

pub use circuit::{AntennaReport, ConductorSpec, QFactors, SpectrumResult};
pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use material::{GrapheneSheet, SheetConductivity, SheetImpedance};
pub use patch::{PadGeometry, PatchGeometry, SubstrateSpec};
pub use spp::{DielectricHalfspaces, SppSolution};

/// Complex number type used throughout the crate.
pub type Complex = num_complex::Complex64;
