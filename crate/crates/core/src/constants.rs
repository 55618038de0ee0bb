//! Physical constants (CODATA 2018) with an overridable graphene Fermi velocity.

use crate::error::{check_positive, Result};
use crate::math::sqrt;

pub const ELECTRON_CHARGE: f64 = 1.602_176_634e-19;
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34;
pub const BOLTZMANN: f64 = 1.380_649e-23;
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
pub const VACUUM_PERMEABILITY: f64 = 1.256_637_062_12e-6;
pub const LIGHT_SPEED: f64 = 299_792_458.0;
/// Graphene Fermi velocity, m/s.
pub const FERMI_VELOCITY: f64 = 1.0e6;

/// Joules per electron-volt.
pub const EV: f64 = ELECTRON_CHARGE;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub electron_charge: f64,
    pub reduced_planck: f64,
    pub boltzmann: f64,
    pub vacuum_permittivity: f64,
    pub vacuum_permeability: f64,
    pub light_speed: f64,
    pub fermi_velocity: f64,
}

impl PhysicalConstants {
    pub const SI: PhysicalConstants = PhysicalConstants {
        electron_charge: ELECTRON_CHARGE,
        reduced_planck: REDUCED_PLANCK,
        boltzmann: BOLTZMANN,
        vacuum_permittivity: VACUUM_PERMITTIVITY,
        vacuum_permeability: VACUUM_PERMEABILITY,
        light_speed: LIGHT_SPEED,
        fermi_velocity: FERMI_VELOCITY,
    };

    /// Replaces the Fermi velocity, which must be positive.
    pub fn with_fermi_velocity(mut self, fermi_velocity: f64) -> Result<Self> {
        self.fermi_velocity = check_positive("fermi_velocity", fermi_velocity)?;
        Ok(self)
    }

    /// sqrt(mu0 / eps0), about 376.73 ohm.
    pub fn free_space_impedance(&self) -> f64 {
        sqrt(self.vacuum_permeability / self.vacuum_permittivity)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::SI
    }
}

/// Free-space impedance for the default constants.
pub fn eta0() -> f64 {
    PhysicalConstants::SI.free_space_impedance()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn impedance_matches_definition() {
        let k = PhysicalConstants::default();
        let eta = k.free_space_impedance();
        let expected = sqrt(k.vacuum_permeability / k.vacuum_permittivity);
        assert!(((eta - expected) / expected).abs() < 1e-12);
        assert!((eta - 376.730_313).abs() < 1e-5);
    }

    #[test]
    fn fermi_velocity_default_and_override() {
        assert_eq!(PhysicalConstants::default().fermi_velocity, 1.0e6);
        let k = PhysicalConstants::SI.with_fermi_velocity(1.1e6).unwrap();
        assert_eq!(k.fermi_velocity, 1.1e6);
        assert!(PhysicalConstants::SI.with_fermi_velocity(0.0).is_err());
        assert!(PhysicalConstants::SI.with_fermi_velocity(-1.0).is_err());
    }
}
