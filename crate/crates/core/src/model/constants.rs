//! Physical constants (CODATA 2018) and unit conversions.

use crate::error::{Error, Result};

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Vacuum permittivity, F/m.
pub const EPSILON0: f64 = 8.854_187_812_8e-12;
/// One debye in C·m.
pub const DEBYE: f64 = 3.335_64e-30;

/// The constants bundled as a value, for callers that want to pass them around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub epsilon0: f64,
    pub debye: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: Self = Self {
        hbar: HBAR,
        epsilon0: EPSILON0,
        debye: DEBYE,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

/// Converts a dipole moment in debye to C·m.
pub fn debye_to_si(debye: f64) -> Result<f64> {
    if !debye.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "dipole moment must be finite, got {debye}"
        )));
    }
    Ok(debye * DEBYE)
}

/// Converts a dipole moment in C·m to debye.
pub fn si_to_debye(coulomb_meter: f64) -> Result<f64> {
    if !coulomb_meter.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "dipole moment must be finite, got {coulomb_meter}"
        )));
    }
    Ok(coulomb_meter / DEBYE)
}

/// V/cm² to V/m².
pub fn volts_per_cm2(value: f64) -> f64 {
    value * 1.0e4
}

/// Reference energy for the dimensionless (ħ = 1) units used by the
/// simulation modules.
///
/// An energy `E` in joules maps to `E / joules`; a time `t` in seconds maps to
/// `t · joules / ħ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyUnit {
    joules: f64,
}

impl EnergyUnit {
    pub fn new(joules: f64) -> Result<Self> {
        if !(joules.is_finite() && joules > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "reference energy must be positive and finite, got {joules}"
            )));
        }
        Ok(Self { joules })
    }

    pub fn joules(self) -> f64 {
        self.joules
    }

    pub fn energy_to_dimensionless(self, joules: f64) -> f64 {
        joules / self.joules
    }

    pub fn energy_to_si(self, dimensionless: f64) -> f64 {
        dimensionless * self.joules
    }

    pub fn time_to_dimensionless(self, seconds: f64) -> f64 {
        seconds * self.joules / HBAR
    }

    pub fn time_to_si(self, dimensionless: f64) -> f64 {
        dimensionless * HBAR / self.joules
    }
}
