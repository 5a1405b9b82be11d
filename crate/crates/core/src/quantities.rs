//! Physical constants, unit conversions, and validated scalar types.
//!
//! All constants are CODATA 2018 (NIST). Every internal computation is in SI;
//! the dimensionless kernel variables are formed only inside the kernel.

use crate::error::{Error, Result};

/// Reduced Planck constant ħ (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum c (m/s). Exact.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Boltzmann constant k_B (J/K). Exact.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Bohr radius a₀ (m).
pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;

/// Electron volt (J). Exact.
pub const ELECTRON_VOLT: f64 = 1.602_176_634e-19;

/// Convert a photon energy in eV to an angular frequency in rad/s.
///
/// ω = E·e/ħ. Optical tables quote photon energies in eV; the kernel works
/// in angular frequency throughout.
pub fn ev_to_angular_frequency(energy_ev: f64) -> Result<f64> {
    if !(energy_ev >= 0.0) {
        return Err(Error::InvalidScalar {
            quantity: "photon energy",
            requirement: "non-negative",
            value: energy_ev,
        });
    }
    Ok(energy_ev * ELECTRON_VOLT / HBAR)
}

/// Convert a polarizability from atomic units (a₀³) to SI volume (m³),
/// Gaussian convention.
pub fn au_to_si_polarizability(alpha_au: f64) -> Result<PolarizabilityValue> {
    if !(alpha_au >= 0.0) {
        return Err(Error::InvalidScalar {
            quantity: "polarizability",
            requirement: "non-negative",
            value: alpha_au,
        });
    }
    PolarizabilityValue::new(alpha_au * BOHR_RADIUS * BOHR_RADIUS * BOHR_RADIUS)
}

/// Matsubara angular frequency ξ_l = 2πk_BTl/ħ (rad/s).
///
/// Rejects T = 0: the zero-temperature theory replaces the sum by an
/// integral and never samples discrete frequencies.
pub fn matsubara_frequency(temperature: Temperature, l: usize) -> Result<f64> {
    if temperature.is_zero() {
        return Err(Error::ZeroTemperatureMode);
    }
    Ok(2.0 * std::f64::consts::PI * BOLTZMANN * temperature.kelvin() * l as f64 / HBAR)
}

/// Atom-surface separation, a > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Separation(f64);

impl Separation {
    pub fn new(a_m: f64) -> Result<Self> {
        if !(a_m > 0.0) || !a_m.is_finite() {
            return Err(Error::InvalidScalar {
                quantity: "separation",
                requirement: "positive and finite",
                value: a_m,
            });
        }
        Ok(Self(a_m))
    }

    pub fn meters(self) -> f64 {
        self.0
    }

    /// Characteristic frequency ω_c = c/(2a) (rad/s).
    pub fn characteristic_frequency(self) -> f64 {
        SPEED_OF_LIGHT / (2.0 * self.0)
    }

    /// Dimensionless frequency ζ = ξ/ω_c = 2aξ/c for a given ξ (rad/s).
    pub fn dimensionless_frequency(self, xi: f64) -> f64 {
        2.0 * self.0 * xi / SPEED_OF_LIGHT
    }
}

/// Temperature in kelvin, T ≥ 0. T = 0 selects the zero-temperature
/// integral mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(kelvin: f64) -> Result<Self> {
        if !(kelvin >= 0.0) || !kelvin.is_finite() {
            return Err(Error::InvalidScalar {
                quantity: "temperature",
                requirement: "non-negative and finite",
                value: kelvin,
            });
        }
        Ok(Self(kelvin))
    }

    pub fn zero() -> Self {
        Self(0.0)
    }

    pub fn kelvin(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }

    /// Thermal energy k_BT (J).
    pub fn thermal_energy(self) -> f64 {
        BOLTZMANN * self.0
    }
}

/// Atomic polarizability α as a volume (m³), Gaussian convention. α ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PolarizabilityValue(f64);

impl PolarizabilityValue {
    pub fn new(alpha_m3: f64) -> Result<Self> {
        if !(alpha_m3 >= 0.0) || !alpha_m3.is_finite() {
            return Err(Error::InvalidScalar {
                quantity: "polarizability",
                requirement: "non-negative and finite",
                value: alpha_m3,
            });
        }
        Ok(Self(alpha_m3))
    }

    pub fn cubic_meters(self) -> f64 {
        self.0
    }

    /// Back-conversion to atomic units; inverse of [`au_to_si_polarizability`].
    pub fn atomic_units(self) -> f64 {
        self.0 / (BOHR_RADIUS * BOHR_RADIUS * BOHR_RADIUS)
    }
}

/// Dielectric permittivity evaluated on the imaginary frequency axis.
/// Real and ≥ 1 for any causal passive material.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PermittivityValue(f64);

impl PermittivityValue {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps >= 1.0) || !eps.is_finite() {
            return Err(Error::InvalidScalar {
                quantity: "permittivity on the imaginary axis",
                requirement: "real, finite and >= 1",
                value: eps,
            });
        }
        Ok(Self(eps))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}
