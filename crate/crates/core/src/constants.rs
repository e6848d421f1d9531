//! Physical constants used throughout the models.
//!
//! The values are the rounded ones quoted alongside the reference figures,
//! not CODATA. `PLANCK / (2π)` is therefore not exactly `HBAR`.

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.0545e-34;

/// Planck constant, J·s.
pub const PLANCK: f64 = 6.6260e-34;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.3806e-23;

/// One electronvolt in joules.
pub const ELECTRON_VOLT: f64 = 1.602_176_634e-19;

/// Unified atomic mass unit in kilograms.
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;

/// Inverse temperature `1 / (k_B T)` in 1/J.
#[inline]
pub fn beta(temperature: f64) -> f64 {
    1.0 / (BOLTZMANN * temperature)
}
