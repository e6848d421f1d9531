//! Harmonic trap with a central delta barrier `λ δ(x)` of finite strength.
//!
//! Odd levels are unaffected by the barrier and stay at `ε = 3/2 + 2k`
//! (energies in units of `ħω`). Even levels solve
//!
//! ```text
//! Γ(3/4 − ε/2) / Γ(1/4 − ε/2) = −λ′/2,    λ′ = λ √(m / (ħ³ω))
//! ```
//!
//! On each branch `ε ∈ (1/2 + 2k, 3/2 + 2k)` the left side falls from `0`
//! (denominator pole) to `−∞` (numerator pole), so there is exactly one root.
//! It is found by bisection between the poles.

use alloc::vec::Vec;

use crate::constants::HBAR;
use crate::roots::{bisect, Stop};
use crate::special::gamma_ratio as signed_gamma_ratio;
use crate::{Error, Result};

/// Dimensionless barrier strength `λ′ ≥ 0`; infinity is the fully inserted barrier.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BarrierStrength(f64);

impl BarrierStrength {
    pub const ZERO: BarrierStrength = BarrierStrength(0.0);
    pub const INFINITE: BarrierStrength = BarrierStrength(f64::INFINITY);

    pub fn new(value: f64) -> Result<Self> {
        if value >= 0.0 {
            Ok(BarrierStrength(value))
        } else {
            Err(Error::InvalidParameter { name: "barrier strength", value })
        }
    }

    /// `λ′ = λ √(m / (ħ³ω))` from a dimensional strength `λ` in J·m.
    pub fn from_dimensional(lambda: f64, mass: f64, omega: f64) -> Result<Self> {
        BarrierStrength::new(lambda * libm::sqrt(mass / (HBAR * HBAR * HBAR * omega)))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvenLevelSolution {
    /// Branch `k ≥ 0`; the unperturbed level is `ε = 1/2 + 2k`.
    pub branch: u32,
    /// `E / (ħω)`
    pub epsilon: f64,
    /// `|Γ-ratio + λ′/2|` at the returned root; zero for the closed-form endpoints.
    pub residual: f64,
}

/// Odd level `k` in units of `ħω`; the barrier leaves it at `3/2 + 2k`.
pub fn odd_level(branch: u32) -> f64 {
    1.5 + 2.0 * f64::from(branch)
}

/// `Γ(3/4 − ε/2) / Γ(1/4 − ε/2)`.
///
/// Zero on the denominator poles `ε = 1/2 + 2k`. Arguments within a few ulps
/// of a numerator pole (`ε = 3/2 + 2k`) are reported as a pole.
pub fn gamma_ratio(epsilon: f64) -> Result<f64> {
    let a = 0.75 - 0.5 * epsilon;
    let nearest = libm::round(a);
    if nearest <= 0.0 && libm::fabs(a - nearest) <= 4.0 * f64::EPSILON * libm::fabs(nearest).max(1.0) {
        return Err(Error::GammaPole(a));
    }
    signed_gamma_ratio(a, 0.25 - 0.5 * epsilon)
}

fn ratio_or_limit(epsilon: f64) -> f64 {
    gamma_ratio(epsilon).unwrap_or(f64::NEG_INFINITY)
}

/// Even levels `k = 0..=k_max` at barrier strength `λ′`.
pub fn even_levels(strength: BarrierStrength, k_max: u32) -> Result<Vec<EvenLevelSolution>> {
    (0..=k_max).map(|k| even_level(strength, k)).collect()
}

pub fn even_level(strength: BarrierStrength, branch: u32) -> Result<EvenLevelSolution> {
    let lower = 0.5 + 2.0 * f64::from(branch);
    let upper = odd_level(branch);
    let lambda = strength.value();
    if lambda == 0.0 {
        return Ok(EvenLevelSolution { branch, epsilon: lower, residual: 0.0 });
    }
    if strength.is_infinite() {
        return Ok(EvenLevelSolution { branch, epsilon: upper, residual: 0.0 });
    }
    let target = 0.5 * lambda;
    let root = bisect(|e| ratio_or_limit(e) + target, lower, upper, target, f64::NEG_INFINITY, Stop::default())?;
    if !(root.x > lower && root.x < upper) || !root.f.is_finite() {
        return Err(Error::RootNotBracketed { lower, upper, f_lower: target, f_upper: root.f });
    }
    Ok(EvenLevelSolution { branch, epsilon: root.x, residual: libm::fabs(root.f) })
}
