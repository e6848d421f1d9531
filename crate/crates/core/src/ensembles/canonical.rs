//! Canonical stage sums: `N` non-interacting particles in a harmonic trap,
//! each stage written as a sum over a common level index of per-level
//! Boltzmann factors raised to the `N`-th power,
//!
//! ```text
//! Z_A = Σ [e^{−β_h E_n}]^N      Z_B = Σ [2 e^{−β_h E_{2n}}]^N
//! Z_D = Σ [e^{−β_c E_n}]^N      Z_C = Σ [2 e^{−β_c E_{2n}}]^N
//! ```
//!
//! The `N!` over-counting factor is omitted; it cancels in every ratio.

use crate::constants::{beta, BOLTZMANN};
use crate::cycle::StageModel;
use crate::series::{sum_levels, TruncationPolicy};
use crate::spectra::{Harmonic, Potential, Spectrum};
use crate::{Error, Result};

use super::{Bath, BathPair, Stage};

/// `ln Σ g^N e^{−N β E_n}` and `−∂/∂β` of it over one spectrum.
///
/// Exponents are taken relative to the ground level, so neither sum can
/// underflow.
pub(crate) fn boltzmann_moments(spectrum: &Spectrum, beta: f64, power: u32, policy: &TruncationPolicy) -> Result<(f64, f64)> {
    let ground = spectrum.ground_energy();
    let scale = beta * f64::from(power);
    let s = sum_levels(policy, spectrum.cutoff(), |n| {
        let e = spectrum.energy(n);
        let w = libm::exp(-scale * (e - ground));
        [w, w * e]
    })?;
    let [weight, weighted_energy] = s.sums;
    let ln_z = f64::from(power) * libm::log(f64::from(spectrum.degeneracy())) - scale * ground + libm::log(weight);
    Ok((ln_z, f64::from(power) * weighted_energy / weight))
}

#[derive(Debug, Clone, Copy)]
pub struct CanonicalCycle {
    harmonic: Harmonic,
    particles: u32,
    baths: BathPair,
    policy: TruncationPolicy,
}

impl CanonicalCycle {
    pub fn new(harmonic: Harmonic, particles: u32, baths: BathPair, policy: TruncationPolicy) -> Result<Self> {
        if particles == 0 {
            return Err(Error::InvalidParameter { name: "particle count", value: 0.0 });
        }
        policy.validate()?;
        Ok(CanonicalCycle { harmonic, particles, baths, policy })
    }

    fn spectrum(&self, stage: Stage) -> Spectrum {
        Potential::Harmonic(self.harmonic)
            .spectrum(stage.barrier())
            .expect("harmonic spectra are unbounded")
    }

    /// `ln Z^N` of a stage at inverse temperature `beta`.
    pub fn stage_log_partition(&self, stage: Stage, beta: f64) -> Result<f64> {
        boltzmann_moments(&self.spectrum(stage), beta, self.particles, &self.policy).map(|m| m.0)
    }

    fn stage_beta(&self, stage: Stage) -> f64 {
        beta(self.baths.temperature(stage.bath()))
    }
}

impl StageModel for CanonicalCycle {
    fn baths(&self) -> BathPair {
        self.baths
    }

    fn log_relative_partition(&self, bath: Bath) -> Result<f64> {
        let (inserted, absent) = match bath {
            Bath::Hot => (Stage::B, Stage::A),
            Bath::Cold => (Stage::C, Stage::D),
        };
        let b = beta(self.baths.temperature(bath));
        Ok(self.stage_log_partition(inserted, b)? - self.stage_log_partition(absent, b)?)
    }

    fn internal_energy(&self, stage: Stage) -> Result<f64> {
        boltzmann_moments(&self.spectrum(stage), self.stage_beta(stage), self.particles, &self.policy).map(|m| m.1)
    }
}

/// Work per cycle of `N` harmonic particles with the canonical stage sums.
pub fn canonical_work_n(harmonic: Harmonic, particles: u32, baths: BathPair, policy: &TruncationPolicy) -> Result<f64> {
    let cycle = CanonicalCycle::new(harmonic, particles, baths, *policy)?;
    let hot = cycle.log_relative_partition(Bath::Hot)?;
    let cold = cycle.log_relative_partition(Bath::Cold)?;
    Ok(BOLTZMANN * baths.hot * hot - BOLTZMANN * baths.cold * cold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::HBAR;

    const MASS: f64 = 19.11e-11;

    #[test]
    fn single_particle_low_temperature_limit() {
        // βħω ≫ 1: Z_B/Z_A → 2 e^{−βħω}, so W/(k_B T_c) → (T_h/T_c − 1) ln 2
        let h = Harmonic::new(MASS, 1e13).unwrap();
        let baths = BathPair::new(2.0, 1.0).unwrap();
        assert!(h.quantum() * beta(2.0) > 30.0);
        let w = canonical_work_n(h, 1, baths, &TruncationPolicy::default()).unwrap();
        let dimensionless = w / (BOLTZMANN * 1.0);
        assert!((dimensionless - core::f64::consts::LN_2).abs() < 1e-9, "{dimensionless}");
    }

    #[test]
    fn high_frequency_limit_is_n_log_two() {
        // Freezing into the lowest level of each stage leaves only the 2^N degeneracy.
        let baths = BathPair::new(200.0, 100.0).unwrap();
        for n in 1..=3 {
            let h = Harmonic::new(MASS, 1e16).unwrap();
            let w = canonical_work_n(h, n, baths, &TruncationPolicy::default()).unwrap();
            let expected = f64::from(n) * BOLTZMANN * 100.0 * core::f64::consts::LN_2;
            assert!((w / expected - 1.0).abs() < 1e-9, "N = {n}");
        }
    }

    #[test]
    fn classical_limit_grows_linearly_in_n() {
        // βħω ≪ 1: each stage sum ≈ g^N / (N β Δ), so Z_B/Z_A → 2^{N−1}
        // and W → (N − 1) k_B (T_h − T_c) ln 2 up to O(Nβħω) corrections.
        let h = Harmonic::new(MASS, 1e11).unwrap();
        let baths = BathPair::new(200.0, 100.0).unwrap();
        let x = h.quantum() * beta(100.0);
        for n in 1..=10u32 {
            let w = canonical_work_n(h, n, baths, &TruncationPolicy::default()).unwrap();
            let leading = f64::from(n - 1) * BOLTZMANN * 100.0 * core::f64::consts::LN_2;
            assert!((w - leading).abs() < 4.0 * f64::from(n) * x * BOLTZMANN * 200.0, "N = {n}: {w:e} vs {leading:e}");
        }
    }

    #[test]
    fn internal_energy_matches_finite_difference() {
        let h = Harmonic::new(MASS, 3e11).unwrap();
        let baths = BathPair::new(5.0, 2.0).unwrap();
        let cycle = CanonicalCycle::new(h, 3, baths, TruncationPolicy::default()).unwrap();
        for stage in Stage::ALL {
            let b = beta(baths.temperature(stage.bath()));
            let d = 1e-6 * b;
            let fd = -(cycle.stage_log_partition(stage, b + d).unwrap() - cycle.stage_log_partition(stage, b - d).unwrap()) / (2.0 * d);
            let u = cycle.internal_energy(stage).unwrap();
            assert!((fd / u - 1.0).abs() < 1e-6, "{stage:?}");
        }
    }

    #[test]
    fn zero_particles_rejected() {
        let h = Harmonic::new(MASS, 1e10).unwrap();
        assert!(CanonicalCycle::new(h, 0, BathPair::new(2.0, 1.0).unwrap(), TruncationPolicy::default()).is_err());
    }

    #[test]
    fn ground_energy_in_stage_sum() {
        // At very low T the stage sum is dominated by its first term.
        let h = Harmonic::new(MASS, 1e13).unwrap();
        let cycle = CanonicalCycle::new(h, 2, BathPair::new(1.0, 0.5).unwrap(), TruncationPolicy::default()).unwrap();
        let b = beta(1.0);
        let ln_zb = cycle.stage_log_partition(Stage::B, b).unwrap();
        let expected = 2.0 * (2.0f64.ln() - b * 2.5 * HBAR * 1e13);
        assert!((ln_zb - expected).abs() < 1e-9 * expected.abs());
    }
}
