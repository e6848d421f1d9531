//! Single particle in a Morse well. Stage sums are finite Boltzmann sums over
//! the bound levels, `n ≤ n_m` before the barrier and `2n ≤ n_m` after it.
//!
//! ```text
//! Z^M[T] = Σ 2 e^{−β E_{2n}} / Σ e^{−β E_n}
//! ```

use crate::constants::{beta, BOLTZMANN};
use crate::cycle::StageModel;
use crate::series::TruncationPolicy;
use crate::spectra::{Morse, Potential, Spectrum};
use crate::Result;

use super::canonical::boltzmann_moments;
use super::{Bath, BathPair, Stage};

#[derive(Debug, Clone, Copy)]
pub struct MorseCycle {
    morse: Morse,
    baths: BathPair,
    policy: TruncationPolicy,
}

impl MorseCycle {
    /// Fails up front if the well has no post-barrier level.
    pub fn new(morse: Morse, baths: BathPair, policy: TruncationPolicy) -> Result<Self> {
        policy.validate()?;
        let cycle = MorseCycle { morse, baths, policy };
        for stage in [Stage::A, Stage::B] {
            cycle.spectrum(stage)?;
        }
        Ok(cycle)
    }

    pub fn morse(&self) -> &Morse {
        &self.morse
    }

    fn spectrum(&self, stage: Stage) -> Result<Spectrum> {
        Potential::Morse(self.morse).spectrum(stage.barrier())
    }

    /// `ln Σ g e^{−β E_n}` of a stage at an arbitrary `beta`.
    pub fn stage_log_partition(&self, stage: Stage, beta: f64) -> Result<f64> {
        boltzmann_moments(&self.spectrum(stage)?, beta, 1, &self.policy).map(|m| m.0)
    }
}

impl StageModel for MorseCycle {
    fn baths(&self) -> BathPair {
        self.baths
    }

    fn log_relative_partition(&self, bath: Bath) -> Result<f64> {
        let b = beta(self.baths.temperature(bath));
        Ok(self.stage_log_partition(Stage::B, b)? - self.stage_log_partition(Stage::A, b)?)
    }

    fn internal_energy(&self, stage: Stage) -> Result<f64> {
        let b = beta(self.baths.temperature(stage.bath()));
        boltzmann_moments(&self.spectrum(stage)?, b, 1, &self.policy).map(|m| m.1)
    }
}

/// `ln Z^M[T]` at one temperature.
pub fn morse_log_relative_partition(morse: &Morse, temperature: f64, policy: &TruncationPolicy) -> Result<f64> {
    let baths = BathPair::new(temperature, temperature)?;
    MorseCycle::new(*morse, baths, *policy)?.log_relative_partition(Bath::Hot)
}

/// `W^M = k_B T_h ln Z^M[T_h] − k_B T_c ln Z^M[T_c]`.
pub fn morse_work(cycle: &MorseCycle) -> Result<f64> {
    let baths = cycle.baths();
    Ok(BOLTZMANN * baths.hot * cycle.log_relative_partition(Bath::Hot)?
        - BOLTZMANN * baths.cold * cycle.log_relative_partition(Bath::Cold)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{ELECTRON_VOLT, PLANCK};
    use crate::spectra::Barrier;
    use crate::Error;

    const MASS: f64 = 19.11e-11;
    const FREQ: f64 = 1e10 / (2.0 * core::f64::consts::PI);

    fn deep() -> Morse {
        Morse::from_frequency(MASS, 8.7 * ELECTRON_VOLT, FREQ, 0.0).unwrap()
    }

    #[test]
    fn ground_referenced_ratio_tends_to_two() {
        let m = deep();
        let p = Potential::Morse(m);
        let e1b = p.level_energy(1, Barrier::Absent).unwrap();
        let e1a = p.level_energy(1, Barrier::Inserted).unwrap();
        let t = 1e-3;
        assert!(beta(t) * e1b > 40.0);
        let ln_z = morse_log_relative_partition(&m, t, &TruncationPolicy::default()).unwrap();
        let shifted = ln_z + beta(t) * (e1a - e1b);
        assert!((shifted - core::f64::consts::LN_2).abs() < 1e-12, "{shifted}");
    }

    #[test]
    fn zero_temperature_internal_energy_is_lowest_level() {
        let m = deep();
        let cycle = MorseCycle::new(m, BathPair::new(2e-3, 1e-3).unwrap(), TruncationPolicy::default()).unwrap();
        let p = Potential::Morse(m);
        for (stage, barrier) in [(Stage::B, Barrier::Inserted), (Stage::D, Barrier::Absent)] {
            let e1 = p.level_energy(1, barrier).unwrap();
            let u = cycle.internal_energy(stage).unwrap();
            assert!((u / e1 - 1.0).abs() < 1e-12, "{stage:?}");
        }
    }

    #[test]
    fn harmonic_limit_work() {
        let m = Morse::harmonic_limit(MASS, 1e12).unwrap();
        let baths = BathPair::new(2.0, 1.0).unwrap();
        assert!(beta(2.0) * PLANCK * 1e12 > 20.0);
        let cycle = MorseCycle::new(m, baths, TruncationPolicy::default()).unwrap();
        let w = morse_work(&cycle).unwrap();
        let expected = BOLTZMANN * core::f64::consts::LN_2;
        assert!((w / expected - 1.0).abs() < 1e-6, "{w:e}");
    }

    #[test]
    fn equal_baths_idle() {
        let cycle = MorseCycle::new(deep(), BathPair::new(3.0, 3.0).unwrap(), TruncationPolicy::default()).unwrap();
        assert_eq!(morse_work(&cycle).unwrap(), 0.0);
    }

    #[test]
    fn shallow_well_rejected() {
        // 2D/hν = 2.5 → n_m = 1, no post-barrier level
        let m = Morse::from_anharmonicity(MASS, FREQ, 0.2).unwrap();
        assert_eq!(m.bound_count().unwrap(), Some(1));
        let err = MorseCycle::new(m, BathPair::new(2.0, 1.0).unwrap(), TruncationPolicy::default()).unwrap_err();
        assert!(matches!(err, Error::EmptyPostBarrierSpectrum { bound_states: 1 }));
    }

    #[test]
    fn finite_sums_match_direct_evaluation() {
        let m = Morse::from_anharmonicity(MASS, FREQ, 0.05).unwrap();
        let n_m = m.bound_count().unwrap().unwrap();
        assert_eq!(n_m, 9);
        let p = Potential::Morse(m);
        let t = 0.3;
        let b = beta(t);
        let pre: f64 = (1..=n_m).map(|n| (-b * p.level_energy(n, Barrier::Absent).unwrap()).exp()).sum();
        let post: f64 = (1..=n_m / 2).map(|n| 2.0 * (-b * p.level_energy(n, Barrier::Inserted).unwrap()).exp()).sum();
        let ln_z = morse_log_relative_partition(&m, t, &TruncationPolicy::default()).unwrap();
        assert!((ln_z - (post / pre).ln()).abs() < 1e-13);
    }
}
