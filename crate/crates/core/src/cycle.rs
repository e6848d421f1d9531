//! Assembly of the four-stage cycle: heats, work, efficiency, regime.
//!
//! ```text
//! Q_AB = U_B − U_A + k_B T_h ln Z[T_h]      Q_BC = U_C − U_B
//! Q_CD = U_D − U_C − k_B T_c ln Z[T_c]      Q_DA = U_A − U_D
//! W    = k_B T_h ln Z[T_h] − k_B T_c ln Z[T_c]
//! ```

use crate::constants::BOLTZMANN;
use crate::ensembles::bose::{BoseCycle, ChemicalPotentials, MuMode, PostBarrierWeight};
use crate::ensembles::canonical::CanonicalCycle;
use crate::ensembles::morse::MorseCycle;
use crate::ensembles::{Bath, BathPair, Stage};
use crate::series::TruncationPolicy;
use crate::spectra::Potential;
use crate::{Error, Result};

/// Work below this magnitude (J) is classified as idle.
pub const IDLE_WORK: f64 = 1e-30;

/// Everything the cycle needs from an ensemble.
pub trait StageModel {
    fn baths(&self) -> BathPair;
    /// `ln` of the post- over pre-barrier partition function at one bath.
    fn log_relative_partition(&self, bath: Bath) -> Result<f64>;
    fn internal_energy(&self, stage: Stage) -> Result<f64>;
}

/// Denominator of the reported efficiency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EfficiencyForm {
    /// `U_B − U_D + k_B T_h ln Z[T_h]`, the heat drawn from the hot bath.
    #[default]
    HeatSupplied,
    /// `U_B − U_D + k_B T_h Z[T_h]`, the Morse denominator without the logarithm.
    Eq38Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Engine,
    Refrigerator,
    Idle,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Engine => "engine",
            Regime::Refrigerator => "refrigerator",
            Regime::Idle => "idle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleResult {
    pub work: f64,
    pub q_ab: f64,
    pub q_bc: f64,
    pub q_cd: f64,
    pub q_da: f64,
    pub q_hot: f64,
    pub q_cold: f64,
    /// `None` when the denominator is not positive.
    pub efficiency: Option<f64>,
    pub regime: Regime,
    pub baths: BathPair,
    /// `ln Z[T_h]`, `ln Z[T_c]`.
    pub log_relative_partition: [f64; 2],
    /// `U_A`, `U_B`, `U_C`, `U_D`.
    pub internal_energy: [f64; 4],
    /// Hot and cold chemical potentials for the grand-canonical ensemble.
    pub chemical_potentials: Option<[ChemicalPotentials; 2]>,
}

impl CycleResult {
    /// `|W − ΣQ| / max(|W|, |Q_i|)`, the sum taken with compensation.
    pub fn closure_error(&self) -> f64 {
        let heats = [self.q_ab, self.q_bc, self.q_cd, self.q_da];
        let scale = heats.iter().fold(self.work.abs(), |m, q| m.max(q.abs()));
        if scale == 0.0 {
            return 0.0;
        }
        let (mut sum, mut c) = (0.0f64, 0.0f64);
        for x in heats.into_iter().chain([-self.work]) {
            let t = sum + x;
            c += if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
            sum = t;
        }
        (sum + c).abs() / scale
    }

    /// `W / (Q_AB + Q_DA)`, built from the stage heats; `None` if `Q_hot ≤ 0`.
    pub fn stage_heat_efficiency(&self) -> Option<f64> {
        (self.q_hot > 0.0).then(|| self.work / self.q_hot)
    }

    /// `W / (k_B T_c)`
    pub fn dimensionless_work(&self) -> f64 {
        self.work / (BOLTZMANN * self.baths.cold)
    }
}

/// Combines the stage quantities of any model into a [`CycleResult`].
pub fn assemble<M: StageModel + ?Sized>(model: &M, form: EfficiencyForm) -> Result<CycleResult> {
    let baths = model.baths();
    let ln_zh = model.log_relative_partition(Bath::Hot)?;
    let ln_zc = model.log_relative_partition(Bath::Cold)?;
    let [u_a, u_b, u_c, u_d] = [Stage::A, Stage::B, Stage::C, Stage::D].map(|s| model.internal_energy(s));
    let (u_a, u_b, u_c, u_d) = (u_a?, u_b?, u_c?, u_d?);

    let hot_term = BOLTZMANN * baths.hot * ln_zh;
    let cold_term = BOLTZMANN * baths.cold * ln_zc;
    let work = if baths.hot == baths.cold && ln_zh == ln_zc { 0.0 } else { hot_term - cold_term };
    let q_ab = (u_b - u_a) + hot_term;
    let q_bc = u_c - u_b;
    let q_cd = (u_d - u_c) - cold_term;
    let q_da = u_a - u_d;
    let q_hot = (u_b - u_d) + hot_term;
    let q_cold = (u_d - u_b) - cold_term;

    let denominator = match form {
        EfficiencyForm::HeatSupplied => q_hot,
        EfficiencyForm::Eq38Literal => (u_b - u_d) + BOLTZMANN * baths.hot * libm::exp(ln_zh),
    };
    let regime = if work.abs() < IDLE_WORK {
        Regime::Idle
    } else if work > 0.0 && q_hot > 0.0 {
        Regime::Engine
    } else {
        Regime::Refrigerator
    };
    Ok(CycleResult {
        work,
        q_ab,
        q_bc,
        q_cd,
        q_da,
        q_hot,
        q_cold,
        efficiency: (denominator > 0.0).then(|| work / denominator),
        regime,
        baths,
        log_relative_partition: [ln_zh, ln_zc],
        internal_energy: [u_a, u_b, u_c, u_d],
        chemical_potentials: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ensemble {
    /// `N` particles, canonical `N`-th power stage sums (harmonic trap only).
    CanonicalN,
    /// Grand-canonical bosons (harmonic or power-law trap).
    GrandBose,
    /// One particle in a Morse well.
    MorseSingle,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CycleOptions {
    pub policy: TruncationPolicy,
    pub mu_mode: MuMode,
    pub post_barrier_weight: PostBarrierWeight,
    pub efficiency_form: EfficiencyForm,
}

pub fn run_cycle(potential: &Potential, ensemble: Ensemble, particles: u32, baths: BathPair, options: &CycleOptions) -> Result<CycleResult> {
    let form = options.efficiency_form;
    match (ensemble, potential) {
        (Ensemble::CanonicalN, Potential::Harmonic(h)) => assemble(&CanonicalCycle::new(*h, particles, baths, options.policy)?, form),
        (Ensemble::CanonicalN, _) => Err(Error::IncompatibleEnsemble("canonical N-particle cycle needs a harmonic trap")),
        (Ensemble::GrandBose, Potential::Harmonic(_) | Potential::PowerLaw(_)) => {
            let cycle = BoseCycle::new(*potential, particles, baths, options.mu_mode, options.post_barrier_weight, options.policy)?;
            let mut result = assemble(&cycle, form)?;
            result.chemical_potentials = Some([*cycle.chemical_potentials(Bath::Hot), *cycle.chemical_potentials(Bath::Cold)]);
            Ok(result)
        }
        (Ensemble::GrandBose, _) => Err(Error::IncompatibleEnsemble("grand-canonical bosons need a harmonic or power-law trap")),
        (Ensemble::MorseSingle, Potential::Morse(m)) => {
            if particles != 1 {
                return Err(Error::IncompatibleEnsemble("the Morse cycle holds a single particle"));
            }
            assemble(&MorseCycle::new(*m, baths, options.policy)?, form)
        }
        (Ensemble::MorseSingle, _) => Err(Error::IncompatibleEnsemble("the Morse cycle needs a Morse potential")),
    }
}

/// `1 − T_c / T_h`
pub fn carnot_bound(baths: BathPair) -> f64 {
    1.0 - baths.cold / baths.hot
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ELECTRON_VOLT;
    use crate::spectra::{Harmonic, Morse, PowerLaw};

    const MASS: f64 = 19.11e-11;

    fn cases() -> [(Potential, Ensemble, u32, BathPair); 4] {
        let b = |h, c| BathPair::new(h, c).unwrap();
        [
            (Potential::Harmonic(Harmonic::new(MASS, 1e11).unwrap()), Ensemble::CanonicalN, 5, b(200.0, 100.0)),
            (Potential::PowerLaw(PowerLaw::from_energy_scale(MASS, 3e-23, 2.0).unwrap()), Ensemble::GrandBose, 20, b(2.0, 1.0)),
            (Potential::PowerLaw(PowerLaw::from_energy_scale(MASS, 1e-22, 1.6).unwrap()), Ensemble::GrandBose, 10, b(1.0, 2.0)),
            (
                Potential::Morse(Morse::from_frequency(MASS, 8.7 * ELECTRON_VOLT, 1e10 / (2.0 * core::f64::consts::PI), 0.0).unwrap()),
                Ensemble::MorseSingle,
                1,
                b(4.0, 2.0),
            ),
        ]
    }

    #[test]
    fn first_law_and_heat_partition() {
        for (p, e, n, baths) in cases() {
            let r = run_cycle(&p, e, n, baths, &CycleOptions::default()).unwrap();
            assert!(r.closure_error() < 1e-10, "{e:?}: {}", r.closure_error());
            assert!(((r.q_ab + r.q_da) - r.q_hot).abs() <= 1e-12 * r.q_hot.abs().max(r.work.abs()));
            assert!(((r.q_bc + r.q_cd) - r.q_cold).abs() <= 1e-12 * r.q_cold.abs().max(r.work.abs()));
        }
    }

    #[test]
    fn efficiency_matches_stage_heats() {
        for (p, e, n, baths) in cases() {
            let r = run_cycle(&p, e, n, baths, &CycleOptions::default()).unwrap();
            match (r.efficiency, r.stage_heat_efficiency()) {
                (Some(a), Some(b)) => assert!((a / b - 1.0).abs() < 1e-9, "{e:?}"),
                (None, None) => {}
                other => panic!("{e:?}: {other:?}"),
            }
            if r.regime == Regime::Engine {
                assert!(r.efficiency.unwrap() <= carnot_bound(baths) + 1e-9);
            }
        }
    }

    #[test]
    fn reversed_baths_are_not_an_engine() {
        let (p, e, n, baths) = cases()[2];
        let r = run_cycle(&p, e, n, baths, &CycleOptions::default()).unwrap();
        assert_ne!(r.regime, Regime::Engine);
    }

    #[test]
    fn equal_baths_idle_for_every_ensemble() {
        for (p, e, n, _) in cases() {
            let r = run_cycle(&p, e, n, BathPair::new(3.0, 3.0).unwrap(), &CycleOptions::default()).unwrap();
            assert_eq!(r.work, 0.0);
            assert_eq!(r.regime, Regime::Idle);
        }
    }

    #[test]
    fn incompatible_ensembles() {
        let [canonical, bose, _, morse] = cases();
        let opts = CycleOptions::default();
        assert!(run_cycle(&morse.0, Ensemble::GrandBose, 1, morse.3, &opts).is_err());
        assert!(run_cycle(&bose.0, Ensemble::CanonicalN, 1, bose.3, &opts).is_err());
        assert!(run_cycle(&canonical.0, Ensemble::MorseSingle, 1, canonical.3, &opts).is_err());
        assert!(run_cycle(&morse.0, Ensemble::MorseSingle, 2, morse.3, &opts).is_err());
    }

    #[test]
    fn literal_denominator_differs_only_in_partition_term() {
        let (p, e, n, baths) = cases()[3];
        let log = run_cycle(&p, e, n, baths, &CycleOptions::default()).unwrap();
        let opts = CycleOptions { efficiency_form: EfficiencyForm::Eq38Literal, ..Default::default() };
        let lit = run_cycle(&p, e, n, baths, &opts).unwrap();
        assert_eq!(log.work, lit.work);
        let [_, u_b, _, u_d] = lit.internal_energy;
        let denominator = u_b - u_d + BOLTZMANN * baths.hot * lit.log_relative_partition[0].exp();
        assert_eq!(lit.efficiency, (denominator > 0.0).then(|| lit.work / denominator));
    }

    #[test]
    fn carnot_examples() {
        assert_eq!(carnot_bound(BathPair::new(2.0, 1.0).unwrap()), 0.5);
        assert_eq!(carnot_bound(BathPair::new(3.0, 3.0).unwrap()), 0.0);
        assert_eq!(carnot_bound(BathPair::new(8.0, 4.0).unwrap()), 0.5);
    }
}
