use proptest::prelude::*;

use szilard_core::barrier::{even_level, gamma_ratio, BarrierStrength};
use szilard_core::constants::{beta, BOLTZMANN, ELECTRON_VOLT, HBAR};
use szilard_core::cycle::{carnot_bound, run_cycle, CycleOptions, Ensemble, Regime};
use szilard_core::ensembles::bose::{chemical_potential, occupation, MuMode};
use szilard_core::ensembles::BathPair;
use szilard_core::series::TruncationPolicy;
use szilard_core::spectra::{Barrier, Harmonic, Morse, Potential, PowerLaw};

const MASS: f64 = 19.11e-11;

#[test]
fn barrier_root_agrees_with_dense_scan() {
    // first sign change of ratio + λ′/2 on a 1e-6 grid in ε
    let lambda = 10.0;
    let root = even_level(BarrierStrength::new(lambda).unwrap(), 0).unwrap();
    let step = 1e-6;
    let mut prev = f64::NAN;
    let mut crossing = None;
    for i in 1..1_000_000 {
        let eps = 0.5 + i as f64 * step;
        let f = gamma_ratio(eps).unwrap() + lambda / 2.0;
        if prev > 0.0 && f <= 0.0 {
            crossing = Some(eps);
            break;
        }
        prev = f;
    }
    let crossing = crossing.expect("sign change inside (1/2, 3/2)");
    assert!((root.epsilon - crossing).abs() <= step, "{} vs {crossing}", root.epsilon);
}

#[test]
fn harmonic_and_unit_power_law_cycles_coincide() {
    let h = Potential::Harmonic(Harmonic::new(MASS, 2e10).unwrap());
    let p = Potential::PowerLaw(PowerLaw::new(MASS, 2e10, 2.0).unwrap());
    let baths = BathPair::new(2.0, 1.0).unwrap();
    let opts = CycleOptions::default();
    let a = run_cycle(&h, Ensemble::GrandBose, 20, baths, &opts).unwrap();
    let b = run_cycle(&p, Ensemble::GrandBose, 20, baths, &opts).unwrap();
    assert!((a.work / b.work - 1.0).abs() < 1e-9);
    assert!((a.efficiency.unwrap() / b.efficiency.unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn morse_low_temperature_work_is_log_two() {
    let m = Morse::from_frequency(MASS, 8.7 * ELECTRON_VOLT, 1e10 / (2.0 * std::f64::consts::PI), 0.0).unwrap();
    let baths = BathPair::new(2e-3, 1e-3).unwrap();
    let r = run_cycle(&Potential::Morse(m), Ensemble::MorseSingle, 1, baths, &CycleOptions::default()).unwrap();
    assert!((r.dimensionless_work() - std::f64::consts::LN_2).abs() < 1e-9);
    assert_eq!(r.regime, Regime::Engine);
}

fn potential() -> impl Strategy<Value = Potential> {
    prop_oneof![
        (1e9f64..1e12).prop_map(|w| Potential::Harmonic(Harmonic::new(MASS, w).unwrap())),
        (1e-24f64..1e-21, 1.2f64..3.0).prop_map(|(o, nu)| Potential::PowerLaw(PowerLaw::from_energy_scale(MASS, o, nu).unwrap())),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bosonic_cycle_closes_and_respects_carnot(p in potential(), n in 1u32..40, th in 0.05f64..20.0, ratio in 0.1f64..0.95) {
        let baths = BathPair::new(th, th * ratio).unwrap();
        let r = run_cycle(&p, Ensemble::GrandBose, n, baths, &CycleOptions::default()).unwrap();
        prop_assert!(r.closure_error() < 1e-10);
        prop_assert!(r.log_relative_partition.iter().all(|z| z.is_finite()));
        if r.regime == Regime::Engine {
            let eta = r.efficiency.unwrap();
            prop_assert!(eta >= 0.0 && eta <= carnot_bound(baths) + 1e-9, "η = {}", eta);
        }
    }

    #[test]
    fn morse_cycle_closes_and_respects_carnot(chi in 0.0f64..0.16, nu_hz in 1e9f64..1e12, th in 0.01f64..50.0, ratio in 0.1f64..0.95) {
        let m = Morse::from_anharmonicity(MASS, nu_hz, chi).unwrap();
        let baths = BathPair::new(th, th * ratio).unwrap();
        let r = run_cycle(&Potential::Morse(m), Ensemble::MorseSingle, 1, baths, &CycleOptions::default()).unwrap();
        prop_assert!(r.closure_error() < 1e-10);
        if r.regime == Regime::Engine {
            prop_assert!(r.efficiency.unwrap() <= carnot_bound(baths) + 1e-9);
        }
    }

    #[test]
    fn canonical_cycle_closes(w in 1e9f64..1e14, n in 1u32..6, th in 1.0f64..300.0, ratio in 0.1f64..0.95) {
        let p = Potential::Harmonic(Harmonic::new(MASS, w).unwrap());
        let baths = BathPair::new(th, th * ratio).unwrap();
        let r = run_cycle(&p, Ensemble::CanonicalN, n, baths, &CycleOptions::default()).unwrap();
        prop_assert!(r.closure_error() < 1e-10);
        // every canonical stage ratio is at most 2^N, so W is bounded by N k_B ΔT ln 2 + quantum corrections
        prop_assert!(r.work <= f64::from(n) * BOLTZMANN * th * std::f64::consts::LN_2 * 1.0001);
    }

    #[test]
    fn exact_chemical_potential_conserves_particles(p in potential(), n in 1u32..60, t in 0.01f64..20.0) {
        let policy = TruncationPolicy::default();
        for barrier in [Barrier::Absent, Barrier::Inserted] {
            let mu = chemical_potential(&p, n, t, barrier, MuMode::ExactSolve, &policy).unwrap();
            let total = occupation(&p.spectrum(barrier).unwrap(), mu.gap, beta(t), &policy).unwrap();
            prop_assert!((total / f64::from(n) - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn approximate_mu_is_quoted_formula() {
    let h = Potential::Harmonic(Harmonic::new(MASS, 1e10).unwrap());
    let mu = chemical_potential(&h, 20, 2.0, Barrier::Inserted, MuMode::PaperApproximation, &TruncationPolicy::default()).unwrap();
    let expected = 2.5 * HBAR * 1e10 - BOLTZMANN * 2.0 * (1.0f64 + 2.0 / 20.0).ln();
    assert!((mu.value - expected).abs() < 1e-12 * expected.abs());
}
