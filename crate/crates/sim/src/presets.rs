//! Caption constants and axes for each figure.

use std::f64::consts::PI;

use szilard_core::constants::{ATOMIC_MASS_UNIT, ELECTRON_VOLT};

use crate::spec::{Axis, BathSpec, Model, Numerics, Scale, SweepSpec, Target, Variable};

/// Trap mass of Figs. 2–9, kg.
pub const TRAP_MASS: f64 = 19.11e-11;

fn baths(pairs: &[(f64, f64)]) -> Vec<BathSpec> {
    pairs.iter().map(|&(hot, cold)| BathSpec { hot, cold }).collect()
}

fn base(target: Target, model: Model, axis: Axis) -> SweepSpec {
    SweepSpec {
        target,
        model,
        axis,
        mass: TRAP_MASS,
        omega: 1e10,
        exponents: vec![2.0],
        particles: vec![1],
        baths: baths(&[(2.0, 1.0)]),
        cold_ratio: 0.5,
        depths: vec![8.7 * ELECTRON_VOLT],
        frequency: 1e10 / (2.0 * PI),
        k_max: 5,
        numerics: Numerics::default(),
    }
}

/// The preset sweep for a figure; `custom` yields an empty bosonic template
/// that a config file is expected to fill in.
pub fn preset(target: Target) -> SweepSpec {
    match target {
        Target::Fig2 => SweepSpec {
            omega: 1e11,
            baths: baths(&[(200.0, 100.0)]),
            ..base(target, Model::Canonical, Axis::list(Variable::Particles, (1..=20).map(f64::from).collect()))
        },
        Target::Fig3 => SweepSpec {
            particles: vec![1, 2, 3],
            baths: baths(&[(200.0, 100.0)]),
            ..base(target, Model::Canonical, Axis::range(Variable::Omega, 1e9, 1e14, 51, Scale::Log))
        },
        Target::Fig4 => SweepSpec {
            particles: (1..=30).collect(),
            ..base(target, Model::ChemicalPotential, Axis::range(Variable::Temperature, 0.01, 2.0, 40, Scale::Linear))
        },
        Target::Fig5 => SweepSpec {
            particles: vec![10, 20, 30],
            ..base(target, Model::RelativePartition, Axis::range(Variable::Temperature, 0.01, 20.0, 80, Scale::Linear))
        },
        Target::Fig6 => base(target, Model::Barrier, Axis::list(Variable::Lambda, vec![0.0, 1.0, 10.0, 100.0, 1e4, f64::INFINITY])),
        Target::Fig7 => SweepSpec {
            exponents: vec![1.6, 2.0],
            particles: vec![20],
            baths: baths(&[(20.0, 10.0)]),
            ..base(target, Model::Bose, Axis::range(Variable::EnergyScale, 1e-23, 1e-20, 61, Scale::Log))
        },
        Target::Fig8 => SweepSpec {
            exponents: vec![1.6, 2.0, 2.2, 2.6],
            particles: vec![10, 20, 30],
            baths: baths(&[(2.0, 1.0)]),
            ..base(target, Model::Bose, Axis::range(Variable::EnergyScale, 2e-23, 2e-21, 41, Scale::Log))
        },
        Target::Fig9 => base(target, Model::Morse, Axis::range(Variable::Temperature, 1e-3, 50.0, 60, Scale::Log)),
        Target::Fig9Inset => SweepSpec {
            baths: baths(&[(8.0, 4.0)]),
            ..base(target, Model::Morse, Axis::range(Variable::Anharmonicity, 0.0, 1.0 / 6.0, 61, Scale::Linear))
        },
        Target::Fig10 | Target::Fig11 => SweepSpec {
            mass: 1.1 * ATOMIC_MASS_UNIT,
            depths: vec![0.01 * ELECTRON_VOLT, 0.1 * ELECTRON_VOLT, ELECTRON_VOLT, f64::INFINITY],
            baths: baths(&[(1.0, 0.5), (5.0, 2.5), (10.0, 5.0), (20.0, 10.0)]),
            ..base(target, Model::Morse, Axis::range(Variable::Frequency, 1e9, 1e13, 41, Scale::Log))
        },
        Target::Custom => base(target, Model::Bose, Axis::range(Variable::EnergyScale, 2e-23, 2e-21, 21, Scale::Log)),
    }
}
