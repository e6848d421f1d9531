//! Grid construction and per-point evaluation.

use rayon::prelude::*;

use szilard_core::barrier::{even_levels, odd_level, BarrierStrength, EvenLevelSolution};
use szilard_core::cycle::{run_cycle, CycleOptions, CycleResult, Ensemble};
use szilard_core::ensembles::bose::{chemical_potentials, log_relative_partition, ChemicalPotentials, MuMode};
use szilard_core::ensembles::BathPair;
use szilard_core::spectra::{Harmonic, Morse, Potential, PowerLaw};

use crate::error::{ConfigError, SimError};
use crate::spec::{Model, SweepSpec, Variable};

/// One grid point, before any physics is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub index: usize,
    /// Axis value.
    pub x: f64,
    pub nu: f64,
    pub depth: f64,
    pub hot: f64,
    pub cold: f64,
    pub particles: u32,
}

/// Grid points in output order: exponent, depth, bath pair and particle number
/// vary from outermost to innermost, with the axis innermost of all.
pub fn grid(spec: &SweepSpec) -> Vec<Point> {
    let uses = |m: &[Model]| m.contains(&spec.model);
    let axis = spec.axis.variable;
    let exponents = if uses(&[Model::Bose, Model::ChemicalPotential, Model::RelativePartition]) { spec.exponents.clone() } else { vec![2.0] };
    let depths = if uses(&[Model::Morse]) && axis != Variable::Anharmonicity { spec.depths.clone() } else { vec![f64::INFINITY] };
    let baths: Vec<(f64, f64)> = if uses(&[Model::Canonical, Model::Bose, Model::Morse]) && axis != Variable::Temperature {
        spec.baths.iter().map(|b| (b.hot, b.cold)).collect()
    } else {
        vec![(f64::NAN, f64::NAN)]
    };
    let particles = if uses(&[Model::Canonical, Model::Bose, Model::ChemicalPotential, Model::RelativePartition]) && axis != Variable::Particles {
        spec.particles.clone()
    } else {
        vec![1]
    };
    let xs = spec.axis.points();

    let mut out = Vec::with_capacity(exponents.len() * depths.len() * baths.len() * particles.len() * xs.len());
    for &nu in &exponents {
        for &depth in &depths {
            for &(hot, cold) in &baths {
                for &n in &particles {
                    for &x in &xs {
                        let mut p = Point { index: out.len(), x, nu, depth, hot, cold, particles: n };
                        match axis {
                            Variable::Particles => p.particles = x as u32,
                            Variable::Temperature => {
                                p.hot = x;
                                p.cold = x * spec.cold_ratio;
                            }
                            _ => {}
                        }
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

impl Point {
    fn omega(&self, spec: &SweepSpec) -> f64 {
        if spec.axis.variable == Variable::Omega {
            self.x
        } else {
            spec.omega
        }
    }

    fn frequency(&self, spec: &SweepSpec) -> f64 {
        if spec.axis.variable == Variable::Frequency {
            self.x
        } else {
            spec.frequency
        }
    }

    /// The trap at this point.
    pub fn potential(&self, spec: &SweepSpec) -> szilard_core::Result<Potential> {
        Ok(match spec.model {
            Model::Morse => Potential::Morse(if spec.axis.variable == Variable::Anharmonicity {
                Morse::from_anharmonicity(spec.mass, self.frequency(spec), self.x)?
            } else {
                Morse::from_frequency(spec.mass, self.depth, self.frequency(spec), 0.0)?
            }),
            Model::Canonical => Potential::Harmonic(Harmonic::new(spec.mass, self.omega(spec))?),
            _ if spec.axis.variable == Variable::EnergyScale => Potential::PowerLaw(PowerLaw::from_energy_scale(spec.mass, self.x, self.nu)?),
            _ if self.nu == 2.0 => Potential::Harmonic(Harmonic::new(spec.mass, self.omega(spec))?),
            _ => Potential::PowerLaw(PowerLaw::new(spec.mass, self.omega(spec), self.nu)?),
        })
    }

    pub fn baths(&self) -> szilard_core::Result<BathPair> {
        BathPair::new(self.hot, self.cold)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PointResult {
    Cycle(CycleResult),
    ChemicalPotential { approx: ChemicalPotentials, exact: ChemicalPotentials },
    RelativePartition { chemical_potentials: ChemicalPotentials, log_z: f64 },
    Barrier(Vec<EvenLevelSolution>),
}

impl PointResult {
    pub fn cycle(&self) -> Option<&CycleResult> {
        match self {
            PointResult::Cycle(c) => Some(c),
            _ => None,
        }
    }
}

pub fn evaluate(spec: &SweepSpec, point: &Point, options: &CycleOptions) -> szilard_core::Result<PointResult> {
    match spec.model {
        Model::Barrier => Ok(PointResult::Barrier(even_levels(BarrierStrength::new(point.x)?, spec.k_max)?)),
        Model::ChemicalPotential => {
            let p = point.potential(spec)?;
            Ok(PointResult::ChemicalPotential {
                approx: chemical_potentials(&p, point.particles, point.x, MuMode::PaperApproximation, &options.policy)?,
                exact: chemical_potentials(&p, point.particles, point.x, MuMode::ExactSolve, &options.policy)?,
            })
        }
        Model::RelativePartition => {
            let p = point.potential(spec)?;
            let mus = chemical_potentials(&p, point.particles, point.x, options.mu_mode, &options.policy)?;
            let log_z = log_relative_partition(&p, &mus, options.post_barrier_weight, &options.policy)?;
            Ok(PointResult::RelativePartition { chemical_potentials: mus, log_z })
        }
        Model::Canonical | Model::Bose | Model::Morse => {
            let ensemble = match spec.model {
                Model::Canonical => Ensemble::CanonicalN,
                Model::Bose => Ensemble::GrandBose,
                _ => Ensemble::MorseSingle,
            };
            Ok(PointResult::Cycle(run_cycle(&point.potential(spec)?, ensemble, point.particles, point.baths()?, options)?))
        }
    }
}

const CYCLE_COLUMNS: &[&str] =
    &["W", "W_over_kTc", "eta", "Q_AB", "Q_BC", "Q_CD", "Q_DA", "Q_hot", "Q_cold", "regime", "lnZ_hot", "lnZ_cold", "closure"];

/// CSV header for a model: parameter columns, result columns, then `error`.
pub fn header(model: Model) -> Vec<&'static str> {
    let params: &[&str] = match model {
        Model::Canonical => &["N", "omega", "T_h", "T_c"],
        Model::Bose => &["nu", "N", "omega", "Omega", "T_h", "T_c"],
        Model::ChemicalPotential => &["T", "N", "nu", "omega"],
        Model::RelativePartition => &["T", "N", "nu", "omega", "Omega"],
        Model::Barrier => &["lambda"],
        Model::Morse => &["depth", "frequency", "chi", "n_m", "T_h", "T_c"],
    };
    let results: &[&str] = match model {
        Model::Canonical | Model::Morse => CYCLE_COLUMNS,
        Model::Bose => &[
            "W", "W_over_kTc", "eta", "Q_AB", "Q_BC", "Q_CD", "Q_DA", "Q_hot", "Q_cold", "regime", "lnZ_hot", "lnZ_cold", "closure",
            "mu_b_hot", "mu_a_hot", "mu_b_cold", "mu_a_cold",
        ],
        Model::ChemicalPotential => &[
            "mu_b_approx", "mu_a_approx", "mu_b_exact", "mu_a_exact",
            "mu_b_approx_x1e23", "mu_a_approx_x1e23", "mu_b_exact_x1e23", "mu_a_exact_x1e23",
            "dmu_b", "dmu_a",
        ],
        Model::RelativePartition => &["mu_b", "mu_a", "lnZ", "Z"],
        Model::Barrier => &["k", "epsilon", "odd_epsilon", "residual"],
    };
    params.iter().chain(results).chain(&["error"]).copied().collect()
}

/// Fixed formatting: 17 significant digits in scientific notation.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

fn param_cells(spec: &SweepSpec, point: &Point) -> Vec<String> {
    let potential = point.potential(spec).ok();
    let (omega, energy_scale) = match potential {
        Some(Potential::Harmonic(h)) => (Some(h.omega), Some(h.quantum())),
        Some(Potential::PowerLaw(p)) => (Some(p.omega), Some(p.energy_scale())),
        _ => match spec.axis.variable {
            Variable::EnergyScale => (None, Some(point.x)),
            _ => (Some(point.omega(spec)), None),
        },
    };
    let n = point.particles.to_string();
    match spec.model {
        Model::Canonical => vec![n, real(point.omega(spec)), real(point.hot), real(point.cold)],
        Model::Bose => vec![real(point.nu), n, opt(omega), opt(energy_scale), real(point.hot), real(point.cold)],
        Model::ChemicalPotential => vec![real(point.x), n, real(point.nu), opt(omega)],
        Model::RelativePartition => vec![real(point.x), n, real(point.nu), opt(omega), opt(energy_scale)],
        Model::Barrier => vec![real(point.x)],
        Model::Morse => {
            let morse = match potential {
                Some(Potential::Morse(m)) => Some(m),
                _ => None,
            };
            let n_m = morse.and_then(|m| m.bound_count().ok()).map(|c| c.map(|c| c.to_string()).unwrap_or_else(|| "inf".into()));
            vec![
                real(morse.map_or(point.depth, |m| m.depth)),
                real(point.frequency(spec)),
                opt(morse.map(|m| m.anharmonicity())),
                n_m.unwrap_or_default(),
                real(point.hot),
                real(point.cold),
            ]
        }
    }
}

fn cycle_cells(c: &CycleResult) -> Vec<String> {
    vec![
        real(c.work),
        real(c.dimensionless_work()),
        opt(c.efficiency),
        real(c.q_ab),
        real(c.q_bc),
        real(c.q_cd),
        real(c.q_da),
        real(c.q_hot),
        real(c.q_cold),
        c.regime.as_str().to_string(),
        real(c.log_relative_partition[0]),
        real(c.log_relative_partition[1]),
        real(c.closure_error()),
    ]
}

/// CSV rows for one evaluated point; a failed point yields one row with
/// empty result columns and the error message.
pub fn rows(spec: &SweepSpec, point: &Point, result: &Result<PointResult, String>) -> Vec<Vec<String>> {
    let params = param_cells(spec, point);
    let width = header(spec.model).len() - params.len() - 1;
    let row = |results: Vec<String>| {
        let mut r = params.clone();
        r.extend(results);
        r.push(String::new());
        r
    };
    match result {
        Err(message) => {
            let mut r = params.clone();
            r.extend(std::iter::repeat_n(String::new(), width));
            r.push(message.clone());
            vec![r]
        }
        Ok(PointResult::Cycle(c)) => {
            let mut cells = cycle_cells(c);
            if spec.model == Model::Bose {
                let mus = c.chemical_potentials.expect("bosonic cycles carry chemical potentials");
                cells.extend([mus[0].before.value, mus[0].after.value, mus[1].before.value, mus[1].after.value].map(real));
            }
            vec![row(cells)]
        }
        Ok(PointResult::ChemicalPotential { approx, exact }) => {
            let values = [approx.before.value, approx.after.value, exact.before.value, exact.after.value];
            let mut cells: Vec<String> = values.iter().map(|&v| real(v)).collect();
            cells.extend(values.iter().map(|&v| real(v * 1e23)));
            // gaps are stored without cancellation, so their difference is the accurate one
            cells.push(real(exact.before.gap - approx.before.gap));
            cells.push(real(exact.after.gap - approx.after.gap));
            vec![row(cells)]
        }
        Ok(PointResult::RelativePartition { chemical_potentials: mus, log_z }) => {
            vec![row(vec![real(mus.before.value), real(mus.after.value), real(*log_z), real(log_z.exp())])]
        }
        Ok(PointResult::Barrier(levels)) => levels
            .iter()
            .map(|s| row(vec![s.branch.to_string(), real(s.epsilon), real(odd_level(s.branch)), real(s.residual)]))
            .collect(),
    }
}

#[derive(Debug, Clone)]
pub struct EvaluatedPoint {
    pub point: Point,
    pub result: Result<PointResult, String>,
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub spec: SweepSpec,
    pub points: Vec<EvaluatedPoint>,
}

impl SweepOutput {
    pub fn failed(&self) -> usize {
        self.points.iter().filter(|p| p.result.is_err()).count()
    }

    pub fn header(&self) -> Vec<&'static str> {
        header(self.spec.model)
    }

    /// All CSV data rows in grid order.
    pub fn rows(&self) -> Vec<Vec<String>> {
        self.points.iter().flat_map(|p| rows(&self.spec, &p.point, &p.result)).collect()
    }
}

/// Evaluates every grid point on a pool of `workers` threads. Results come
/// back in grid order whatever the completion order. Individual point
/// failures are kept in the output; only invalid input is an error here.
pub fn run_sweep(spec: &SweepSpec, workers: usize) -> Result<SweepOutput, SimError> {
    spec.validate()?;
    let options = spec.numerics.cycle_options()?;
    let points = grid(spec);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| ConfigError::new(format!("cannot start {workers} workers: {e}")))?;
    let evaluated = pool.install(|| {
        points
            .par_iter()
            .map(|p| EvaluatedPoint { point: *p, result: evaluate(spec, p, &options).map_err(|e| e.to_string()) })
            .collect()
    });
    Ok(SweepOutput { spec: spec.clone(), points: evaluated })
}
