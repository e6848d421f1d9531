//! The resolved description of one sweep.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use szilard_core::cycle::{CycleOptions, EfficiencyForm};
use szilard_core::ensembles::bose::{MuMode, PostBarrierWeight};
use szilard_core::series::TruncationPolicy;

use crate::error::ConfigError;

macro_rules! named_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $text)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = ConfigError;

            fn from_str(s: &str) -> Result<Self, ConfigError> {
                $name::ALL.iter().copied().find(|v| v.as_str() == s).ok_or_else(|| {
                    let known: Vec<_> = $name::ALL.iter().map(|v| v.as_str()).collect();
                    ConfigError::new(format!("unknown {} `{s}` (expected one of {})", stringify!($name).to_lowercase(), known.join(", ")))
                })
            }
        }
    };
}

named_enum!(
    /// Figure preset, or `custom` for a fully config-driven sweep.
    Target {
        Fig2 => "fig2",
        Fig3 => "fig3",
        Fig4 => "fig4",
        Fig5 => "fig5",
        Fig6 => "fig6",
        Fig7 => "fig7",
        Fig8 => "fig8",
        Fig9 => "fig9",
        Fig9Inset => "fig9-inset",
        Fig10 => "fig10",
        Fig11 => "fig11",
        Custom => "custom",
    }
);

named_enum!(
    /// What is evaluated at each grid point.
    Model {
        Canonical => "canonical",
        Bose => "bose",
        ChemicalPotential => "chemical-potential",
        RelativePartition => "relative-partition",
        Barrier => "barrier",
        Morse => "morse",
    }
);

named_enum!(
    /// The swept quantity.
    Variable {
        Particles => "particles",
        Omega => "omega",
        EnergyScale => "energy-scale",
        Temperature => "temperature",
        Lambda => "lambda",
        Frequency => "frequency",
        Anharmonicity => "anharmonicity",
    }
);

named_enum!(Scale { Linear => "linear", Log => "log" });

named_enum!(
    MuModeName {
        Approx => "approx",
        Exact => "exact",
    }
);

impl From<MuModeName> for MuMode {
    fn from(m: MuModeName) -> MuMode {
        match m {
            MuModeName::Approx => MuMode::PaperApproximation,
            MuModeName::Exact => MuMode::ExactSolve,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisValues {
    Range {
        #[serde(with = "real")]
        min: f64,
        #[serde(with = "real")]
        max: f64,
        points: usize,
        scale: Scale,
    },
    List(#[serde(with = "reals")] Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub variable: Variable,
    pub values: AxisValues,
}

impl Axis {
    pub fn range(variable: Variable, min: f64, max: f64, points: usize, scale: Scale) -> Self {
        Axis { variable, values: AxisValues::Range { min, max, points, scale } }
    }

    pub fn list(variable: Variable, values: Vec<f64>) -> Self {
        Axis { variable, values: AxisValues::List(values) }
    }

    /// Grid values in sweep order. Endpoints are reproduced exactly.
    pub fn points(&self) -> Vec<f64> {
        match &self.values {
            AxisValues::List(v) => v.clone(),
            AxisValues::Range { min, max, points, scale } => {
                let last = (*points - 1) as f64;
                (0..*points)
                    .map(|i| {
                        if i == 0 {
                            return *min;
                        }
                        if i + 1 == *points {
                            return *max;
                        }
                        let t = i as f64 / last;
                        match scale {
                            Scale::Linear => min + (max - min) * t,
                            Scale::Log => 10f64.powf(min.log10() + (max.log10() - min.log10()) * t),
                        }
                    })
                    .collect()
            }
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        match &self.values {
            AxisValues::Range { min, max, points, scale } => {
                if !(min.is_finite() && max.is_finite() && min < max) {
                    return Err(ConfigError::new(format!("axis needs finite min < max, got [{min}, {max}]")));
                }
                if *points < 2 {
                    return Err(ConfigError::new(format!("axis needs at least 2 points, got {points}")));
                }
                if *scale == Scale::Log && *min <= 0.0 {
                    return Err(ConfigError::new("log axis needs min > 0"));
                }
            }
            AxisValues::List(v) => {
                if v.is_empty() {
                    return Err(ConfigError::new("axis value list is empty"));
                }
                if v.iter().any(|x| x.is_nan()) {
                    return Err(ConfigError::new("axis value list contains NaN"));
                }
            }
        }
        if self.variable == Variable::Particles {
            for x in self.points() {
                if !(x >= 1.0 && x.fract() == 0.0 && x <= f64::from(u32::MAX)) {
                    return Err(ConfigError::new(format!("particle count must be a positive integer, got {x}")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathSpec {
    pub hot: f64,
    pub cold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Numerics {
    pub rel_tol: f64,
    pub max_terms: u64,
    pub mu_mode: MuModeName,
    /// Single power of the post-barrier bosonic factor.
    pub eq18_literal: bool,
    /// Morse efficiency denominator without the logarithm.
    pub eq38_literal: bool,
}

impl Default for Numerics {
    fn default() -> Self {
        let policy = TruncationPolicy::default();
        Numerics { rel_tol: policy.rel_tol, max_terms: policy.max_terms, mu_mode: MuModeName::Exact, eq18_literal: false, eq38_literal: false }
    }
}

impl Numerics {
    pub fn policy(&self) -> Result<TruncationPolicy, ConfigError> {
        TruncationPolicy::new(self.rel_tol, self.max_terms).map_err(|e| ConfigError::new(e.to_string()))
    }

    pub fn cycle_options(&self) -> Result<CycleOptions, ConfigError> {
        Ok(CycleOptions {
            policy: self.policy()?,
            mu_mode: self.mu_mode.into(),
            post_barrier_weight: if self.eq18_literal { PostBarrierWeight::Literal } else { PostBarrierWeight::Degenerate },
            efficiency_form: if self.eq38_literal { EfficiencyForm::Eq38Literal } else { EfficiencyForm::HeatSupplied },
        })
    }
}

/// Everything needed to reproduce one CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub target: Target,
    pub model: Model,
    pub axis: Axis,
    /// kg
    pub mass: f64,
    /// Trap angular frequency in rad/s, where it is not swept.
    pub omega: f64,
    /// Power-law exponents ν.
    #[serde(with = "reals")]
    pub exponents: Vec<f64>,
    pub particles: Vec<u32>,
    /// Bath pairs in K, where temperature is not swept.
    pub baths: Vec<BathSpec>,
    /// `T_c / T_h` when the temperature axis sets `T_h`.
    pub cold_ratio: f64,
    /// Morse depths in J; `inf` is the harmonic limit.
    #[serde(with = "reals")]
    pub depths: Vec<f64>,
    /// Morse fundamental frequency ν in Hz, where it is not swept.
    pub frequency: f64,
    /// Highest barrier branch reported.
    pub k_max: u32,
    pub numerics: Numerics,
}

impl SweepSpec {
    /// Checks every fixed parameter before any point is evaluated.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.axis.validate()?;
        let allowed: &[Variable] = match self.model {
            Model::Canonical => &[Variable::Particles, Variable::Omega, Variable::Temperature],
            Model::Bose => &[Variable::Particles, Variable::Omega, Variable::EnergyScale, Variable::Temperature],
            Model::ChemicalPotential | Model::RelativePartition => &[Variable::Temperature],
            Model::Barrier => &[Variable::Lambda],
            Model::Morse => &[Variable::Temperature, Variable::Frequency, Variable::Anharmonicity],
        };
        if !allowed.contains(&self.axis.variable) {
            return Err(ConfigError::new(format!("model {} cannot sweep {}", self.model, self.axis.variable)));
        }
        positive("mass", self.mass)?;
        positive("omega", self.omega)?;
        positive("frequency", self.frequency)?;
        positive("cold_ratio", self.cold_ratio)?;
        nonempty("nu", self.exponents.len())?;
        for &nu in &self.exponents {
            positive("nu", nu)?;
        }
        nonempty("N", self.particles.len())?;
        if self.particles.contains(&0) {
            return Err(ConfigError::new("N must be at least 1"));
        }
        nonempty("baths", self.baths.len())?;
        for b in &self.baths {
            positive("hot temperature", b.hot)?;
            positive("cold temperature", b.cold)?;
        }
        nonempty("depth", self.depths.len())?;
        for &d in &self.depths {
            if !(d > 0.0) {
                return Err(ConfigError::new(format!("depth must be > 0, got {d}")));
            }
        }
        self.numerics.policy()?;
        if self.model == Model::Morse && self.particles != [1] && self.axis.variable != Variable::Particles {
            return Err(ConfigError::new("the Morse model holds a single particle; set N = 1"));
        }
        Ok(())
    }
}

fn positive(name: &str, x: f64) -> Result<(), ConfigError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::new(format!("{name} must be finite and > 0, got {x}")))
    }
}

fn nonempty(name: &str, len: usize) -> Result<(), ConfigError> {
    if len == 0 {
        Err(ConfigError::new(format!("{name} list is empty")))
    } else {
        Ok(())
    }
}

/// Round-trips non-finite floats as strings, which JSON numbers cannot hold.
pub(crate) mod real {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    pub(crate) enum Repr {
        Number(f64),
        Text(String),
    }

    impl Repr {
        pub(crate) fn from_f64(x: f64) -> Self {
            if x.is_finite() {
                Repr::Number(x)
            } else {
                Repr::Text(x.to_string())
            }
        }

        pub(crate) fn into_f64<E: serde::de::Error>(self) -> Result<f64, E> {
            match self {
                Repr::Number(x) => Ok(x),
                Repr::Text(s) => s.parse().map_err(|_| E::custom(format!("not a number: {s}"))),
            }
        }
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        Repr::from_f64(*x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Repr::deserialize(d)?.into_f64()
    }
}

pub(crate) mod reals {
    use super::real::Repr;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| Repr::from_f64(*x)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        Vec::<Repr>::deserialize(d)?.into_iter().map(Repr::into_f64).collect()
    }
}
