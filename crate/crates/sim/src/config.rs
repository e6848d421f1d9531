//! Flat `key = value` config files with optional `[section]` headers.
//!
//! ```text
//! [sweep]
//! model = morse
//! axis = frequency
//! min = 1e9
//! max = 1e13
//! points = 41
//! scale = log
//!
//! [system]
//! mass = 1.1 u
//! depth = 0.01 eV, 0.1 eV, inf
//! baths = 1:0.5, 20:10
//!
//! [numerics]
//! rel_tol = 1e-12
//! ```
//!
//! `#` starts a comment. Lists are comma-separated; integer lists also take
//! inclusive ranges `1..30`. Energies accept an `eV` suffix and masses a `u`
//! suffix; everything else is SI.

use szilard_core::constants::{ATOMIC_MASS_UNIT, ELECTRON_VOLT};

use crate::error::ConfigError;
use crate::spec::{Axis, AxisValues, BathSpec, Model, MuModeName, Scale, SweepSpec, Variable};

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub section: Option<String>,
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub entries: Vec<Entry>,
}

const KEYS: &[(&str, &str)] = &[
    ("model", "sweep"),
    ("axis", "sweep"),
    ("min", "sweep"),
    ("max", "sweep"),
    ("points", "sweep"),
    ("scale", "sweep"),
    ("values", "sweep"),
    ("mass", "system"),
    ("omega", "system"),
    ("nu", "system"),
    ("N", "system"),
    ("baths", "system"),
    ("cold_ratio", "system"),
    ("depth", "system"),
    ("frequency", "system"),
    ("k_max", "system"),
    ("rel_tol", "numerics"),
    ("max_terms", "numerics"),
    ("mu_mode", "numerics"),
    ("eq18_literal", "numerics"),
    ("eq38_literal", "numerics"),
];

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut section = None;
        let mut entries: Vec<Entry> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| ConfigError::at(line, format!("malformed section header `{content}`")))?
                    .trim();
                if !["sweep", "system", "numerics"].contains(&name) {
                    return Err(ConfigError::at(line, format!("unknown section [{name}]")));
                }
                section = Some(name.to_string());
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| ConfigError::at(line, format!("expected `key = value`, got `{content}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let home = KEYS
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, s)| *s)
                .ok_or_else(|| ConfigError::at(line, format!("unknown key `{key}`")))?;
            if let Some(s) = &section {
                if s != home {
                    return Err(ConfigError::at(line, format!("key `{key}` belongs in [{home}], not [{s}]")));
                }
            }
            if value.is_empty() {
                return Err(ConfigError::at(line, format!("empty value for `{key}`")));
            }
            if let Some(prev) = entries.iter().find(|e| e.key == key) {
                return Err(ConfigError::at(line, format!("duplicate key `{key}` (first set on line {})", prev.line)));
            }
            entries.push(Entry { section: section.clone(), key: key.to_string(), value: value.to_string(), line });
        }
        Ok(ConfigFile { entries })
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    /// Overlays the file onto `spec`. The result is not validated.
    pub fn apply(&self, spec: &mut SweepSpec) -> Result<(), ConfigError> {
        for e in &self.entries {
            let at = |m: String| ConfigError::at(e.line, format!("`{}`: {m}", e.key));
            let v = e.value.as_str();
            match e.key.as_str() {
                "model" => spec.model = v.parse::<Model>().map_err(|err| at(err.message))?,
                "mass" => spec.mass = parse_quantity(v, Unit::Mass).map_err(at)?,
                "omega" => spec.omega = parse_quantity(v, Unit::None).map_err(at)?,
                "nu" => spec.exponents = parse_list(v, Unit::None).map_err(at)?,
                "N" => spec.particles = parse_counts(v).map_err(at)?,
                "baths" => spec.baths = parse_baths(v).map_err(at)?,
                "cold_ratio" => spec.cold_ratio = parse_quantity(v, Unit::None).map_err(at)?,
                "depth" => spec.depths = parse_list(v, Unit::Energy).map_err(at)?,
                "frequency" => spec.frequency = parse_quantity(v, Unit::None).map_err(at)?,
                "k_max" => spec.k_max = parse_int(v).map_err(at)?,
                "rel_tol" => spec.numerics.rel_tol = parse_quantity(v, Unit::None).map_err(at)?,
                "max_terms" => spec.numerics.max_terms = parse_int(v).map_err(at)?,
                "mu_mode" => spec.numerics.mu_mode = v.parse::<MuModeName>().map_err(|err| at(err.message))?,
                "eq18_literal" => spec.numerics.eq18_literal = parse_bool(v).map_err(at)?,
                "eq38_literal" => spec.numerics.eq38_literal = parse_bool(v).map_err(at)?,
                _ => {}
            }
        }
        self.apply_axis(spec)
    }

    fn apply_axis(&self, spec: &mut SweepSpec) -> Result<(), ConfigError> {
        let variable = match self.get("axis") {
            Some(e) => e.value.parse::<Variable>().map_err(|err| ConfigError::at(e.line, err.message))?,
            None => spec.axis.variable,
        };
        let range_keys = ["min", "max", "points", "scale"].map(|k| self.get(k));
        if let Some(values) = self.get("values") {
            if let Some(clash) = range_keys.iter().flatten().next() {
                return Err(ConfigError::at(clash.line, "`values` and a min/max/points/scale range are mutually exclusive"));
            }
            let list = parse_list(&values.value, Unit::None).map_err(|m| ConfigError::at(values.line, m))?;
            spec.axis = Axis::list(variable, list);
            return Ok(());
        }
        let (mut min, mut max, mut points, mut scale) = match spec.axis.values {
            AxisValues::Range { min, max, points, scale } => (Some(min), Some(max), Some(points), scale),
            AxisValues::List(_) => (None, None, None, Scale::Linear),
        };
        let [e_min, e_max, e_points, e_scale] = range_keys;
        if let Some(e) = e_min {
            min = Some(parse_quantity(&e.value, Unit::None).map_err(|m| ConfigError::at(e.line, m))?);
        }
        if let Some(e) = e_max {
            max = Some(parse_quantity(&e.value, Unit::None).map_err(|m| ConfigError::at(e.line, m))?);
        }
        if let Some(e) = e_points {
            points = Some(parse_int(&e.value).map_err(|m| ConfigError::at(e.line, m))?);
        }
        if let Some(e) = e_scale {
            scale = e.value.parse().map_err(|err: ConfigError| ConfigError::at(e.line, err.message))?;
        }
        let touched = range_keys.iter().any(Option::is_some);
        if variable != spec.axis.variable && !touched {
            return Err(ConfigError::new(format!("axis changed to {variable} without a range or value list")));
        }
        if touched || variable != spec.axis.variable {
            match (min, max, points) {
                (Some(min), Some(max), Some(points)) => spec.axis = Axis::range(variable, min, max, points, scale),
                _ => return Err(ConfigError::new("a range axis needs min, max and points")),
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    None,
    /// Joules, or electron-volts with an `eV` suffix.
    Energy,
    /// Kilograms, or unified atomic mass units with a `u` suffix.
    Mass,
}

/// A decimal or scientific literal, `inf`, or a number followed by its unit.
pub fn parse_quantity(s: &str, unit: Unit) -> Result<f64, String> {
    let s = s.trim();
    let (number, factor) = match unit {
        Unit::Energy if s.ends_with("eV") => (s.trim_end_matches("eV"), ELECTRON_VOLT),
        Unit::Energy if s.ends_with('J') => (s.trim_end_matches('J'), 1.0),
        Unit::Mass if s.ends_with("kg") => (s.trim_end_matches("kg"), 1.0),
        Unit::Mass if s.ends_with('u') => (s.trim_end_matches('u'), ATOMIC_MASS_UNIT),
        _ => (s, 1.0),
    };
    let number = number.trim();
    let x: f64 = match number {
        "inf" | "+inf" | "infinity" => f64::INFINITY,
        _ => number.parse().map_err(|_| format!("not a number: `{s}`"))?,
    };
    if x.is_nan() {
        return Err(format!("not a number: `{s}`"));
    }
    Ok(x * factor)
}

pub fn parse_list(s: &str, unit: Unit) -> Result<Vec<f64>, String> {
    s.split(',').map(|item| parse_quantity(item, unit)).collect()
}

fn parse_int<T: std::str::FromStr>(s: &str) -> Result<T, String> {
    s.trim().parse().map_err(|_| format!("not a non-negative integer: `{s}`"))
}

/// `1, 2, 5..8` → `[1, 2, 5, 6, 7, 8]`
pub fn parse_counts(s: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for item in s.split(',') {
        match item.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi): (u32, u32) = (parse_int(lo)?, parse_int(hi)?);
                if lo > hi {
                    return Err(format!("empty range `{}`", item.trim()));
                }
                out.extend(lo..=hi);
            }
            None => out.push(parse_int(item)?),
        }
    }
    Ok(out)
}

/// `2:1, 20:10` → hot/cold pairs.
pub fn parse_baths(s: &str) -> Result<Vec<BathSpec>, String> {
    s.split(',')
        .map(|item| {
            let (hot, cold) = item.split_once(':').ok_or_else(|| format!("bath pair must be `hot:cold`, got `{}`", item.trim()))?;
            Ok(BathSpec { hot: parse_quantity(hot, Unit::None)?, cold: parse_quantity(cold, Unit::None)? })
        })
        .collect()
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("expected true or false, got `{other}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset;
    use crate::spec::Target;

    #[test]
    fn units_and_infinity() {
        assert_eq!(parse_quantity("8.7 eV", Unit::Energy).unwrap(), 8.7 * ELECTRON_VOLT);
        assert_eq!(parse_quantity("1.1u", Unit::Mass).unwrap(), 1.1 * ATOMIC_MASS_UNIT);
        assert_eq!(parse_quantity("19.11e-11 kg", Unit::Mass).unwrap(), 19.11e-11);
        assert_eq!(parse_quantity("inf", Unit::Energy).unwrap(), f64::INFINITY);
        assert!(parse_quantity("8.7 eV", Unit::None).is_err());
        assert!(parse_quantity("NaN", Unit::None).is_err());
    }

    #[test]
    fn count_ranges() {
        assert_eq!(parse_counts("1, 3..5, 9").unwrap(), vec![1, 3, 4, 5, 9]);
        assert!(parse_counts("5..3").is_err());
        assert!(parse_counts("-1").is_err());
    }

    #[test]
    fn overlay_onto_preset() {
        let text = "\
# Morse frequency sweep, shallow wells only
[sweep]
min = 1e10
points = 5

[system]
depth = 0.01 eV, 0.1 eV
baths = 4:2
";
        let mut spec = preset(Target::Fig10);
        ConfigFile::parse(text).unwrap().apply(&mut spec).unwrap();
        assert_eq!(spec.axis, Axis::range(Variable::Frequency, 1e10, 1e13, 5, Scale::Log));
        assert_eq!(spec.depths, vec![0.01 * ELECTRON_VOLT, 0.1 * ELECTRON_VOLT]);
        assert_eq!(spec.baths, vec![BathSpec { hot: 4.0, cold: 2.0 }]);
        spec.validate().unwrap();
    }

    #[test]
    fn value_list_axis() {
        let mut spec = preset(Target::Fig6);
        ConfigFile::parse("values = 0, 5, inf").unwrap().apply(&mut spec).unwrap();
        assert_eq!(spec.axis.points(), vec![0.0, 5.0, f64::INFINITY]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = ConfigFile::parse("[sweep]\nmodel = bose\nmass = 3").unwrap_err();
        assert_eq!(err.line, Some(3));
        assert_eq!(ConfigFile::parse("\n\nbogus = 1").unwrap_err().line, Some(3));
        assert_eq!(ConfigFile::parse("N = 1\nN = 2").unwrap_err().line, Some(2));
        assert!(ConfigFile::parse("[extra]").is_err());
        let mut spec = preset(Target::Fig8);
        let err = ConfigFile::parse("\nN = 1, x").unwrap().apply(&mut spec).unwrap_err();
        assert_eq!(err.line, Some(2));
    }

    #[test]
    fn axis_change_requires_range() {
        let mut spec = preset(Target::Fig8);
        assert!(ConfigFile::parse("axis = omega").unwrap().apply(&mut spec).is_err());
        let mut spec = preset(Target::Fig6);
        assert!(ConfigFile::parse("values = 1\nmin = 0").unwrap().apply(&mut spec).is_err());
    }
}
