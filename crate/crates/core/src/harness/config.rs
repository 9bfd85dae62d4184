use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pointfield::{radius_for_unit_density, Medium};
use crate::scatter::ScatteringModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    ResonanceMap,
    EffectiveResonances,
    Wavefield,
    RadialProfile,
    DiffusionModes,
    BoltzmannMc,
    HankelZeros,
}

impl Task {
    pub const ALL: [Task; 7] = [
        Task::ResonanceMap,
        Task::EffectiveResonances,
        Task::Wavefield,
        Task::RadialProfile,
        Task::DiffusionModes,
        Task::BoltzmannMc,
        Task::HankelZeros,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Task::ResonanceMap => "resonance-map",
            Task::EffectiveResonances => "effective-resonances",
            Task::Wavefield => "wavefield",
            Task::RadialProfile => "radial-profile",
            Task::DiffusionModes => "diffusion-modes",
            Task::BoltzmannMc => "boltzmann-mc",
            Task::HankelZeros => "hankel-zeros",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Task::ALL
            .iter()
            .copied()
            .find(|t| t.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown task '{s}'")))
    }
}

fn normalize_key(k: &str) -> String {
    k.trim().to_ascii_lowercase().replace('_', "-")
}

/// Resolved run configuration. Values are kept as text so that the header
/// echo reproduces them exactly; `out` and `threads` are not part of it.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parse `key = value` lines. Lines starting with a single `#` are read
    /// as header echoes; `##` lines and lines without `=` are ignored, so an
    /// output file is itself a valid config.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut cfg = Self::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with("##") {
                continue;
            }
            let body = line.strip_prefix('#').unwrap_or(line).trim();
            let Some((k, v)) = body.split_once('=') else {
                continue;
            };
            let key = normalize_key(k);
            if key.is_empty() || key.contains(char::is_whitespace) {
                return Err(Error::Config(format!("line {}: malformed key '{k}'", lineno + 1)));
            }
            match key.as_str() {
                "out" => cfg.out = Some(PathBuf::from(v.trim())),
                "threads" => cfg.threads = Some(parse_value(&key, v.trim())?),
                _ => {
                    cfg.values.insert(key, v.trim().to_string());
                }
            }
        }
        Ok(cfg)
    }

    /// Overlay `other` on top of `self` (other wins).
    pub fn merge(&mut self, other: RunConfig) {
        self.values.extend(other.values);
        if other.out.is_some() {
            self.out = other.out;
        }
        if other.threads.is_some() {
            self.threads = other.threads;
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        let key = normalize_key(key);
        let value = value.into();
        match key.as_str() {
            "out" => self.out = Some(PathBuf::from(value)),
            "threads" => self.threads = value.parse().ok(),
            _ => {
                self.values.insert(key, value);
            }
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(&normalize_key(key)).map(String::as_str)
    }

    pub fn task(&self) -> Result<Task> {
        self.raw("task").ok_or_else(|| Error::Config("no task given".into()))?.parse()
    }

    /// Typed value; a missing key takes `default`, which is recorded.
    pub fn get_or<T: FromStr + ToString>(&mut self, key: &str, default: T) -> Result<T> {
        let key = normalize_key(key);
        match self.values.get(&key) {
            Some(v) => parse_value(&key, v),
            None => {
                self.values.insert(key, default.to_string());
                Ok(default)
            }
        }
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T> {
        let key = normalize_key(key);
        let v = self.values.get(&key).ok_or_else(|| Error::Config(format!("missing required key '{key}'")))?;
        parse_value(&key, v)
    }

    pub fn get_opt<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        let key = normalize_key(key);
        self.values.get(&key).map(|v| parse_value(&key, v)).transpose()
    }

    /// Medium from keys d, n, radius, model and seed; the radius defaults to
    /// unit density (ς = 1).
    pub fn medium(&mut self) -> Result<Medium> {
        let d: usize = self.get_or("d", 2)?;
        let n: usize = self.get_or("n", 100)?;
        let model: ScatteringModel = self.get_or_text("model", "max")?.parse()?;
        let seed: u64 = self.get_or("seed", 0)?;
        let radius: f64 = match self.get_opt("radius")? {
            Some(r) => r,
            None => {
                if !(1..=3).contains(&d) {
                    return Err(Error::Config(format!("dimension {d} is not supported for media (1..=3)")));
                }
                let r = radius_for_unit_density(d, n);
                self.set("radius", format!("{r:.17e}"));
                r
            }
        };
        Medium::new(d, n, radius, model, seed)
    }

    pub fn get_or_text(&mut self, key: &str, default: &str) -> Result<String> {
        self.get_or(key, default.to_string())
    }

    /// Complex value written `re` or `re,im`.
    pub fn complex_or(&mut self, key: &str, default: &str) -> Result<Complex64> {
        let s = self.get_or_text(key, default)?;
        parse_complex(&s).ok_or_else(|| Error::Config(format!("bad complex value for '{key}': '{s}'")))
    }

    /// Comma-separated reals.
    pub fn list_or(&mut self, key: &str, default: &str) -> Result<Vec<f64>> {
        let s = self.get_or_text(key, default)?;
        s.split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Config(format!("bad list for '{key}': '{s}'")))
    }

    /// Grid size written `NXxNY`.
    pub fn grid_or(&mut self, key: &str, default: &str) -> Result<(usize, usize)> {
        let s = self.get_or_text(key, default)?;
        let parsed = s.split_once('x').and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
        match parsed {
            Some((nx, ny)) if nx > 0 && ny > 0 => Ok((nx, ny)),
            _ => Err(Error::Config(format!("bad grid for '{key}': '{s}' (expected NXxNY)"))),
        }
    }

    /// `# key=value` lines in key order.
    pub fn header_lines(&self) -> Vec<String> {
        self.values.iter().map(|(k, v)| format!("# {k}={v}")).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&String, &String)> {
        self.values.iter()
    }
}

fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| Error::Config(format!("bad value for '{key}': '{v}'")))
}

pub fn parse_complex(s: &str) -> Option<Complex64> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re] => Some(Complex64::new(re.trim().parse().ok()?, 0.0)),
        [re, im] => Some(Complex64::new(re.trim().parse().ok()?, im.trim().parse().ok()?)),
        _ => None,
    }
}
