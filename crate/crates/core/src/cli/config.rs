//! Experiment configuration: presets, TOML files and command-line overrides.
//!
//! Values are resolved in order preset → file → flags. A config file is a
//! flat TOML table whose keys mirror the long flag names:
//!
//! ```toml
//! example = 2            # preset to start from (1 or 2)
//! alpha = 0.3
//! omega = 0.01
//! beta = 0.5
//! nu = 1.51
//! x0 = 10.0
//! n = 256
//! t_max = 10.0
//! pad = 1
//! freq_unit = "cycles"   # or "angular"
//! p = 2.0
//! source = "exp"         # or "square"; alternatively samples = [...]
//! eps = [1e-1, 1e-2]
//! seeds = 20             # count, or an explicit list [3, 7, 11]
//! master_seed = 0
//! filters = ["r1", "r2", "r3"]
//! out = "results"
//! theory_bound = true
//! signals = true
//! ```

use serde::Deserialize;
use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::cli::presets::PresetId;
use crate::error::{Error, Result};
use crate::pipeline::Estimator;
use crate::spectral::{FreqUnit, TimeGrid};
use crate::symbols::MediumParams;

/// Where the source samples come from.
#[derive(Clone, Debug, PartialEq)]
pub enum SourceSpec {
    Preset(PresetId),
    /// Samples on the unpadded grid, t_k = k·dt.
    Samples(Vec<f64>),
}

/// Seeds given either as a count (0..count) or as an explicit list.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum SeedSpec {
    Count(u64),
    List(Vec<u64>),
}

impl SeedSpec {
    /// `"20"` is a count, `"3,7,11"` (any comma) a list.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |e: std::num::ParseIntError| Error::Config(format!("invalid seeds '{s}': {e}"));
        if s.contains(',') {
            s.split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| p.trim().parse::<u64>().map_err(bad))
                .collect::<Result<Vec<_>>>()
                .map(SeedSpec::List)
        } else {
            s.trim().parse::<u64>().map(SeedSpec::Count).map_err(bad)
        }
    }

    pub fn seeds(&self) -> Vec<u64> {
        match self {
            SeedSpec::Count(n) => (0..*n).collect(),
            SeedSpec::List(v) => v.clone(),
        }
    }
}

/// Fully resolved experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub params: MediumParams,
    pub n: usize,
    pub t_max: f64,
    pub pad: usize,
    pub freq_unit: FreqUnit,
    pub source: SourceSpec,
    pub p: f64,
    pub eps_list: Vec<f64>,
    pub seeds: Vec<u64>,
    pub master_seed: u64,
    /// Estimators requested by the user; naive is always evaluated in addition.
    pub filters: Vec<Estimator>,
    pub out_dir: Option<PathBuf>,
    /// Evaluate the a priori error bound for every filtered row.
    pub theory_bound: bool,
    /// Write one `signals_<eps>_<seed>.csv` per cell.
    pub write_signals: bool,
}

/// Table-grid noise deviations used by both presets.
pub const DEFAULT_EPS: [f64; 5] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5];

impl ExperimentConfig {
    /// Preset for experiment 1 (square wave) or 2 (decaying exponential).
    ///
    /// Presets label DFT bins in cycles per unit time; see the README for
    /// the comparison with angular labels.
    pub fn example(id: u8) -> Result<Self> {
        let (params, source, p, theory_bound) = match id {
            1 => (MediumParams::example1(), PresetId::Square, 1.0, false),
            2 => (MediumParams::example2(), PresetId::Exp, 2.0, true),
            other => {
                return Err(Error::Config(format!(
                    "unknown example {other} (expected 1 or 2)"
                )))
            }
        };
        Ok(Self {
            params,
            n: 256,
            t_max: 10.0,
            pad: 1,
            freq_unit: FreqUnit::Cycles,
            source: SourceSpec::Preset(source),
            p,
            eps_list: DEFAULT_EPS.to_vec(),
            seeds: (0..20).collect(),
            master_seed: 0,
            filters: crate::regularize::FilterKind::ALL.map(Estimator::Filter).to_vec(),
            out_dir: None,
            theory_bound,
            write_signals: true,
        })
    }

    /// Unpadded grid the source is defined on.
    pub fn base_grid(&self) -> Result<TimeGrid> {
        Ok(TimeGrid::new(self.n, self.t_max)?.with_freq_unit(self.freq_unit))
    }

    /// Grid every computation runs on.
    pub fn grid(&self) -> Result<TimeGrid> {
        self.base_grid()?.padded(self.pad)
    }

    /// Re-checks every invariant; useful for configs assembled in code.
    pub fn validate(&self) -> Result<()> {
        let cfg = |e: Error| Error::Config(e.to_string());
        MediumParams::new(
            self.params.omega(),
            self.params.beta(),
            self.params.nu(),
            self.params.alpha(),
            self.params.x0(),
        )
        .map_err(cfg)?;
        self.grid().map_err(cfg)?;
        check_p(self.p)?;
        check_eps(&self.eps_list)?;
        check_seeds(&self.seeds)?;
        check_filters(&self.filters)?;
        if let SourceSpec::Samples(s) = &self.source {
            check_samples(s, self.n)?;
        }
        Ok(())
    }
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("p must be > 0, got {p}")))
    }
}

fn check_eps(eps: &[f64]) -> Result<()> {
    if eps.is_empty() {
        return Err(Error::Config("eps list is empty".into()));
    }
    if let Some(e) = eps.iter().find(|e| !(**e >= 0.0 && e.is_finite())) {
        return Err(Error::Config(format!("noise deviation must be >= 0, got {e}")));
    }
    Ok(())
}

fn check_seeds(seeds: &[u64]) -> Result<()> {
    if seeds.is_empty() {
        return Err(Error::Config("seed set is empty".into()));
    }
    let mut sorted = seeds.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Config("seed list contains duplicates".into()));
    }
    Ok(())
}

fn check_filters(filters: &[Estimator]) -> Result<()> {
    if filters.is_empty() {
        Err(Error::Config("filter set is empty".into()))
    } else {
        Ok(())
    }
}

fn check_samples(samples: &[f64], n: usize) -> Result<()> {
    if samples.len() != n {
        return Err(Error::Config(format!(
            "samples has {} values but n = {n}",
            samples.len()
        )));
    }
    if samples.iter().any(|s| !s.is_finite()) {
        return Err(Error::Config("samples contains non-finite values".into()));
    }
    Ok(())
}

/// Optional values from one layer (file or flags).
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigPatch {
    pub example: Option<u8>,
    pub alpha: Option<f64>,
    pub omega: Option<f64>,
    pub beta: Option<f64>,
    pub nu: Option<f64>,
    pub x0: Option<f64>,
    pub n: Option<usize>,
    pub t_max: Option<f64>,
    pub pad: Option<usize>,
    pub freq_unit: Option<String>,
    pub p: Option<f64>,
    pub source: Option<String>,
    pub samples: Option<Vec<f64>>,
    pub eps: Option<Vec<f64>>,
    pub seeds: Option<SeedSpec>,
    pub master_seed: Option<u64>,
    pub filters: Option<Vec<String>>,
    pub out: Option<PathBuf>,
    pub theory_bound: Option<bool>,
    pub signals: Option<bool>,
}

#[derive(Clone, Debug)]
enum Origin {
    Preset,
    File { path: PathBuf, line: Option<usize> },
    Flag,
}

/// Unvalidated values plus where each came from, for error messages.
struct Draft {
    omega: f64,
    beta: f64,
    nu: f64,
    alpha: f64,
    x0: f64,
    n: usize,
    t_max: f64,
    pad: usize,
    freq_unit: String,
    p: f64,
    source: Option<String>,
    samples: Option<Vec<f64>>,
    eps: Vec<f64>,
    seeds: SeedSpec,
    master_seed: u64,
    filters: Vec<String>,
    out: Option<PathBuf>,
    theory_bound: bool,
    signals: bool,
    origins: HashMap<&'static str, Origin>,
}

impl Draft {
    fn from_preset(base: &ExperimentConfig) -> Self {
        let (source, samples) = match &base.source {
            SourceSpec::Preset(id) => (Some(id.to_string()), None),
            SourceSpec::Samples(s) => (None, Some(s.clone())),
        };
        Self {
            omega: base.params.omega(),
            beta: base.params.beta(),
            nu: base.params.nu(),
            alpha: base.params.alpha(),
            x0: base.params.x0(),
            n: base.n,
            t_max: base.t_max,
            pad: base.pad,
            freq_unit: base.freq_unit.to_string(),
            p: base.p,
            source,
            samples,
            eps: base.eps_list.clone(),
            seeds: SeedSpec::List(base.seeds.clone()),
            master_seed: base.master_seed,
            filters: base.filters.iter().map(|f| f.label().to_string()).collect(),
            out: base.out_dir.clone(),
            theory_bound: base.theory_bound,
            signals: base.write_signals,
            origins: HashMap::new(),
        }
    }

    fn apply(&mut self, patch: ConfigPatch, origin: impl Fn(&'static str) -> Origin) {
        macro_rules! set {
            ($field:ident) => {
                if let Some(v) = patch.$field {
                    self.$field = v;
                    self.origins
                        .insert(stringify!($field), origin(stringify!($field)));
                }
            };
            ($field:ident, opt) => {
                if let Some(v) = patch.$field {
                    self.$field = Some(v);
                    self.origins
                        .insert(stringify!($field), origin(stringify!($field)));
                }
            };
        }
        set!(omega);
        set!(beta);
        set!(nu);
        set!(alpha);
        set!(x0);
        set!(n);
        set!(t_max);
        set!(pad);
        set!(freq_unit);
        set!(p);
        set!(eps);
        set!(seeds);
        set!(master_seed);
        set!(filters);
        set!(theory_bound);
        set!(signals);
        set!(out, opt);
        // an explicit source replaces tabulated samples and vice versa
        if let Some(v) = patch.source {
            self.source = Some(v);
            self.samples = None;
            self.origins.insert("source", origin("source"));
        }
        if let Some(v) = patch.samples {
            self.samples = Some(v);
            self.source = None;
            self.origins.insert("samples", origin("samples"));
        }
    }

    /// Wraps a message with the origin of `key`.
    fn err(&self, key: &'static str, msg: impl std::fmt::Display) -> Error {
        match self.origins.get(key) {
            Some(Origin::File {
                path,
                line: Some(line),
            }) => Error::Config(format!("{}:{line}: {key}: {msg}", path.display())),
            Some(Origin::File { path, line: None }) => {
                Error::Config(format!("{}: {key}: {msg}", path.display()))
            }
            Some(Origin::Flag) => Error::Config(format!("--{}: {msg}", key.replace('_', "-"))),
            Some(Origin::Preset) | None => Error::Config(format!("{key}: {msg}")),
        }
    }

    fn finish(self) -> Result<ExperimentConfig> {
        for (key, v) in [
            ("omega", self.omega),
            ("beta", self.beta),
            ("nu", self.nu),
            ("x0", self.x0),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(self.err(key, format!("must be finite and > 0, got {v}")));
            }
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(self.err("alpha", format!("must lie in (0, 1], got {}", self.alpha)));
        }
        let params = MediumParams::new(self.omega, self.beta, self.nu, self.alpha, self.x0)
            .map_err(|e| Error::Config(e.to_string()))?;
        if self.n < 8 || !self.n.is_power_of_two() {
            return Err(self.err("n", format!("must be a power of two >= 8, got {}", self.n)));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(self.err("t_max", format!("must be > 0, got {}", self.t_max)));
        }
        if self.pad == 0 || !self.pad.is_power_of_two() {
            return Err(self.err("pad", format!("must be a power of two >= 1, got {}", self.pad)));
        }
        let freq_unit: FreqUnit = self.freq_unit.parse().map_err(|e| self.err("freq_unit", e))?;
        check_p(self.p).map_err(|e| self.err("p", e))?;
        let source = match (&self.source, &self.samples) {
            (_, Some(samples)) => {
                check_samples(samples, self.n).map_err(|e| self.err("samples", e))?;
                SourceSpec::Samples(samples.clone())
            }
            (Some(id), None) => SourceSpec::Preset(id.parse().map_err(|e| self.err("source", e))?),
            (None, None) => return Err(Error::Config("no source given".into())),
        };
        check_eps(&self.eps).map_err(|e| self.err("eps", e))?;
        let seeds = self.seeds.seeds();
        check_seeds(&seeds).map_err(|e| self.err("seeds", e))?;
        let mut filters = Vec::new();
        for label in &self.filters {
            let f: Estimator = label.parse().map_err(|e| self.err("filters", e))?;
            if !filters.contains(&f) {
                filters.push(f);
            }
        }
        filters.sort();
        check_filters(&filters).map_err(|e| self.err("filters", e))?;
        Ok(ExperimentConfig {
            params,
            n: self.n,
            t_max: self.t_max,
            pad: self.pad,
            freq_unit,
            source,
            p: self.p,
            eps_list: self.eps,
            seeds,
            master_seed: self.master_seed,
            filters,
            out_dir: self.out,
            theory_bound: self.theory_bound,
            write_signals: self.signals,
        })
    }
}

/// 1-based line of the first `key = ...` assignment in a flat TOML text.
fn line_of_key(text: &str, key: &str) -> Option<usize> {
    text.lines()
        .position(|line| {
            let line = line.trim_start();
            line.strip_prefix(key)
                .map(|rest| rest.trim_start().starts_with('='))
                .unwrap_or(false)
        })
        .map(|i| i + 1)
}

/// Parses a config file body. Syntax and type errors carry TOML positions.
pub fn parse_patch(text: &str, path: &Path) -> Result<ConfigPatch> {
    toml::from_str(text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// Resolves preset, optional file and flag layers into a validated config.
///
/// The preset comes from `flags.example`, else the file's `example`, else 1.
pub fn resolve(file: Option<(&Path, &str)>, flags: ConfigPatch) -> Result<ExperimentConfig> {
    let file_patch = match file {
        Some((path, text)) => Some((path, text, parse_patch(text, path)?)),
        None => None,
    };
    let example = flags
        .example
        .or_else(|| file_patch.as_ref().and_then(|(_, _, p)| p.example))
        .unwrap_or(1);
    let base = ExperimentConfig::example(example)?;
    let mut draft = Draft::from_preset(&base);
    for key in ["omega", "beta", "nu", "alpha", "x0"] {
        draft.origins.insert(key, Origin::Preset);
    }
    if let Some((path, text, patch)) = file_patch {
        draft.apply(patch, |key| Origin::File {
            path: path.to_path_buf(),
            line: line_of_key(text, key),
        });
    }
    draft.apply(flags, |_| Origin::Flag);
    draft.finish()
}
