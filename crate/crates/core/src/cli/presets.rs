use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::spectral::{RealSignal, TimeGrid};

/// Built-in sources on the support [0, 10].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresetId {
    /// ±1 square wave switching at 2.5, 5 and 7.5.
    Square,
    /// 6.51 e^{−t}.
    Exp,
}

impl FromStr for PresetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "square" => Ok(PresetId::Square),
            "exp" => Ok(PresetId::Exp),
            other => Err(Error::Config(format!(
                "unknown preset source '{other}' (expected 'square' or 'exp')"
            ))),
        }
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresetId::Square => "square",
            PresetId::Exp => "exp",
        })
    }
}

/// Square wave: −1 on [0, 2.5), 1 on [2.5, 5), −1 on [5, 7.5), 1 on [7.5, 10], 0 elsewhere.
pub fn square_source(t: f64) -> f64 {
    if !(0.0..=10.0).contains(&t) {
        0.0
    } else if t < 2.5 {
        -1.0
    } else if t < 5.0 {
        1.0
    } else if t < 7.5 {
        -1.0
    } else {
        1.0
    }
}

/// 6.51 e^{−t} on [0, 10], 0 elsewhere.
pub fn exp_source(t: f64) -> f64 {
    if (0.0..=10.0).contains(&t) {
        6.51 * (-t).exp()
    } else {
        0.0
    }
}

/// Samples a built-in source on `grid`.
pub fn preset_source(id: PresetId, grid: &TimeGrid) -> RealSignal {
    let f = match id {
        PresetId::Square => square_source,
        PresetId::Exp => exp_source,
    };
    RealSignal::from_fn(*grid, f).expect("preset sources are finite")
}
