//! Uniform time grids, discrete Fourier transforms and discrete norms.
//!
//! Coefficients approximate the unitary continuous transform
//! f̂(ξ) = (2π)^{-1/2} ∫ e^{−iξt} f(t) dt by the rectangle rule:
//!
//! ```text
//! c_k = dt / √(2π) · Σ_j s_j e^{−2πi jk/n}
//! ```
//!
//! With bin weight w = 2π/T (the angular frequency spacing) the discrete
//! Parseval identity reads dt Σ s_j² = w Σ |c_k|², so the time-side and
//! frequency-side norms agree independently of n and T.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Relative size of the imaginary residual tolerated by [`idft`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-8;

/// Unit of the frequency label attached to each DFT bin.
///
/// `Angular` gives ξ_k = 2π k̃ / T, the variable of the continuous transform.
/// `Cycles` gives ξ_k = k̃ / T (cycles per unit time). Only the labels passed
/// to symbols and Sobolev weights change; coefficients and norms do not.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FreqUnit {
    #[default]
    Angular,
    Cycles,
}

impl FromStr for FreqUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "angular" => Ok(FreqUnit::Angular),
            "cycles" => Ok(FreqUnit::Cycles),
            other => Err(Error::Config(format!(
                "unknown frequency unit '{other}' (expected 'angular' or 'cycles')"
            ))),
        }
    }
}

impl fmt::Display for FreqUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FreqUnit::Angular => "angular",
            FreqUnit::Cycles => "cycles",
        })
    }
}

/// n samples at t_k = k·dt, k = 0..n−1, dt = T/n.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    n: usize,
    t_max: f64,
    freq_unit: FreqUnit,
}

impl TimeGrid {
    /// Grid with angular frequency labels. `n` must be a power of two ≥ 8.
    pub fn new(n: usize, t_max: f64) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::Domain(format!(
                "sample count must be a power of two >= 8, got {n}"
            )));
        }
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::Domain(format!("window length must be > 0, got {t_max}")));
        }
        Ok(Self {
            n,
            t_max,
            freq_unit: FreqUnit::Angular,
        })
    }

    pub fn with_freq_unit(mut self, unit: FreqUnit) -> Self {
        self.freq_unit = unit;
        self
    }

    /// Same spacing, window and sample count multiplied by `factor`.
    pub fn padded(&self, factor: usize) -> Result<Self> {
        if factor == 0 || !factor.is_power_of_two() {
            return Err(Error::Domain(format!(
                "padding factor must be a power of two >= 1, got {factor}"
            )));
        }
        Ok(Self {
            n: self.n * factor,
            t_max: self.t_max * factor as f64,
            freq_unit: self.freq_unit,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn freq_unit(&self) -> FreqUnit {
        self.freq_unit
    }

    pub fn dt(&self) -> f64 {
        self.t_max / self.n as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.dt()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|k| self.time(k))
    }

    /// Frequency label of bin k. Bins k ≥ n/2 carry negative frequencies, so
    /// the Nyquist bin n/2 holds the most negative value −π/dt (angular).
    pub fn freq(&self, k: usize) -> f64 {
        let n = self.n as isize;
        let k = k as isize;
        let signed = if k < n / 2 { k } else { k - n };
        let base = signed as f64 / self.t_max;
        match self.freq_unit {
            FreqUnit::Angular => 2.0 * PI * base,
            FreqUnit::Cycles => base,
        }
    }

    pub fn freqs(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.freq(k)).collect()
    }

    /// Quadrature weight of one frequency bin, 2π/T.
    pub fn bin_weight(&self) -> f64 {
        2.0 * PI / self.t_max
    }
}

/// Real samples on a [`TimeGrid`].
#[derive(Clone, Debug, PartialEq)]
pub struct RealSignal {
    grid: TimeGrid,
    samples: Vec<f64>,
}

impl RealSignal {
    pub fn new(grid: TimeGrid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.n() {
            return Err(Error::GridMismatch(format!(
                "{} samples for a grid of {}",
                samples.len(),
                grid.n()
            )));
        }
        if let Some(k) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::Domain(format!("sample {k} is not finite")));
        }
        Ok(Self { grid, samples })
    }

    pub fn from_fn(grid: TimeGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.times().map(f).collect())
    }

    pub fn zeros(grid: TimeGrid) -> Self {
        Self {
            grid,
            samples: vec![0.0; grid.n()],
        }
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// Extends the signal with zeros onto `grid.padded(factor)`.
    pub fn zero_padded(&self, factor: usize) -> Result<Self> {
        let grid = self.grid.padded(factor)?;
        let mut samples = self.samples.clone();
        samples.resize(grid.n(), 0.0);
        Ok(Self { grid, samples })
    }

    /// Sample-wise `self − other`.
    pub fn sub(&self, other: &RealSignal) -> Result<RealSignal> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &RealSignal) -> Result<RealSignal> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scale(&self, a: f64) -> RealSignal {
        RealSignal {
            grid: self.grid,
            samples: self.samples.iter().map(|s| a * s).collect(),
        }
    }

    fn zip_with(&self, other: &RealSignal, op: impl Fn(f64, f64) -> f64) -> Result<RealSignal> {
        ensure_same_grid(&self.grid, &other.grid)?;
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| op(*a, *b))
            .collect();
        Ok(RealSignal {
            grid: self.grid,
            samples,
        })
    }
}

pub(crate) fn ensure_same_grid(a: &TimeGrid, b: &TimeGrid) -> Result<()> {
    if a.n() != b.n() || a.t_max() != b.t_max() {
        return Err(Error::GridMismatch(format!(
            "n={} T={} vs n={} T={}",
            a.n(),
            a.t_max(),
            b.n(),
            b.t_max()
        )));
    }
    Ok(())
}

/// DFT coefficients of a signal together with its grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    grid: TimeGrid,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(grid: TimeGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.n() {
            return Err(Error::GridMismatch(format!(
                "{} coefficients for a grid of {}",
                coeffs.len(),
                grid.n()
            )));
        }
        Ok(Self { grid, coeffs })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn freq(&self, k: usize) -> f64 {
        self.grid.freq(k)
    }

    /// Plain Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Multiplies every bin by `m(ξ_k)`.
    ///
    /// The bins k = 0 and k = n/2 are their own mirror images, so a real
    /// signal can only carry a real coefficient there. At those bins the
    /// multiplier is replaced by sign(Re m)·|m|: real multipliers pass
    /// through unchanged, and for m₂ = 1/m₁ the two projections still
    /// multiply to exactly one, so kernel and inverse stay inverse.
    pub fn apply_multiplier(&self, m: impl Fn(f64) -> Complex64) -> Spectrum {
        let n = self.grid.n();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let mk = m(self.grid.freq(k));
                if k == 0 || k == n / 2 {
                    c * self_conjugate_projection(mk)
                } else {
                    c * mk
                }
            })
            .collect();
        Spectrum {
            grid: self.grid,
            coeffs,
        }
    }
}

fn self_conjugate_projection(m: Complex64) -> f64 {
    if m.re < 0.0 {
        -m.norm()
    } else {
        m.norm()
    }
}

/// Forward transform with the scaling described in the module docs.
pub fn dft(signal: &RealSignal) -> Spectrum {
    let grid = *signal.grid();
    let n = grid.n();
    let mut buf: Vec<Complex64> = signal.samples().iter().map(|&s| Complex64::new(s, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = grid.dt() / (2.0 * PI).sqrt();
    for c in &mut buf {
        *c *= scale;
    }
    Spectrum { grid, coeffs: buf }
}

/// Inverse of [`dft`]. Returns the real part and fails when the largest
/// imaginary part exceeds `SYMMETRY_TOLERANCE` times the coefficient norm
/// (mapped to sample scale), i.e. when the spectrum is not Hermitian.
pub fn idft(spectrum: &Spectrum) -> Result<RealSignal> {
    let grid = *spectrum.grid();
    let n = grid.n();
    if spectrum
        .coeffs()
        .iter()
        .any(|c| !(c.re.is_finite() && c.im.is_finite()))
    {
        return Err(Error::Domain("spectrum has non-finite coefficients".into()));
    }
    let mut buf = spectrum.coeffs().to_vec();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    // inverse of dt/√(2π) together with rustfft's missing 1/n
    let scale = (2.0 * PI).sqrt() / (grid.dt() * n as f64);
    let residual = buf.iter().map(|c| (c.im * scale).abs()).fold(0.0, f64::max);
    let limit = SYMMETRY_TOLERANCE * spectrum.coeff_norm() * scale;
    if residual > limit {
        return Err(Error::SymmetryViolation { residual, limit });
    }
    Ok(RealSignal {
        grid,
        samples: buf.iter().map(|c| c.re * scale).collect(),
    })
}

/// √(dt Σ s²), the rectangle-rule L² norm.
pub fn l2_norm(signal: &RealSignal) -> f64 {
    (signal.grid().dt() * signal.samples().iter().map(|s| s * s).sum::<f64>()).sqrt()
}

/// √(w Σ |c_k|² (1 + ξ_k²)^p), the discrete Sobolev H^p norm.
pub fn hp_norm(spectrum: &Spectrum, p: f64) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Domain(format!("smoothness order must be > 0, got {p}")));
    }
    let grid = spectrum.grid();
    let sum: f64 = spectrum
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let xi = grid.freq(k);
            c.norm_sqr() * (1.0 + xi * xi).powf(p)
        })
        .sum();
    Ok((grid.bin_weight() * sum).sqrt())
}
