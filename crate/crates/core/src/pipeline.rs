//! Synthetic data, noise injection and the two inversion paths.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::regularize::{choose_mu, FilterKind};
use crate::spectral::{dft, idft, l2_norm, RealSignal};
use crate::symbols::{forward_kernel, inverse_symbol, MediumParams};

/// Noise level substituted for δ when a run is noiseless, so that the
/// parameter rule stays defined.
pub const DELTA_FLOOR: f64 = 1e-12;

/// i.i.d. Gaussian noise N(0, σ²) per sample.
///
/// Draws come from ChaCha20 (`rand_chacha`) seeded with `seed` through
/// `SeedableRng::seed_from_u64`, mapped by `rand_distr::StandardNormal`.
/// Both are pure integer/IEEE arithmetic, so a seed reproduces the same
/// sequence on every platform.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub sigma: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(sigma: f64, seed: u64) -> Result<Self> {
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::Domain(format!(
                "noise deviation must be >= 0, got {sigma}"
            )));
        }
        Ok(Self { sigma, seed })
    }
}

/// Source estimator: unregularized inversion or one of the filters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Estimator {
    Naive,
    Filter(FilterKind),
}

impl Estimator {
    pub fn label(&self) -> &'static str {
        match self {
            Estimator::Naive => "naive",
            Estimator::Filter(kind) => kind.label(),
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Estimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("naive") {
            Ok(Estimator::Naive)
        } else {
            s.parse().map(Estimator::Filter)
        }
    }
}

/// One line of the error table.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorRow {
    pub epsilon: f64,
    pub seed: u64,
    pub estimator: Estimator,
    /// `None` for the naive estimator.
    pub mu: Option<f64>,
    pub delta: f64,
    pub delta_max: f64,
    pub rel_err: f64,
    pub theory_bound: Option<f64>,
}

/// Measurement y(t) = u(x₀, t) produced by the source `f`.
pub fn synthesize_data(f: &RealSignal, params: &MediumParams) -> Result<RealSignal> {
    let x0 = params.x0();
    // x₀ > 0 is guaranteed by MediumParams, so the kernel cannot fail
    idft(&dft(f).apply_multiplier(|xi| forward_kernel(x0, xi, params).expect("sensor position is positive")))
}

/// Adds seeded Gaussian noise and returns the noisy data with the realized
/// noise level δ = ‖y_noisy − y‖.
pub fn add_noise(y: &RealSignal, spec: &NoiseSpec) -> Result<(RealSignal, f64)> {
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    let samples = y
        .samples()
        .iter()
        .map(|v| {
            let z: f64 = StandardNormal.sample(&mut rng);
            v + spec.sigma * z
        })
        .collect();
    let noisy = RealSignal::new(*y.grid(), samples)?;
    let delta = l2_norm(&noisy.sub(y)?);
    Ok((noisy, delta))
}

/// f_est = F⁻¹[Λ · F y]. No stabilization.
pub fn invert_naive(y: &RealSignal, params: &MediumParams) -> Result<RealSignal> {
    idft(&dft(y).apply_multiplier(|xi| inverse_symbol(xi, params)))
}

/// f_est = F⁻¹[R_μ · F y] with μ from the a priori rule. Returns the estimate
/// and the μ used.
pub fn invert_regularized(
    y: &RealSignal,
    params: &MediumParams,
    kind: FilterKind,
    p: f64,
    delta: f64,
    delta_max: f64,
) -> Result<(RealSignal, f64)> {
    let mu = choose_mu(delta, delta_max, p)?;
    Ok((invert_with_mu(y, params, kind, mu)?, mu))
}

/// Filtered inversion at an explicit μ.
pub fn invert_with_mu(
    y: &RealSignal,
    params: &MediumParams,
    kind: FilterKind,
    mu: f64,
) -> Result<RealSignal> {
    idft(&dft(y).apply_multiplier(|xi| inverse_symbol(xi, params) * kind.damping(xi, mu)))
}

/// ‖f_est − f_true‖ / ‖f_true‖.
pub fn relative_error(f_est: &RealSignal, f_true: &RealSignal) -> Result<f64> {
    let reference = l2_norm(f_true);
    if reference == 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok(l2_norm(&f_est.sub(f_true)?) / reference)
}

/// δ_M = 1 + δ.
pub fn delta_max_rule(delta: f64) -> f64 {
    1.0 + delta
}

/// δ used by the parameter rule: the realized level, floored at [`DELTA_FLOOR`].
pub fn effective_delta(delta: f64) -> f64 {
    delta.max(DELTA_FLOOR)
}
