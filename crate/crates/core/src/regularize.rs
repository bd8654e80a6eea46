//! Spectral regularization filters and their analytic constants.
//!
//! Each filter damps the inverse symbol with a real factor φ_μ(ξ) ∈ (0, 1]:
//!
//! | kind        | R_μ(ξ)                  |
//! |-------------|-------------------------|
//! | `Rational2` | Λ(ξ) / (1 + μ²ξ²)        |
//! | `Rational4` | Λ(ξ) / (1 + μ²ξ⁴)        |
//! | `Gaussian`  | Λ(ξ) · e^{−μ²ξ²/4}       |
//!
//! The parameter rule μ = (δ/δ_M)^{1/(p+2)} uses only the noise level and the
//! assumed smoothness p, and yields
//!
//! ```text
//! ‖f − f_est‖ ≤ K · max{r^{2/(p+2)}, r^{p/(p+2)}, r^{(p−2)/(p+2)}},
//! r = δ/δ_M,  K = C + δ_M M
//! ```
//!
//! with C ≥ ‖f‖_{H^p} and M from [`const_m`].

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::symbols::{check_alpha, inverse_symbol, ComplexValue, MediumParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FilterKind {
    /// Λ / (1 + μ²ξ²), labelled `r1`.
    Rational2,
    /// Λ / (1 + μ²ξ⁴), labelled `r2`.
    Rational4,
    /// Λ · e^{−μ²ξ²/4}, labelled `r3`.
    Gaussian,
}

impl FilterKind {
    pub const ALL: [FilterKind; 3] = [FilterKind::Rational2, FilterKind::Rational4, FilterKind::Gaussian];

    pub fn label(&self) -> &'static str {
        match self {
            FilterKind::Rational2 => "r1",
            FilterKind::Rational4 => "r2",
            FilterKind::Gaussian => "r3",
        }
    }

    /// Real damping factor φ_μ(ξ) = R_μ(ξ)/Λ(ξ).
    pub fn damping(&self, xi: f64, mu: f64) -> f64 {
        let m2 = mu * mu;
        match self {
            FilterKind::Rational2 => 1.0 / (1.0 + m2 * xi * xi),
            FilterKind::Rational4 => 1.0 / (1.0 + m2 * xi.powi(4)),
            FilterKind::Gaussian => (-m2 * xi * xi / 4.0).exp(),
        }
    }

    /// 1 − φ_μ(ξ), computed without cancellation.
    pub fn damping_gap(&self, xi: f64, mu: f64) -> f64 {
        let m2 = mu * mu;
        match self {
            FilterKind::Rational2 => {
                let a = m2 * xi * xi;
                a / (1.0 + a)
            }
            FilterKind::Rational4 => {
                let a = m2 * xi.powi(4);
                a / (1.0 + a)
            }
            FilterKind::Gaussian => -(-m2 * xi * xi / 4.0).exp_m1(),
        }
    }
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FilterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "r1" | "rational2" => Ok(FilterKind::Rational2),
            "r2" | "rational4" => Ok(FilterKind::Rational4),
            "r3" | "gaussian" => Ok(FilterKind::Gaussian),
            other => Err(Error::Config(format!("unknown filter '{other}'"))),
        }
    }
}

/// Regularization parameter, smoothness order and noise levels of one run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegParams {
    mu: f64,
    p: f64,
    delta: f64,
    delta_max: f64,
}

impl RegParams {
    /// Parameters with μ chosen by [`choose_mu`].
    pub fn from_noise(delta: f64, delta_max: f64, p: f64) -> Result<Self> {
        let mu = choose_mu(delta, delta_max, p)?;
        Ok(Self {
            mu,
            p,
            delta,
            delta_max,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn delta_max(&self) -> f64 {
        self.delta_max
    }
}

/// R_μ(ξ) = φ_μ(ξ) Λ(ξ).
pub fn filter_value(kind: FilterKind, xi: f64, mu: f64, params: &MediumParams) -> ComplexValue {
    inverse_symbol(xi, params) * kind.damping(xi, mu)
}

/// μ = (δ/δ_M)^{1/(p+2)}, i.e. μ² = (δ/δ_M)^{2/(p+2)}.
pub fn choose_mu(delta: f64, delta_max: f64, p: f64) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Domain(format!("smoothness order must be > 0, got {p}")));
    }
    if !(delta > 0.0 && delta < delta_max && delta_max.is_finite()) {
        return Err(Error::Domain(format!(
            "noise level must satisfy 0 < delta < delta_max, got delta={delta}, delta_max={delta_max}"
        )));
    }
    Ok((delta / delta_max).powf(1.0 / (p + 2.0)))
}

/// n_i(α) = sup over s > 0 of s^α φ_1(s), so that ρ^α φ_μ(ρ) ≤ n_i μ^{−α} < n_i/μ²
/// for r1, r3 and ρ^α φ_μ(ρ) ≤ n_2 μ^{−α/2} < n_2/μ² for r2.
pub fn const_n(kind: FilterKind, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(match kind {
        FilterKind::Rational2 => (2.0 - alpha) / 2.0 * (alpha / (2.0 - alpha)).powf(alpha / 2.0),
        FilterKind::Rational4 => (4.0 - alpha) / 4.0 * (alpha / (4.0 - alpha)).powf(alpha / 4.0),
        FilterKind::Gaussian => (2.0 * alpha).powf(alpha / 2.0) / (alpha / 2.0).exp(),
    })
}

/// N = (x₀/2ω)(−β + √(β² + 4ων)) = x₀ h(0).
pub fn const_cap_n(params: &MediumParams) -> f64 {
    let (w, b, nu) = (params.omega(), params.beta(), params.nu());
    // −β + √(β² + 4ων) rewritten to avoid cancellation when 4ων ≪ β²
    let diff = 4.0 * w * nu / (b + (b * b + 4.0 * w * nu).sqrt());
    params.x0() / (2.0 * w) * diff
}

/// M_i = 2(ν + n_i) max{1, 1/N}, so that |R_μ(ξ)| < M_i/μ² for μ ∈ (0, 1).
pub fn const_m(kind: FilterKind, params: &MediumParams) -> f64 {
    let n_i = const_n(kind, params.alpha()).expect("validated params carry a valid alpha");
    2.0 * (params.nu() + n_i) * (1.0f64).max(1.0 / const_cap_n(params))
}

/// Ω(ξ) = (1+ξ²)^{−p/2} |1 − R_μ(ξ)/Λ(ξ)|.
///
/// The ratio R/Λ is the real damping factor, so the gap is evaluated in
/// closed form; `params` only fixes which operator is meant.
pub fn filter_factor_gap(kind: FilterKind, xi: f64, mu: f64, p: f64, _params: &MediumParams) -> f64 {
    (1.0 + xi * xi).powf(-p / 2.0) * kind.damping_gap(xi, mu)
}

/// max{μ^p, μ², μ^{p−2}}, the uniform bound on [`filter_factor_gap`].
pub fn gap_bound(mu: f64, p: f64) -> f64 {
    mu.powf(p).max(mu * mu).max(mu.powf(p - 2.0))
}

/// K_i · max{r^{2/(p+2)}, r^{p/(p+2)}, r^{(p−2)/(p+2)}} with r = δ/δ_M and
/// K_i = C + δ_M M_i.
///
/// For p = 2 the last exponent is zero and the bound does not shrink with δ.
pub fn error_bound(kind: FilterKind, c_bound: f64, reg: &RegParams, params: &MediumParams) -> f64 {
    let p = reg.p;
    let r = reg.delta / reg.delta_max;
    let k = c_bound + reg.delta_max * const_m(kind, params);
    let e = p + 2.0;
    k * r.powf(2.0 / e).max(r.powf(p / e)).max(r.powf((p - 2.0) / e))
}

/// g(x) = x/(1−e^{−x}) on (0, 1), 1/(1−e^{−x}) on [1, ∞); bounded by
/// 1/(1−e^{−1}) < 2. It gives 1/(1−e^{−N}) ≤ 2 max{1, 1/N}.
pub fn exp_denominator_ratio(x: f64) -> f64 {
    let denom = -(-x).exp_m1();
    if x < 1.0 {
        x / denom
    } else {
        1.0 / denom
    }
}
