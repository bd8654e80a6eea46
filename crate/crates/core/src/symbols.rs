//! Frequency-domain symbols of the time-fractional convection-diffusion-reaction
//! equation
//!
//! ```text
//! D_t^α u = ω u_xx − β u_x − ν u + f(t),   x > 0, t > 0
//! u(x, 0) = 0,  u(0, t) = 0,  u bounded as x → ∞
//! ```
//!
//! with D_t^α the Caputo derivative of order 0 < α ≤ 1. Fourier transforming
//! in time turns the Caputo derivative into multiplication by (iξ)^α and the
//! PDE into a second-order ODE in x whose bounded solution is
//!
//! ```text
//! û(x, ξ) = G(x, ξ) f̂(ξ),   G(x, ξ) = (1 − e^{−h(ξ) x}) / z(ξ)
//! z(ξ) = ν + (iξ)^α,        h(ξ) = (−β + √(β² + 4ω z(ξ))) / (2ω)
//! ```
//!
//! Measuring u at x₀ gives f̂ = Λ ŷ with Λ(ξ) = 1 / G(x₀, ξ).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Complex value of a symbol at one frequency.
pub type ComplexValue = Complex64;

/// Coefficients of the PDE and the sensor position.
///
/// All of ω, β, ν, x₀ are strictly positive and 0 < α ≤ 1. ν = 0 is rejected:
/// with ν > 0 the real part of h is bounded away from zero, which keeps the
/// denominator of Λ away from zero at ξ = 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MediumParams {
    omega: f64,
    beta: f64,
    nu: f64,
    alpha: f64,
    x0: f64,
}

impl MediumParams {
    pub fn new(omega: f64, beta: f64, nu: f64, alpha: f64, x0: f64) -> Result<Self> {
        check_alpha(alpha)?;
        for (name, v) in [("omega", omega), ("beta", beta), ("x0", x0)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        if nu == 0.0 {
            return Err(Error::DegenerateParams(
                "nu = 0 makes the inverse symbol singular at xi = 0".into(),
            ));
        }
        if !(nu.is_finite() && nu > 0.0) {
            return Err(Error::Domain(format!("nu must be finite and > 0, got {nu}")));
        }
        Ok(Self {
            omega,
            beta,
            nu,
            alpha,
            x0,
        })
    }

    /// Discontinuous-source experiment: ω=0.1, β=0.9, ν=1, α=0.9, x₀=0.5.
    pub fn example1() -> Self {
        Self {
            omega: 0.1,
            beta: 0.9,
            nu: 1.0,
            alpha: 0.9,
            x0: 0.5,
        }
    }

    /// Continuous-source experiment: ω=0.01, β=0.5, ν=1.51, α=0.3, x₀=10.
    pub fn example2() -> Self {
        Self {
            omega: 0.01,
            beta: 0.5,
            nu: 1.51,
            alpha: 0.3,
            x0: 10.0,
        }
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// Copy with a different fractional order.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.omega, self.beta, self.nu, alpha, self.x0)
    }

    /// Copy with a different sensor position.
    pub fn with_x0(&self, x0: f64) -> Result<Self> {
        Self::new(self.omega, self.beta, self.nu, self.alpha, x0)
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "fractional order must lie in (0, 1], got {alpha}"
        )))
    }
}

/// (iξ)^α on the branch |ξ|^α (cos(απ/2) ± i sin(απ/2)), the sign following ξ.
///
/// Evaluated from the explicit cos/sin form rather than a generic complex
/// power so that negative frequencies land exactly on the conjugate.
pub fn frac_power(xi: f64, alpha: f64) -> Result<ComplexValue> {
    check_alpha(alpha)?;
    Ok(frac_power_unchecked(xi, alpha))
}

#[inline]
pub(crate) fn frac_power_unchecked(xi: f64, alpha: f64) -> ComplexValue {
    if xi == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let mag = xi.abs().powf(alpha);
    let (s, c) = (alpha * FRAC_PI_2).sin_cos();
    let w = Complex64::new(mag * c, mag * s);
    if xi > 0.0 {
        w
    } else {
        w.conj()
    }
}

/// z(ξ) = ν + (iξ)^α. Re z ≥ ν since cos(απ/2) ≥ 0.
pub fn sym_z(xi: f64, params: &MediumParams) -> ComplexValue {
    params.nu + frac_power_unchecked(xi, params.alpha)
}

/// h(ξ) = (−β + √(β² + 4ω z(ξ))) / (2ω) with the principal square root.
pub fn sym_h(xi: f64, params: &MediumParams) -> ComplexValue {
    h_from_z(sym_z(xi, params), params)
}

#[inline]
fn h_from_z(z: ComplexValue, params: &MediumParams) -> ComplexValue {
    let radicand = params.beta * params.beta + 4.0 * params.omega * z;
    // (√r − β)/(2ω) with the subtraction rationalized away
    2.0 * z / (radicand.sqrt() + params.beta)
}

/// Inverse operator Λ(ξ) = z(ξ) / (1 − e^{−h(ξ) x₀}), mapping ŷ to f̂.
pub fn inverse_symbol(xi: f64, params: &MediumParams) -> ComplexValue {
    let z = sym_z(xi, params);
    let h = h_from_z(z, params);
    z / one_minus_exp_neg(h * params.x0)
}

/// Forward kernel G(x, ξ) = (1 − e^{−h(ξ) x}) / z(ξ), so that û(x, ξ) = G f̂.
pub fn forward_kernel(x: f64, xi: f64, params: &MediumParams) -> Result<ComplexValue> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!(
            "position must be finite and >= 0, got {x}"
        )));
    }
    let z = sym_z(xi, params);
    let h = h_from_z(z, params);
    Ok(one_minus_exp_neg(h * x) / z)
}

/// 1 − e^{−w}, accurate for small |w|.
#[inline]
fn one_minus_exp_neg(w: ComplexValue) -> ComplexValue {
    if w.norm() < 1e-3 {
        // w − w²/2 + w³/6 − w⁴/24
        w * (1.0 - w * (0.5 - w * (1.0 / 6.0 - w / 24.0)))
    } else {
        1.0 - (-w).exp()
    }
}

/// Two-sided analytic envelope of |Λ(ξ)|.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Envelope {
    pub lower: f64,
    pub upper: f64,
}

/// Envelope lower ≤ |Λ(ξ)| ≤ upper:
///
/// ```text
/// lower = |(iξ)^α + ν| / (1 + e^{−(x₀/2ω) Re(−β + √(β² + 4ων + 4ω(iξ)^α))})
/// upper = (ν + |ξ|^α) / (1 − e^{−N}),   N = (x₀/2ω)(−β + √(β² + 4ων))
/// ```
pub fn lambda_envelope(xi: f64, params: &MediumParams) -> Envelope {
    let z = sym_z(xi, params);
    let h = h_from_z(z, params);
    let lower = z.norm() / (1.0 + (-h.re * params.x0).exp());
    let cap_n = crate::regularize::const_cap_n(params);
    let upper = (params.nu + xi.abs().powf(params.alpha)) / (-(-cap_n).exp_m1());
    Envelope { lower, upper }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: ComplexValue, b: ComplexValue, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn frac_power_examples() {
        assert_eq!(frac_power(0.0, 0.9).unwrap(), Complex64::new(0.0, 0.0));
        let w = frac_power(5.0, 1.0).unwrap();
        assert!(w.re.abs() < 1e-15 && (w.im - 5.0).abs() < 1e-14);
        assert_eq!(
            frac_power(-3.0, 0.5).unwrap(),
            frac_power(3.0, 0.5).unwrap().conj()
        );
        // cos(0.45π), sin(0.45π) to 30 digits
        let w = frac_power(1.0, 0.9).unwrap();
        assert!((w.re - 0.156_434_465_040_230_83).abs() < 1e-15);
        assert!((w.im - 0.987_688_340_595_137_73).abs() < 1e-15);
    }

    #[test]
    fn frac_power_rejects_bad_order() {
        for a in [0.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(frac_power(1.0, a), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn params_validation() {
        assert!(MediumParams::new(0.1, 0.9, 1.0, 0.9, 0.5).is_ok());
        assert!(matches!(
            MediumParams::new(0.1, 0.9, 0.0, 0.9, 0.5),
            Err(Error::DegenerateParams(_))
        ));
        assert!(MediumParams::new(-0.1, 0.9, 1.0, 0.9, 0.5).is_err());
        assert!(MediumParams::new(0.1, 0.0, 1.0, 0.9, 0.5).is_err());
        assert!(MediumParams::new(0.1, 0.9, 1.0, 0.0, 0.5).is_err());
        assert!(MediumParams::new(0.1, 0.9, 1.0, 0.9, f64::INFINITY).is_err());
        assert_eq!(
            MediumParams::new(0.1, 0.9, 1.0, 0.9, 0.5).unwrap(),
            MediumParams::example1()
        );
    }

    #[test]
    fn z_examples() {
        let p = MediumParams::example1();
        assert_eq!(sym_z(0.0, &p), Complex64::new(1.0, 0.0));
        let z = sym_z(1.0, &p);
        assert!((z.re - 1.156_434_465_040_230_8).abs() < 1e-15);
        assert!((z.im - 0.987_688_340_595_137_7).abs() < 1e-15);
        let p1 = p.with_alpha(1.0).unwrap();
        assert!(close(sym_z(2.5, &p1), Complex64::new(1.0, 2.5), 1e-15));
    }

    #[test]
    fn h_at_zero_is_exact() {
        // (−0.9 + √1.21) / 0.2 = 1
        let h = sym_h(0.0, &MediumParams::example1());
        assert!((h.re - 1.0).abs() < 1e-14 && h.im == 0.0);
    }

    #[test]
    fn inverse_symbol_and_kernel_at_zero() {
        let p = MediumParams::example1();
        let lam = inverse_symbol(0.0, &p);
        // 1 / (1 − e^{−0.5})
        assert!((lam.re - 2.541_494_082_536_798_3).abs() < 1e-13);
        assert_eq!(lam.im, 0.0);
        let g = forward_kernel(0.5, 0.0, &p).unwrap();
        assert!((g.re - 0.393_469_340_287_366_58).abs() < 1e-14);
        assert_eq!(forward_kernel(0.0, 3.0, &p).unwrap(), Complex64::new(0.0, 0.0));
        assert!(forward_kernel(-1.0, 3.0, &p).is_err());
    }

    #[test]
    fn envelope_at_zero_is_tight_on_top() {
        let p = MediumParams::example1();
        let env = lambda_envelope(0.0, &p);
        assert!((env.upper - 2.541_494_082_536_798_3).abs() < 1e-13);
        assert!((inverse_symbol(0.0, &p).norm() - env.upper).abs() < 1e-13);
        assert!(env.lower <= inverse_symbol(0.0, &p).norm());
    }

    #[test]
    fn envelope_upper_asymptotic_slope() {
        // upper/|ξ|^α → 1/(1 − e^{−N}) with N = 0.5 for example-1 parameters
        let p = MediumParams::example1();
        let limit = 1.0 / (1.0 - (-0.5f64).exp());
        let xi = 1e12;
        let ratio = lambda_envelope(xi, &p).upper / xi.powf(p.alpha());
        assert!((ratio - limit).abs() / limit < 1e-9);
    }

    #[test]
    fn diffusion_only_limit() {
        // ω = x₀ = 1 and β, ν → 0: Λ → (iξ)^α / (1 − e^{−(iξ)^{α/2}})
        let alpha = 0.7;
        let p = MediumParams::new(1.0, 1e-12, 1e-12, alpha, 1.0).unwrap();
        for xi in [-20.0, -1.0, 0.3, 2.0, 50.0] {
            let w = frac_power(xi, alpha).unwrap();
            let half = frac_power(xi, alpha / 2.0).unwrap();
            let expected = w / (1.0 - (-half).exp());
            assert!(close(inverse_symbol(xi, &p), expected, 1e-9), "xi = {xi}");
        }
    }
}
