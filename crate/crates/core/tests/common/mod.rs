#![allow(dead_code)]

use fracsrc::regularize::{
    const_m, const_n, exp_denominator_ratio, filter_factor_gap, filter_value, gap_bound, FilterKind,
};
use fracsrc::symbols::{inverse_symbol, lambda_envelope, MediumParams};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Relative rounding guard on the right-hand side of every inequality.
pub const GUARD: f64 = 1e-12;

pub const MU_GRID: [f64; 5] = [0.9, 0.5, 0.1, 0.01, 0.001];
pub const P_GRID: [f64; 5] = [0.5, 1.0, 2.0, 3.0, 5.0];

pub fn alpha_grid() -> Vec<f64> {
    (1..=10).map(|i| i as f64 / 10.0).collect()
}

/// `count` log-spaced points covering [lo, hi].
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Symmetric frequency grid: 0 and ± a log grid over [1e-3, 1e6].
pub fn xi_grid(count: usize) -> Vec<f64> {
    let pos = log_grid(1e-3, 1e6, count);
    let mut out = vec![0.0];
    out.extend(pos.iter().copied());
    out.extend(pos.iter().map(|x| -x));
    out
}

/// Randomized medium with every parameter spread over several decades.
pub fn random_params(rng: &mut impl Rng) -> MediumParams {
    let mut log_uniform = |lo: f64, hi: f64| (rng.random_range(lo.ln()..hi.ln())).exp();
    let omega = log_uniform(1e-3, 10.0);
    let beta = log_uniform(1e-3, 10.0);
    let nu = log_uniform(1e-3, 10.0);
    let x0 = log_uniform(1e-2, 20.0);
    let alpha = rng.random_range(0.05..=1.0);
    MediumParams::new(omega, beta, nu, alpha, x0).unwrap()
}

/// Example media followed by `extra` random draws from a fixed stream.
pub fn param_draws(extra: usize) -> Vec<MediumParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = vec![MediumParams::example1(), MediumParams::example2()];
    out.extend((0..extra).map(|_| random_params(&mut rng)));
    out
}

#[derive(Debug, Default)]
pub struct SuiteResult {
    pub checks: usize,
    pub violations: usize,
    /// Largest lhs/rhs ratio seen.
    pub worst: f64,
}

impl SuiteResult {
    fn record(&mut self, lhs: f64, rhs: f64, strict: bool) {
        self.checks += 1;
        let limit = rhs * (1.0 + GUARD);
        let ok = if strict { lhs < limit } else { lhs <= limit };
        if !ok || !lhs.is_finite() {
            self.violations += 1;
        }
        let ratio = lhs / rhs;
        if ratio > self.worst || ratio.is_nan() {
            self.worst = ratio;
        }
    }

    pub fn passed(&self) -> bool {
        self.checks > 0 && self.violations == 0
    }
}

/// ρ^α φ_μ(ρ) < n_i/μ².
pub fn damping_power_suite() -> SuiteResult {
    let mut res = SuiteResult::default();
    let rho = log_grid(1e-3, 1e6, 2000);
    for alpha in alpha_grid() {
        for kind in FilterKind::ALL {
            let n = const_n(kind, alpha).unwrap();
            for mu in MU_GRID {
                for &r in &rho {
                    res.record(r.powf(alpha) * kind.damping(r, mu), n / (mu * mu), true);
                }
            }
        }
    }
    res
}

/// μ²|R_μ(ξ)| < M_i.
pub fn filter_bound_suite(random_draws: usize, grid_points: usize) -> SuiteResult {
    let mut res = SuiteResult::default();
    let xi = xi_grid(grid_points);
    for params in param_draws(random_draws) {
        for kind in FilterKind::ALL {
            let m = const_m(kind, &params);
            for mu in MU_GRID {
                for &x in &xi {
                    res.record(mu * mu * filter_value(kind, x, mu, &params).norm(), m, true);
                }
            }
        }
    }
    res
}

/// Ω(ξ) ≤ max{μ^p, μ², μ^{p−2}}.
pub fn gap_suite() -> SuiteResult {
    let mut res = SuiteResult::default();
    let xi = xi_grid(2000);
    let params = MediumParams::example1();
    for p in P_GRID {
        for kind in FilterKind::ALL {
            for mu in MU_GRID {
                let bound = gap_bound(mu, p);
                for &x in &xi {
                    res.record(filter_factor_gap(kind, x, mu, p, &params), bound, false);
                }
            }
        }
    }
    res
}

/// lower ≤ |Λ(ξ)| ≤ upper.
pub fn envelope_suite(random_draws: usize, grid_points: usize) -> SuiteResult {
    let mut res = SuiteResult::default();
    let xi = xi_grid(grid_points);
    for params in param_draws(random_draws) {
        for &x in &xi {
            let env = lambda_envelope(x, &params);
            let lam = inverse_symbol(x, &params).norm();
            res.record(env.lower, lam, false);
            res.record(lam, env.upper, false);
        }
    }
    res
}

/// g(x) < 2 on a dense sample of (0, 50].
pub fn exp_ratio_suite() -> SuiteResult {
    let mut res = SuiteResult::default();
    let count = 100_000;
    for i in 1..=count {
        let x = 50.0 * i as f64 / count as f64;
        res.record(exp_denominator_ratio(x), 2.0, true);
    }
    for x in log_grid(1e-12, 1e-2, 200) {
        res.record(exp_denominator_ratio(x), 2.0, true);
    }
    res
}

/// |1/(1−e^{−z})| ≤ 1/(1−e^{−Re z}) and √(Re z) ≤ Re √z for Re z > 0.
pub fn complex_exp_suite(draws: usize) -> SuiteResult {
    let mut res = SuiteResult::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xe01e);
    for _ in 0..draws {
        let re = (rng.random_range((1e-6f64).ln()..(50.0f64).ln())).exp();
        let im = rng.random_range(-1e3..1e3);
        let z = Complex64::new(re, im);
        let lhs = (Complex64::new(1.0, 0.0) - (-z).exp()).inv().norm();
        res.record(lhs, 1.0 / -(-re).exp_m1(), false);
        res.record(re.sqrt(), z.sqrt().re, false);
    }
    res
}
