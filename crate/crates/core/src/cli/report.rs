//! Sweep execution and CSV output.
//!
//! Every (ε, seed) cell is independent. The noise stream of a cell depends on
//! the master seed and the cell's seed only, so every ε of one seed scales the
//! same standard-normal draws and results do not depend on scheduling.
//!
//! Output files, all with a one-line header and floats written with 17
//! significant digits:
//!
//! * `errors.csv`: `epsilon,seed,filter,mu,delta,delta_max,rel_err,theory_bound`
//!   with one row per (ε, seed, estimator); naive rows leave `mu` and
//!   `theory_bound` empty.
//! * `summary.csv`: `epsilon` followed by one seed-averaged column per
//!   requested estimator, in the order r1, r2, r3, naive.
//! * `signals_<eps>_<seed>.csv`: `t,f_true,y,y_noisy,f_naive,f_r1,f_r2,f_r3`.

use rayon::prelude::*;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::cli::config::{ExperimentConfig, SourceSpec};
use crate::cli::presets::preset_source;
use crate::error::{Error, Result};
use crate::pipeline::{
    add_noise, delta_max_rule, effective_delta, invert_naive, invert_with_mu, relative_error,
    synthesize_data, ErrorRow, Estimator, NoiseSpec,
};
use crate::regularize::{choose_mu, error_bound, FilterKind, RegParams};
use crate::spectral::{dft, hp_norm, RealSignal};

/// Sample-wise dump of one cell.
#[derive(Clone, Debug)]
pub struct SignalDump {
    pub epsilon: f64,
    pub seed: u64,
    pub f_true: RealSignal,
    pub y: RealSignal,
    pub y_noisy: RealSignal,
    pub f_naive: RealSignal,
    /// Estimates for r1, r2, r3 in that order.
    pub f_filtered: [RealSignal; 3],
}

/// Seed-averaged relative errors at one noise deviation.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub epsilon: f64,
    /// Aligned with [`ErrorReport::summary_columns`].
    pub mean_rel_err: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct ErrorReport {
    pub rows: Vec<ErrorRow>,
    pub summary_columns: Vec<Estimator>,
    pub summary: Vec<SummaryRow>,
    /// ‖f‖_{H^p} of the true source when the bound was evaluated.
    pub c_bound: Option<f64>,
    pub signals: Vec<SignalDump>,
}

impl ErrorReport {
    /// Seed-averaged error of `est` at the `eps_index`-th noise deviation.
    pub fn mean(&self, eps_index: usize, est: Estimator) -> Option<f64> {
        let col = self.summary_columns.iter().position(|c| *c == est)?;
        self.summary.get(eps_index).map(|r| r.mean_rel_err[col])
    }

    /// All rows of one estimator at one noise deviation.
    pub fn rows_for(&self, epsilon: f64, est: Estimator) -> impl Iterator<Item = &ErrorRow> {
        self.rows
            .iter()
            .filter(move |r| r.epsilon == epsilon && r.estimator == est)
    }
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Noise-stream seed of a cell.
pub fn derive_seed(master_seed: u64, seed: u64) -> u64 {
    mix(master_seed ^ mix(seed))
}

/// Source signal of a config on its padded grid.
pub fn true_source(cfg: &ExperimentConfig) -> Result<RealSignal> {
    let base = cfg.base_grid()?;
    let f = match &cfg.source {
        SourceSpec::Preset(id) => return Ok(preset_source(*id, &cfg.grid()?)),
        SourceSpec::Samples(s) => RealSignal::new(base, s.clone())?,
    };
    f.zero_padded(cfg.pad)
}

struct Cell {
    rows: Vec<ErrorRow>,
    dump: Option<SignalDump>,
}

/// Runs the sweep without touching the file system.
pub fn compute_report(cfg: &ExperimentConfig) -> Result<ErrorReport> {
    cfg.validate()?;
    let params = cfg.params;
    let f_true = true_source(cfg)?;
    let y = synthesize_data(&f_true, &params)?;
    let c_bound = if cfg.theory_bound {
        Some(hp_norm(&dft(&f_true), cfg.p)?)
    } else {
        None
    };

    let mut estimators = vec![Estimator::Naive];
    estimators.extend(cfg.filters.iter().copied().filter(|e| *e != Estimator::Naive));

    let cells: Vec<(f64, u64)> = cfg
        .eps_list
        .iter()
        .flat_map(|&eps| cfg.seeds.iter().map(move |&seed| (eps, seed)))
        .collect();

    let results: Vec<Cell> = cells
        .par_iter()
        .map(|&(epsilon, seed)| {
            let noise = NoiseSpec::new(epsilon, derive_seed(cfg.master_seed, seed))?;
            let (y_noisy, delta) = add_noise(&y, &noise)?;
            let delta_eff = effective_delta(delta);
            let delta_max = delta_max_rule(delta_eff);
            if !(delta_eff < delta_max) {
                return Err(Error::Invariant(format!("delta {delta_eff} >= delta_max {delta_max}")));
            }
            let mu = choose_mu(delta_eff, delta_max, cfg.p)?;
            let f_naive = invert_naive(&y_noisy, &params)?;
            let f_filtered = [
                invert_with_mu(&y_noisy, &params, FilterKind::Rational2, mu)?,
                invert_with_mu(&y_noisy, &params, FilterKind::Rational4, mu)?,
                invert_with_mu(&y_noisy, &params, FilterKind::Gaussian, mu)?,
            ];
            let reg = RegParams::from_noise(delta_eff, delta_max, cfg.p)?;

            let mut rows = Vec::with_capacity(estimators.len());
            for est in &estimators {
                let (estimate, mu_col, bound) = match est {
                    Estimator::Naive => (&f_naive, None, None),
                    Estimator::Filter(kind) => {
                        let idx = FilterKind::ALL.iter().position(|k| k == kind).expect("known filter");
                        let bound = c_bound.map(|c| error_bound(*kind, c, &reg, &params));
                        (&f_filtered[idx], Some(mu), bound)
                    }
                };
                let rel_err = relative_error(estimate, &f_true)?;
                if !(rel_err.is_finite() && rel_err >= 0.0) {
                    return Err(Error::Invariant(format!("non-finite relative error for {est} at eps={epsilon}, seed={seed}")));
                }
                if let (Some(b), Some(c)) = (bound, c_bound) {
                    let abs_err = rel_err * crate::spectral::l2_norm(&f_true);
                    if abs_err > b {
                        return Err(Error::Invariant(format!(
                            "error {abs_err:e} exceeds bound {b:e} for {est} at eps={epsilon}, seed={seed} (C={c:e})"
                        )));
                    }
                }
                rows.push(ErrorRow {
                    epsilon,
                    seed,
                    estimator: *est,
                    mu: mu_col,
                    delta,
                    delta_max,
                    rel_err,
                    theory_bound: bound,
                });
            }
            let dump = cfg.write_signals.then(|| SignalDump {
                epsilon,
                seed,
                f_true: f_true.clone(),
                y: y.clone(),
                y_noisy,
                f_naive,
                f_filtered,
            });
            Ok(Cell { rows, dump })
        })
        .collect::<Result<_>>()?;

    let mut summary_columns: Vec<Estimator> = cfg
        .filters
        .iter()
        .copied()
        .filter(|e| *e != Estimator::Naive)
        .collect();
    if cfg.filters.contains(&Estimator::Naive) {
        summary_columns.push(Estimator::Naive);
    }

    let mut rows = Vec::new();
    let mut signals = Vec::new();
    for cell in results {
        rows.extend(cell.rows);
        signals.extend(cell.dump);
    }

    let summary = cfg
        .eps_list
        .iter()
        .map(|&epsilon| {
            let mean_rel_err = summary_columns
                .iter()
                .map(|est| {
                    let (sum, count) = rows
                        .iter()
                        .filter(|r| r.epsilon == epsilon && r.estimator == *est)
                        .fold((0.0, 0usize), |(s, c), r| (s + r.rel_err, c + 1));
                    sum / count as f64
                })
                .collect();
            SummaryRow {
                epsilon,
                mean_rel_err,
            }
        })
        .collect();

    Ok(ErrorReport {
        rows,
        summary_columns,
        summary,
        c_bound,
        signals,
    })
}

/// 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

pub const ERRORS_HEADER: &str = "epsilon,seed,filter,mu,delta,delta_max,rel_err,theory_bound";
pub const SIGNALS_HEADER: &str = "t,f_true,y,y_noisy,f_naive,f_r1,f_r2,f_r3";

pub fn errors_csv(report: &ErrorReport) -> String {
    let mut out = String::new();
    writeln!(out, "{ERRORS_HEADER}").unwrap();
    for r in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            fmt_float(r.epsilon),
            r.seed,
            r.estimator,
            fmt_opt(r.mu),
            fmt_float(r.delta),
            fmt_float(r.delta_max),
            fmt_float(r.rel_err),
            fmt_opt(r.theory_bound)
        )
        .unwrap();
    }
    out
}

pub fn summary_csv(report: &ErrorReport) -> String {
    let mut out = String::from("epsilon");
    for est in &report.summary_columns {
        out.push(',');
        out.push_str(est.label());
    }
    out.push('\n');
    for row in &report.summary {
        out.push_str(&fmt_float(row.epsilon));
        for v in &row.mean_rel_err {
            out.push(',');
            out.push_str(&fmt_float(*v));
        }
        out.push('\n');
    }
    out
}

pub fn signals_csv(dump: &SignalDump) -> String {
    let mut out = String::new();
    writeln!(out, "{SIGNALS_HEADER}").unwrap();
    let grid = dump.f_true.grid();
    let cols = [
        dump.f_true.samples(),
        dump.y.samples(),
        dump.y_noisy.samples(),
        dump.f_naive.samples(),
        dump.f_filtered[0].samples(),
        dump.f_filtered[1].samples(),
        dump.f_filtered[2].samples(),
    ];
    for (k, t) in grid.times().enumerate() {
        out.push_str(&fmt_float(t));
        for col in &cols {
            out.push(',');
            out.push_str(&fmt_float(col[k]));
        }
        out.push('\n');
    }
    out
}

/// `signals_<eps>_<seed>.csv` with ε in shortest exponent form, e.g. `1e-3`.
pub fn signals_file_name(epsilon: f64, seed: u64) -> String {
    format!("signals_{epsilon:e}_{seed}.csv")
}

pub fn write_report(report: &ErrorReport, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("errors.csv"), errors_csv(report))?;
    fs::write(dir.join("summary.csv"), summary_csv(report))?;
    for dump in &report.signals {
        fs::write(
            dir.join(signals_file_name(dump.epsilon, dump.seed)),
            signals_csv(dump),
        )?;
    }
    Ok(())
}

/// Runs the sweep and, when `out_dir` is set, writes the CSV files.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ErrorReport> {
    let report = compute_report(cfg)?;
    if let Some(dir) = &cfg.out_dir {
        write_report(&report, dir)?;
    }
    Ok(report)
}
