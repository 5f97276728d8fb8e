//! Bias sweeps and CSV output.

use std::io::Write;

use mzm_core::{compute_rates, cross_correlation_factor, steady_components, Lead};
use rayon::prelude::*;

use crate::config::SweepConfig;
use crate::error::{CliError, CliResult};

pub const CSV_HEADER: [&str; 17] = [
    "ev",
    "epsilon_m",
    "i_l_total",
    "i_r_total",
    "i_tilde_l",
    "i_tilde_r",
    "i1_a1_l",
    "i1_a2_l",
    "i1_a3_l",
    "i2_a1_l",
    "i2_a2_l",
    "i2_a3_l",
    "a",
    "b",
    "c_lr",
    "c_lr_over_gamma2",
    "big_gamma",
];

/// Steady observables at one `(eV, ε_M)` grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub ev: f64,
    pub epsilon_m: f64,
    pub i_l_total: f64,
    pub i_r_total: f64,
    pub i_tilde_l: f64,
    pub i_tilde_r: f64,
    pub i1_l: [f64; 3],
    pub i2_l: [f64; 3],
    pub a: f64,
    pub b: f64,
    pub c_lr: f64,
    pub big_gamma: f64,
}

impl SweepRow {
    /// `C_LR / γ²` with `γ` the mean of the four coupling strengths.
    pub fn c_lr_over_gamma2(&self) -> f64 {
        let gamma = self.big_gamma / 2.0;
        self.c_lr / (gamma * gamma)
    }

    pub fn values(&self) -> [f64; 17] {
        let [i1a1, i1a2, i1a3] = self.i1_l;
        let [i2a1, i2a2, i2a3] = self.i2_l;
        [
            self.ev,
            self.epsilon_m,
            self.i_l_total,
            self.i_r_total,
            self.i_tilde_l,
            self.i_tilde_r,
            i1a1,
            i1a2,
            i1a3,
            i2a1,
            i2a2,
            i2a3,
            self.a,
            self.b,
            self.c_lr,
            self.c_lr_over_gamma2(),
            self.big_gamma,
        ]
    }
}

pub fn evaluate_point(config: &SweepConfig, ev: f64, epsilon_m: f64) -> CliResult<SweepRow> {
    let rates = compute_rates(&config.device(ev, epsilon_m))?;
    let left = steady_components(&rates, Lead::Left)?;
    let right = steady_components(&rates, Lead::Right)?;
    let corr = cross_correlation_factor(&rates);
    Ok(SweepRow {
        ev,
        epsilon_m,
        i_l_total: left.total,
        i_r_total: right.total,
        i_tilde_l: corr.mean_left,
        i_tilde_r: corr.mean_right,
        i1_l: [left.first.a1, left.first.a2, left.first.a3],
        i2_l: [left.second.a1, left.second.a2, left.second.a3],
        a: corr.a,
        b: corr.b,
        c_lr: corr.c_lr,
        big_gamma: rates.big_gamma(),
    })
}

/// Evaluates every grid point in parallel; rows come back with `ε_M` as
/// the outer and `eV` as the inner loop.
pub fn run_sweep(config: &SweepConfig) -> CliResult<Vec<SweepRow>> {
    config.validate()?;
    let grid = config.bias_grid();
    let points: Vec<(f64, f64)> = config
        .epsilon_m_list
        .iter()
        .flat_map(|&eps| grid.iter().map(move |&ev| (ev, eps)))
        .collect();
    points
        .par_iter()
        .map(|&(ev, eps)| evaluate_point(config, ev, eps))
        .collect()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for row in rows {
        writer.write_record(row.values().iter().map(|v| format!("{v:.16e}")))?;
    }
    writer.flush()?;
    Ok(())
}

/// Runs the sweep and writes it to `config.out`, or to `stdout` if unset.
pub fn run_sweep_to_output(config: &SweepConfig) -> CliResult<usize> {
    let rows = run_sweep(config)?;
    match &config.out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
            write_csv(&rows, file).map_err(|e| CliError::io(path, e.into()))?;
        }
        None => {
            let stdout = std::io::stdout();
            write_csv(&rows, stdout.lock()).map_err(|e| CliError::io("<stdout>", e.into()))?;
        }
    }
    Ok(rows.len())
}
