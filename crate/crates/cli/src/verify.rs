//! Invariant suite run over every point of a sweep grid.

use std::fmt;

use mzm_core::oracle::{estimate_steady_observables, regression_correlator, simulate_trajectory};
use mzm_core::{
    compute_rates, cross_correlation_factor, integral_form_currents, lead_currents,
    steady_components, steady_state, total_current_closed_form, DeviceParams, Lead, LeadRates,
    RateSet,
};

use crate::config::SweepConfig;
use crate::error::{CliError, CliResult};

/// Allowed distance of a Monte Carlo estimate from its analytic value.
pub const MC_SIGMAS: f64 = 4.0;
const MC_BATCHES: usize = 40;
const ODE_POINTS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: Status,
    /// Largest residual seen; for the Monte Carlo check, the largest z-score.
    pub residual: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        };
        write!(f, "{tag:<7} {:<28}", self.name)?;
        if self.status != Status::Skipped {
            write!(f, " residual={:.3e} tol={:.1e}", self.residual, self.tolerance)?;
        }
        if !self.detail.is_empty() {
            write!(f, "  {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Largest residual among the deterministic checks that ran.
    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.status != Status::Skipped && c.name != "monte_carlo")
            .map(|c| c.residual)
            .fold(0.0, f64::max)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn into_result(self) -> CliResult<Self> {
        let failures: Vec<String> = self
            .checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.to_string())
            .collect();
        if failures.is_empty() {
            Ok(self)
        } else {
            Err(CliError::Invariant(failures.join("; ")))
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{} ({} checks, max residual {:.3e})",
            if self.passed() { "all checks passed" } else { "invariant failure" },
            self.checks.len(),
            self.max_residual()
        )
    }
}

/// Options that only the test harness should touch.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyOptions {
    /// Multiplies `Γ_L^+` without touching `Γ_L^e`, so rate-level and
    /// coupling-level expressions disagree.
    pub corrupt_rate: Option<f64>,
}

struct Accumulator {
    name: &'static str,
    tolerance: f64,
    worst: f64,
    at: String,
}

impl Accumulator {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            worst: 0.0,
            at: String::new(),
        }
    }

    fn record(&mut self, residual: f64, where_: impl FnOnce() -> String) {
        if residual > self.worst || residual.is_nan() {
            self.worst = residual;
            self.at = where_();
        }
    }

    fn finish(self) -> CheckOutcome {
        let pass = self.worst <= self.tolerance;
        CheckOutcome {
            name: self.name,
            status: if pass { Status::Pass } else { Status::Fail },
            residual: self.worst,
            tolerance: self.tolerance,
            detail: if pass { String::new() } else { self.at },
        }
    }
}

fn corrupt(rates: &RateSet, factor: f64) -> RateSet {
    let l = *rates.lead(Lead::Left);
    RateSet::from_lead_rates(
        LeadRates {
            plus: l.plus * factor,
            ..l
        },
        *rates.lead(Lead::Right),
    )
}

fn ode_residual(rates: &RateSet) -> CliResult<f64> {
    let g = rates.big_gamma();
    let ts: Vec<f64> = (0..ODE_POINTS)
        .map(|i| 3.0 / g * i as f64 / (ODE_POINTS - 1) as f64)
        .collect();
    let closed = cross_correlation_factor(rates);
    let reg = regression_correlator(rates, &ts)?;
    let scale = closed.c_lr.abs().max(1e-6 * g * g);
    let mut worst: f64 = 0.0;
    for (t, s) in ts.iter().zip(&reg.values) {
        worst = worst.max((s - closed.at(*t)?).abs() / scale);
    }
    Ok(worst)
}

fn monte_carlo(config: &SweepConfig) -> CliResult<CheckOutcome> {
    let name = "monte_carlo";
    let Some(duration) = config.mc_duration else {
        return Ok(CheckOutcome {
            name,
            status: Status::Skipped,
            residual: 0.0,
            tolerance: MC_SIGMAS,
            detail: "skipped: no mc_duration configured".into(),
        });
    };
    let params = config.device(config.ev_max, config.epsilon_m_list[0]);
    let rates = compute_rates(&params)?;
    let traj = simulate_trajectory(&rates, duration, config.seed)?;
    let stats = estimate_steady_observables(&traj, MC_BATCHES)?;
    let pops = steady_state(&rates)?;
    let mut acc = Accumulator::new(name, MC_SIGMAS);
    let z = |est: mzm_core::oracle::Estimate, expect: f64| {
        if est.std_err > 0.0 {
            est.z_score(expect)
        } else if est.mean == expect {
            0.0
        } else {
            f64::INFINITY
        }
    };
    acc.record(z(stats.occupancy, pops.p1), || "occupancy".into());
    for lead in Lead::BOTH {
        let expect = lead_currents(&rates, &pops, lead).total();
        acc.record(z(stats.current_at(lead), expect), || format!("current {lead}"));
    }
    let mut out = acc.finish();
    out.detail = format!(
        "{} jumps over t={duration} at eV={}, seed={}{}",
        stats.n_jumps,
        config.ev_max,
        config.seed,
        if out.detail.is_empty() { String::new() } else { format!(", worst: {}", out.detail) }
    );
    Ok(out)
}

/// Runs every check on the sweep grid of `config`.
pub fn run_verify(config: &SweepConfig, options: VerifyOptions) -> CliResult<VerifyReport> {
    config.validate()?;
    let mut rate_sums = Accumulator::new("rate_sums", 1e-12);
    let mut identity = Accumulator::new("total_current_identity", 1e-9);
    let mut reassembly = Accumulator::new("decomposition_reassembly", 1e-9);
    let mut integral = Accumulator::new("integral_vs_product", 1e-9);
    let mut weights = Accumulator::new("conditional_weight_sum", 1e-12);
    let mut ode = Accumulator::new("ode_vs_closed_correlator", 1e-8);

    for &eps in &config.epsilon_m_list {
        for ev in config.bias_grid() {
            let params: DeviceParams = config.device(ev, eps);
            let at = || format!("eV={ev}, epsilon_m={eps}");
            let mut rates = compute_rates(&params)?;
            if let Some(f) = options.corrupt_rate {
                rates = corrupt(&rates, f);
            }
            let g = rates.big_gamma();
            rate_sums.record(((rates.r1() + rates.r2()) - 2.0 * g).abs() / (2.0 * g), at);

            let pops = steady_state(&rates)?;
            for lead in Lead::BOTH {
                let channels = lead_currents(&rates, &pops, lead).total();
                let closed = total_current_closed_form(&rates, &pops, lead);
                identity.record((channels - closed).abs() / g, at);

                let prod = steady_components(&rates, lead)?;
                reassembly.record((prod.sum_of_parts() - prod.total).abs() / g, at);
                reassembly.record((prod.first.a1 - prod.second.a1).abs() / g, at);

                if params.temperature == 0.0 {
                    let int = integral_form_currents(&params, lead)?;
                    let pairs = [
                        (prod.first.a1, int.first.a1),
                        (prod.first.a2, int.first.a2),
                        (prod.first.a3, int.first.a3),
                        (prod.second.a1, int.second.a1),
                        (prod.second.a2, int.second.a2),
                        (prod.second.a3, int.second.a3),
                    ];
                    for (x, y) in pairs {
                        integral.record((x - y).abs() / g, at);
                    }
                }
            }

            let corr = cross_correlation_factor(&rates);
            weights.record((corr.a + corr.b - corr.mean_right).abs() / g, at);
            ode.record(ode_residual(&rates)?, at);
        }
    }

    let mut checks = vec![rate_sums.finish(), identity.finish(), reassembly.finish()];
    if config.temperature == 0.0 {
        checks.push(integral.finish());
    } else {
        checks.push(CheckOutcome {
            name: "integral_vs_product",
            status: Status::Skipped,
            residual: 0.0,
            tolerance: integral.tolerance,
            detail: "skipped: window integrals hold at T = 0 only".into(),
        });
    }
    checks.push(weights.finish());
    checks.push(ode.finish());
    checks.push(monte_carlo(config)?);
    Ok(VerifyReport { checks })
}
