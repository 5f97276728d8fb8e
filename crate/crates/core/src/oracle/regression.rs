//! Branch-current correlator by numerical quantum regression.
//!
//! This path does not use any of the closed forms in [`crate::currents`]
//! or [`crate::correlator`]. It works on an enlarged chain that remembers
//! which jump channel fired last:
//!
//! * every channel `c` fires at rate `Γ_c` regardless of the occupation
//!   (channels whose pre-state is not occupied act as self-loops), so the
//!   label populations obey `dP_c/dt = Γ_c W - ν P_c` with `ν = Σ_c Γ_c`
//!   and `W` the total weight;
//! * weight that has not jumped since `t = 0` sits in two "initial"
//!   labels `q0`, `q1`, decaying as `dq/dt = -ν q`.
//!
//! The marginal occupation of this chain is the ordinary two-state rate
//! equation. A current event at lead `α` counts toward the branch circuit
//! when it completes a Cooper-pair process with the preceding jump: a
//! normal-tunneling event following an Andreev-type jump, or an Andreev
//! event following a normal-tunneling jump, in either lead. Normal events
//! following normal events of the other lead are the direct transmission
//! that the branch circuit excludes. Weight still in the initial labels
//! contributes only through Andreev events.
//!
//! Conditioning on a right branch-current event moves the charge-weighted
//! flux of those pairings into the initial labels; the left branch current
//! of the propagated state minus the product of stationary means is the
//! correlator.

use crate::error::{Error, Result};
use crate::model::{Channel, ChannelKind, Lead, RateSet};

use super::ode::{propagate_linear, Generator};

const INITIAL: usize = 0;
const DIM: usize = 2 + Channel::ALL.len();

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Initial(u8),
    Last(Channel),
}

impl Label {
    fn index(self) -> usize {
        match self {
            Label::Initial(state) => INITIAL + state as usize,
            Label::Last(c) => 2 + c.index(),
        }
    }

    #[cfg(test)]
    fn state(self) -> u8 {
        match self {
            Label::Initial(state) => state,
            Label::Last(c) => c.post_state(),
        }
    }
}

/// `(jump, preceding label)` pairs that carry branch current at `lead`.
fn branch_pairings(lead: Lead) -> Vec<(Channel, Label)> {
    use ChannelKind::*;
    let (s, o) = (lead, lead.other());
    let ch = Channel::new;
    let mut pairs = Vec::with_capacity(10);
    for l in [s, o] {
        pairs.push((ch(s, NormalIn), Label::Last(ch(l, AndreevIn))));
        pairs.push((ch(s, NormalOut), Label::Last(ch(l, AndreevOut))));
        pairs.push((ch(s, AndreevIn), Label::Last(ch(l, NormalIn))));
        pairs.push((ch(s, AndreevOut), Label::Last(ch(l, NormalOut))));
    }
    pairs.push((ch(s, AndreevIn), Label::Initial(1)));
    pairs.push((ch(s, AndreevOut), Label::Initial(0)));
    pairs
}

fn branch_current(rates: &RateSet, lead: Lead, x: &[f64]) -> f64 {
    branch_pairings(lead)
        .into_iter()
        .map(|(jump, label)| f64::from(jump.charge()) * rates.rate(jump) * x[label.index()])
        .sum()
}

fn labelled_generator(rates: &RateSet) -> (Generator, f64) {
    let nu: f64 = Channel::ALL.iter().map(|&c| rates.rate(c)).sum();
    let mut m = Generator::zeros(DIM);
    for i in 0..DIM {
        m.add(i, i, -nu);
    }
    for c in Channel::ALL {
        let row = Label::Last(c).index();
        for col in 0..DIM {
            m.add(row, col, rates.rate(c));
        }
    }
    (m, nu)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionCorrelator {
    /// Conditional weights on `|0⟩`, `|1⟩` after the right-lead event.
    pub a: f64,
    pub b: f64,
    pub mean_left: f64,
    pub mean_right: f64,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

/// `S_LR(t)` on `t_grid` by propagating the conditioned labelled chain.
pub fn regression_correlator(rates: &RateSet, t_grid: &[f64]) -> Result<RegressionCorrelator> {
    let (generator, nu) = labelled_generator(rates);
    if !(nu > 0.0) {
        return Err(Error::DegenerateDynamics(
            "all jump rates vanish: no relaxation to regress".into(),
        ));
    }

    let mut stationary = vec![0.0; DIM];
    for c in Channel::ALL {
        stationary[Label::Last(c).index()] = rates.rate(c) / nu;
    }
    let mean_left = branch_current(rates, Lead::Left, &stationary);
    let mean_right = branch_current(rates, Lead::Right, &stationary);

    let mut conditioned = [0.0; DIM];
    for (jump, label) in branch_pairings(Lead::Right) {
        let flux = f64::from(jump.charge()) * rates.rate(jump) * stationary[label.index()];
        conditioned[Label::Initial(jump.post_state()).index()] += flux;
    }
    let (a, b) = (conditioned[0], conditioned[1]);
    let weight = a + b;

    // Propagate the deviation from the weight-scaled stationary state so
    // the decaying signal is not swamped by the constant background.
    let deviation: Vec<f64> = conditioned
        .iter()
        .zip(&stationary)
        .map(|(x, s)| x - weight * s)
        .collect();
    let background = mean_left * (weight - mean_right);
    let values = propagate_linear(&generator, &deviation, t_grid)?
        .iter()
        .map(|d| branch_current(rates, Lead::Left, d) + background)
        .collect();

    Ok(RegressionCorrelator {
        a,
        b,
        mean_left,
        mean_right,
        times: t_grid.to_vec(),
        values,
    })
}

/// Least-squares fit of `ln|S(t)| = ln|A| - k t`; returns `(k, A)`.
pub fn fit_decay_rate(times: &[f64], values: &[f64]) -> Result<(f64, f64)> {
    if times.len() != values.len() || times.len() < 2 {
        return Err(Error::InvalidParameter(
            "need at least two (time, value) pairs of equal length".into(),
        ));
    }
    let sign = values[0].signum();
    if values.iter().any(|v| *v == 0.0 || v.signum() != sign) {
        return Err(Error::InvalidParameter(
            "values must be nonzero and of one sign for a log-linear fit".into(),
        ));
    }
    let n = times.len() as f64;
    let mean_t = times.iter().sum::<f64>() / n;
    let logs: Vec<f64> = values.iter().map(|v| v.abs().ln()).collect();
    let mean_l = logs.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (t, l) in times.iter().zip(&logs) {
        sxy += (t - mean_t) * (l - mean_l);
        sxx += (t - mean_t) * (t - mean_t);
    }
    let slope = sxy / sxx;
    let amplitude = sign * (mean_l - slope * mean_t).exp();
    Ok((-slope, amplitude))
}
