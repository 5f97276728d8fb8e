//! Two-state occupation dynamics of the `f` fermion.
//!
//! With excitation rate `r1` and deexcitation rate `r2`, every solution
//! relaxes at the single rate `r1 + r2 = 2Γ`. Written as two channels,
//!
//! ```text
//! p(t) = W · p̄ · G(t) + p(0) · [1 - G(t)],   G(t) = 1 - exp(-2Γt),
//! ```
//!
//! where `W` is the total initial weight: the steady-state channel fills
//! in while the initial-occupation channel decays.

use crate::error::{invalid, Error, Result};
use crate::model::RateSet;

/// Occupation number of the `f` fermion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Occupation {
    Empty,
    Occupied,
}

/// Diagonal density matrix `p0 |0⟩⟨0| + p1 |1⟩⟨1|`.
///
/// Normalised except when produced from an unnormalised
/// [`InitialCondition::Mixed`] state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Populations {
    pub p0: f64,
    pub p1: f64,
}

impl Populations {
    pub fn new(p0: f64, p1: f64) -> Self {
        Self { p0, p1 }
    }

    pub fn total(&self) -> f64 {
        self.p0 + self.p1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialCondition {
    Empty,
    Occupied,
    /// Weights on `|0⟩` and `|1⟩`; need not sum to one and may be negative
    /// (the jump-conditioned state of the correlator is of this kind).
    Mixed { empty: f64, occupied: f64 },
}

impl InitialCondition {
    pub fn populations(&self) -> Result<Populations> {
        match *self {
            InitialCondition::Empty => Ok(Populations::new(1.0, 0.0)),
            InitialCondition::Occupied => Ok(Populations::new(0.0, 1.0)),
            InitialCondition::Mixed { empty, occupied } => {
                if !empty.is_finite() || !occupied.is_finite() {
                    return Err(invalid(format!(
                        "mixed initial weights must be finite, got ({empty}, {occupied})"
                    )));
                }
                Ok(Populations::new(empty, occupied))
            }
        }
    }
}

impl From<Occupation> for InitialCondition {
    fn from(o: Occupation) -> Self {
        match o {
            Occupation::Empty => InitialCondition::Empty,
            Occupation::Occupied => InitialCondition::Occupied,
        }
    }
}

/// Weights of the steady-state channel `G(t)` and of the initial channel
/// `1 - G(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelWeights {
    pub steady: f64,
    pub initial: f64,
}

pub fn relaxation(t: f64, big_gamma: f64) -> Result<ChannelWeights> {
    if !(t >= 0.0) {
        return Err(invalid(format!("time must be >= 0, got {t}")));
    }
    if !(big_gamma >= 0.0) || !big_gamma.is_finite() {
        return Err(invalid(format!("broadening must be >= 0, got {big_gamma}")));
    }
    let x = -2.0 * big_gamma * t;
    Ok(ChannelWeights {
        steady: -x.exp_m1(),
        initial: x.exp(),
    })
}

/// Stationary populations `p̄1 = r1/(r1 + r2)`, `p̄0 = r2/(r1 + r2)`.
pub fn steady_state(rates: &RateSet) -> Result<Populations> {
    let total = rates.r1() + rates.r2();
    if !(total > 0.0) {
        return Err(Error::DegenerateDynamics(
            "r1 + r2 = 0: no transitions, stationary state undefined".into(),
        ));
    }
    Ok(Populations::new(rates.r2() / total, rates.r1() / total))
}

/// Closed-form populations at time `t` for the given initial condition.
pub fn transient_populations(
    rates: &RateSet,
    init: InitialCondition,
    t: f64,
) -> Result<Populations> {
    let start = init.populations()?;
    let total_rate = rates.r1() + rates.r2();
    let w = relaxation(t, 0.5 * total_rate)?;
    if total_rate == 0.0 {
        return Ok(start);
    }
    let weight = start.total();
    let steady = steady_state(rates)?;
    Ok(Populations::new(
        weight * steady.p0 * w.steady + start.p0 * w.initial,
        weight * steady.p1 * w.steady + start.p1 * w.initial,
    ))
}
