//! Lead currents and their decomposition.
//!
//! Each lead current is the sum of a "first electron" part `I^(1)` carried
//! by the normal rates and a "second electron" part `I^(2)` carried by the
//! Andreev rates. In the steady state each splits into three components:
//!
//! | component | `I^(1)` (normal tunneling)           | `I^(2)` (Andreev)                 |
//! |-----------|--------------------------------------|-----------------------------------|
//! | `a1`      | local Andreev reflection             | local Andreev reflection          |
//! | `a2`      | crossed Andreev reflection           | crossed Andreev reflection        |
//! | `a3`      | electron transmission between leads  | hole transmission between leads   |
//!
//! Positive current flows from the lead into the superconductor.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{DeviceParams, Lead, RateSet};
use crate::populations::{
    relaxation, steady_state, transient_populations, InitialCondition, Populations,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadCurrents {
    pub first: f64,
    pub second: f64,
}

impl LeadCurrents {
    pub fn total(&self) -> f64 {
        self.first + self.second
    }
}

/// `I^(1) = Γ^+ p0 - Γ^- p1`, `I^(2) = Γ̃^+ p1 - Γ̃^- p0`.
pub fn lead_currents(
    rates: &RateSet,
    pops: &Populations,
    lead: Lead,
) -> LeadCurrents {
    let r = rates.lead(lead);
    LeadCurrents {
        first: r.plus * pops.p0 - r.minus * pops.p1,
        second: r.tilde_plus * pops.p1 - r.tilde_minus * pops.p0,
    }
}

/// `I = Γ^+ - Γ̃^- - p1 (Γ^e - Γ^h)`, using the coupling strengths rather
/// than the rate sums.
pub fn total_current_closed_form(
    rates: &RateSet,
    pops: &Populations,
    lead: Lead,
) -> f64 {
    let r = rates.lead(lead);
    r.plus - r.tilde_minus - pops.p1 * (r.gamma_e - r.gamma_h)
}

/// Local Andreev, crossed Andreev and transmission components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Components {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl Components {
    pub fn sum(&self) -> f64 {
        self.a1 + self.a2 + self.a3
    }

    fn scaled(self, k: f64) -> Self {
        Self {
            a1: self.a1 * k,
            a2: self.a2 * k,
            a3: self.a3 * k,
        }
    }
}

/// Channel-resolved current of one lead.
///
/// `first`/`second` hold the steady-state-channel components of `I^(1)` and
/// `I^(2)` (already scaled by `G(t)` during transients); `first_b` and
/// `second_b` are the initial-channel currents, zero in the steady state.
/// `total` is evaluated directly from the populations, so the identity
/// `Σ parts = total` is a real check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentDecomposition {
    pub lead: Lead,
    pub first: Components,
    pub second: Components,
    pub first_b: f64,
    pub second_b: f64,
    pub total: f64,
}

impl CurrentDecomposition {
    pub fn sum_of_parts(&self) -> f64 {
        self.first.sum() + self.second.sum() + self.first_b + self.second_b
    }

    /// `Ĩ = I - I^(1)(A3) - I^(2)(A3)`.
    pub fn branch(&self) -> f64 {
        self.total - self.first.a3 - self.second.a3
    }

    /// The share of the branch current attributed to Andreev processes:
    /// local and crossed components of both electrons plus the
    /// initial-channel term of the second electron. The initial-channel
    /// normal-tunneling term `first_b` does not belong to the branch
    /// circuit, which is how the jump-conditioned correlator counts it.
    pub fn andreev_current(&self) -> f64 {
        self.first.a1 + self.first.a2 + self.second.a1 + self.second.a2 + self.second_b
    }
}

/// Steady-state components as products of rates.
pub fn steady_components(rates: &RateSet, lead: Lead) -> Result<CurrentDecomposition> {
    let pops = steady_state(rates)?;
    let (s, o) = (rates.lead(lead), rates.lead(lead.other()));
    let two_gamma = rates.r1() + rates.r2();
    let first = Components {
        a1: (s.plus * s.tilde_plus - s.minus * s.tilde_minus) / two_gamma,
        a2: (s.plus * o.tilde_plus - s.minus * o.tilde_minus) / two_gamma,
        a3: (s.plus * o.minus - s.minus * o.plus) / two_gamma,
    };
    let second = Components {
        a1: (s.tilde_plus * s.plus - s.tilde_minus * s.minus) / two_gamma,
        a2: (s.tilde_plus * o.plus - s.tilde_minus * o.minus) / two_gamma,
        a3: (s.tilde_plus * o.tilde_minus - s.tilde_minus * o.tilde_plus) / two_gamma,
    };
    Ok(CurrentDecomposition {
        lead,
        first,
        second,
        first_b: 0.0,
        second_b: 0.0,
        total: lead_currents(rates, &pops, lead).total(),
    })
}

/// Transport coefficient families; each is `Γ_a Γ_b / ((ω - ε_M)² + Γ²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransportChannel {
    /// Electron transmission `T^ee_{from,to}`: `Γ^e_from Γ^e_to`.
    Electron { from: Lead, to: Lead },
    /// Hole transmission `T^hh_{from,to}`: `Γ^h_from Γ^h_to`.
    Hole { from: Lead, to: Lead },
    /// Andreev reflection with the electron in one lead and the hole in
    /// another (local when equal): `Γ^e_electron Γ^h_hole`.
    Andreev { electron: Lead, hole: Lead },
}

impl TransportChannel {
    fn strength(self, params: &DeviceParams) -> f64 {
        match self {
            TransportChannel::Electron { from, to } => params.couplings(from).0 * params.couplings(to).0,
            TransportChannel::Hole { from, to } => params.couplings(from).1 * params.couplings(to).1,
            TransportChannel::Andreev { electron, hole } => {
                params.couplings(electron).0 * params.couplings(hole).1
            }
        }
    }
}

pub fn transport_coefficient(
    channel: TransportChannel,
    omega: f64,
    params: &DeviceParams,
) -> Result<f64> {
    params.validate()?;
    let g = params.big_gamma();
    let d = omega - params.epsilon_m;
    Ok(channel.strength(params) / (d * d + g * g))
}

/// `(1/2π) ∫_lo^hi T(ω) dω` in closed form.
fn window_current(channel: TransportChannel, lo: f64, hi: f64, params: &DeviceParams) -> f64 {
    if lo == hi {
        return 0.0;
    }
    let g = params.big_gamma();
    let eps = params.epsilon_m;
    let arc = ((hi - eps) / g).atan() - ((lo - eps) / g).atan();
    channel.strength(params) / g * arc / (2.0 * PI)
}

/// Steady components from zero-temperature bias-window integrals of the
/// transport coefficients.
pub fn integral_form_currents(params: &DeviceParams, lead: Lead) -> Result<CurrentDecomposition> {
    params.validate()?;
    if params.temperature > 0.0 {
        return Err(Error::Unsupported(
            "bias-window integral forms are defined only at T = 0".into(),
        ));
    }
    let (s, o) = (lead, lead.other());
    let (mu_s, mu_o) = (params.mu(s), params.mu(o));
    let local = window_current(
        TransportChannel::Andreev {
            electron: s,
            hole: s,
        },
        -mu_s,
        mu_s,
        params,
    );
    let first = Components {
        a1: local,
        a2: window_current(
            TransportChannel::Andreev {
                electron: s,
                hole: o,
            },
            -mu_o,
            mu_s,
            params,
        ),
        a3: window_current(TransportChannel::Electron { from: s, to: o }, mu_o, mu_s, params),
    };
    let second = Components {
        a1: local,
        a2: window_current(
            TransportChannel::Andreev {
                electron: o,
                hole: s,
            },
            -mu_s,
            mu_o,
            params,
        ),
        a3: window_current(TransportChannel::Hole { from: o, to: s }, -mu_s, -mu_o, params),
    };
    Ok(CurrentDecomposition {
        lead,
        first,
        second,
        first_b: 0.0,
        second_b: 0.0,
        total: first.sum() + second.sum(),
    })
}

/// Two-channel transient decomposition at time `t`.
///
/// Steady components are scaled by the steady channel's weight `W·G(t)`;
/// the initial channel of a state with weights `(a, b)` on `(|0⟩, |1⟩)`
/// carries `I^(1)(B) = (a Γ^+ - b Γ^-)(1 - G)` and
/// `I^(2)(B) = (b Γ̃^+ - a Γ̃^-)(1 - G)`.
pub fn transient_channel_currents(
    rates: &RateSet,
    init: InitialCondition,
    t: f64,
    lead: Lead,
) -> Result<CurrentDecomposition> {
    let start = init.populations()?;
    let steady = steady_components(rates, lead)?;
    let w = relaxation(t, rates.big_gamma())?;
    let r = rates.lead(lead);
    let scale = start.total() * w.steady;
    let pops = transient_populations(rates, init, t)?;
    Ok(CurrentDecomposition {
        lead,
        first: steady.first.scaled(scale),
        second: steady.second.scaled(scale),
        first_b: (start.p0 * r.plus - start.p1 * r.minus) * w.initial,
        second_b: (start.p1 * r.tilde_plus - start.p0 * r.tilde_minus) * w.initial,
        total: lead_currents(rates, &pops, lead).total(),
    })
}

/// Branch-circuit current `Ĩ = I - I^(1)(A3) - I^(2)(A3)`.
pub fn branch_current(decomp: &CurrentDecomposition) -> f64 {
    decomp.branch()
}
