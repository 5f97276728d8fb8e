//! Rate-equation model of a Majorana zero-mode pair tunnel-coupled to two
//! normal leads and grounded through a superconductor.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`] holds the device parameters and the eight tunneling rates
//!   obtained by folding lead Fermi functions with a Lorentzian level.
//! * [`populations`] solves the two-state occupation dynamics of the
//!   nonlocal `f` fermion.
//! * [`currents`] splits lead currents into local Andreev, crossed Andreev
//!   and direct transmission parts and builds the branch currents.
//! * [`correlator`] evaluates the quantum-jump construction of the
//!   left/right branch-current cross-correlator.
//! * [`oracle`] contains independent numerical routes (ODE propagation,
//!   a labelled-channel regression correlator, Gillespie trajectories)
//!   used to check the closed forms.
//!
//! Units: `hbar = e = k_B = 1`. Energies, rates and temperatures share one
//! user-chosen unit and currents come out in units of that rate.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correlator;
pub mod currents;
pub mod error;
pub mod model;
pub mod oracle;
pub mod populations;
pub mod quadrature;

pub use correlator::{
    correlator_spectrum, correlator_time_profile, cross_correlation_factor,
    jump_coefficients, jump_conditioned_left_current, steady_branch_means, CorrelatorResult,
    JumpCoefficients, JumpEvent,
};
pub use currents::{
    branch_current, integral_form_currents, lead_currents, steady_components,
    total_current_closed_form, transient_channel_currents, transport_coefficient, Components,
    CurrentDecomposition, LeadCurrents, TransportChannel,
};
pub use error::{Error, Result};
pub use model::{
    compute_rates, fermi_occupation, lorentzian_weight, Channel, ChannelKind, DeviceParams, Lead,
    LeadRates, RateSet,
};
pub use populations::{
    relaxation, steady_state, transient_populations, ChannelWeights, InitialCondition,
    Occupation, Populations,
};
