//! Independent reference computations used to cross-check the closed forms.
//!
//! * [`ode`] integrates the population equations numerically.
//! * [`regression`] rebuilds the branch-current correlator from a labelled chain.
//! * [`trajectory`] samples the jump process directly.

pub mod ode;
pub mod regression;
pub mod trajectory;

pub use ode::{propagate_linear, propagate_ode, Generator};
pub use regression::{fit_decay_rate, regression_correlator, RegressionCorrelator};
pub use trajectory::{
    estimate_steady_observables, run_ensemble, simulate_trajectory, simulate_trajectory_from,
    Estimate, JumpRecord, Trajectory, TrajectoryStats, MIN_BATCHES,
};
