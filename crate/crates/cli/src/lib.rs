//! Command-line front end: configuration, bias sweeps with CSV output and
//! the invariant suite.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod sweep;
pub mod verify;

pub use config::{BiasMode, SweepConfig};
pub use error::{CliError, CliResult};
pub use sweep::{evaluate_point, run_sweep, run_sweep_to_output, write_csv, SweepRow, CSV_HEADER};
pub use verify::{run_verify, CheckOutcome, Status, VerifyOptions, VerifyReport};
