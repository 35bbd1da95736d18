//! Central-spin measurement model.
//!
//! A central spin-1/2 in a magnetic field is probed by N environment spins
//! that fly past it one at a time. The crate provides
//!
//! * [`exact`]: a dense state-vector oracle for small N,
//! * [`analytic`]: closed forms valid at any N (decoherence factor, reduced
//!   state, the global observable M with and without real-clock damping),
//! * [`limits`]: lower bounds on the angular precision of any spin-measuring
//!   device and how that error propagates into M and σ_x,
//! * [`undecidability`]: feasibility conditions, the K exponent, and the
//!   log-domain comparison deciding whether collapse and unitary evolution
//!   can be told apart.
//!
//! Units: configuration values are SI. Dynamics use ħ = 1 with spin operators
//! realized as Pauli matrices, so couplings and Zeeman terms are angular
//! frequencies (rad/s).

// `!(x > 0.0)` style checks are deliberate: NaN has to fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod config;
pub mod constants;
pub mod error;
pub mod exact;
pub mod limits;
pub mod logmag;
pub mod state;
pub mod undecidability;

pub use analytic::{BranchState, ClockParams};
pub use config::{EnvSpin, ExperimentConfig};
pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use exact::{CouplingMode, EvolveOptions, PairHamiltonian, StateVector};
pub use logmag::{log_exp_neg, log_pow, LogMagnitude};
pub use state::{DensityMatrix2, QubitState};
