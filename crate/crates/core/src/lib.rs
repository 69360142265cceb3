//! Linear-optical preparation of arbitrary three-qubit states.
//!
//! Three independent particles pass a ten-mode interferometer; keeping the
//! outcomes with one particle in each of three dual-rail pairs leaves any
//! desired three-qubit state with probability exactly `1/18`, for bosons,
//! fermions and hard-core anyons alike. The [`slocc`] module implements the
//! comparison point: filtering GHZ-class states out of `|GHZ>`, whose success
//! probability can be made arbitrarily small.
//!
//! - [`fock`]: creation-operator polynomials with parametric exchange statistics.
//! - [`oracle`]: permanent/determinant transition amplitudes.
//! - [`interferometer`]: the circuit stages as 10x10 unitaries.
//! - [`schmidt`]: the five-term canonical form of three-qubit states.
//! - [`protocol`]: parameter solution, evolution and post-selection.
//! - [`slocc`]: the GHZ-class filtering benchmark.
//! - [`harness`]: seeded Monte Carlo drivers.

pub mod error;
pub mod fock;
pub mod harness;
pub mod interferometer;
pub mod oracle;
pub mod protocol;
pub mod schmidt;
pub mod slocc;

pub use error::{Error, Result};
pub use fock::{ExchangeStatistics, FockBasisState, Monomial, OperatorPolynomial};
pub use protocol::{prepare, run, solve_params, PostSelectionResult, ProtocolParams, SUCCESS_PROBABILITY};
pub use schmidt::{decompose, random_state, reconstruct, CanonicalParams, ThreeQubitState};
pub use slocc::{ghz_class_state, slocc_operator, sweep, GhzClassParams, NormKind, SweepGrid};
