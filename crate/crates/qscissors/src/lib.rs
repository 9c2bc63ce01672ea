//! Nonlinear quantum scissors in a three-mode Kerr coupler.
//!
//! Three bosonic modes with Kerr nonlinearities and weak photon-exchange
//! coupling truncate their own dynamics onto the lowest Fock levels: the
//! Kerr terms detune every multi-photon state, so a single injected photon
//! oscillates among |001>, |010>, |100> and periodically forms a tripartite
//! W state. Adding weak classical drives on each mode populates the rest of
//! the {0,1}^3 qubit cube instead.
//!
//! The crate provides
//!
//! * [`fock`]: basis bookkeeping for the truncated three-mode space;
//! * [`hamiltonian`]: sparse assembly of the coupler Hamiltonian;
//! * [`propagator`]: spectral time evolution plus an independent RK4
//!   integrator used as a cross-check;
//! * [`truncated`]: the {0,1}^3 qubit model with its closed-form
//!   solutions and the W-state time formula;
//! * [`analysis`]: probabilities, leakage, and fidelity metrics;
//! * [`config`] and [`scenario`]: the CLI layer with flat key-value
//!   configs, scenario execution, and CSV output.

pub mod analysis;
pub mod config;
pub mod error;
pub mod fock;
pub mod hamiltonian;
pub mod propagator;
pub mod scenario;
pub mod truncated;

pub use analysis::{Observable, TargetKind, TargetState};
pub use config::{parse_config, RunConfig, Scenario};
pub use error::{Error, Result};
pub use fock::{FockIndex, StateVector};
pub use hamiltonian::{HamiltonianMatrix, SystemParams};
pub use propagator::{SpectralPropagator, Trajectory, TrajectoryRecord};
pub use truncated::{Drives, QubitAmplitudes};
