//! Coherent cross-talk from residually coupled idle qubits during a
//! cavity-mediated iSWAP gate.
//!
//! Four models of the gate error are provided and cross-checked:
//! the exact propagator on excitation-number sectors, a closed-form
//! second-order perturbative fidelity, a second-order Zassenhaus splitting,
//! and a mean-field model where idle qubits act as a random transverse field.
//! The [`scaling`] module turns the perturbative law into a maximum number of
//! idle qubits per resonator, and [`dispersive`] derives the dimensionless
//! couplings from physical qubit and cavity parameters.

pub mod block;
pub mod dispersive;
pub mod error;
pub mod fidelity;
pub mod hamiltonian;
pub mod hilbert;
mod linalg;
pub mod meanfield;
pub mod perturbation;
pub mod propagator;
pub mod quadrature;
pub mod scaling;
pub mod zassenhaus;

pub use block::BlockOperator;
pub use error::{Error, Result};
pub use fidelity::{report, FidelityReport, Method};
pub use hamiltonian::CouplingConfig;
pub use hilbert::{ExcitationSector, Register};
pub use perturbation::PerturbationCoefficients;
pub use scaling::ScalingSolution;

pub use linalg::CMat;
