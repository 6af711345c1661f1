//! Simulation and parameter calculators for quantum computation with
//! diatomic-molecule qubits in a one-dimensional optical lattice.
//!
//! Each site holds either an atom pair (qubit `|0⟩`) or the heteronuclear
//! molecule they bind into (qubit `|1⟩`). Molecules on neighbouring sites
//! couple through their electric dipoles, which gives a conditional phase
//! gate; Raman pulses give single-qubit rotations.
//!
//! - [`model`]: domain types, constants, unit conversions.
//! - [`params`]: closed-form SI calculators (addressing frequencies, dipole
//!   couplings, gate rates) and their tables.
//! - [`fock`]: exact simulation of the atom–molecule lattice Hamiltonian.
//! - [`gates`]: qubit-level gates, measurement, and schedule execution.
//! - [`cli`]: the batch front-end behind the `diatomic` binary.

pub mod cli;
pub mod error;
pub mod fock;
pub mod gates;
pub mod model;
pub mod numfmt;
pub mod params;

pub use error::{Diagnostic, Error, Result};
