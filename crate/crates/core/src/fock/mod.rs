//! Exact small-register simulation of the atom–molecule lattice Hamiltonian
//! in dimensionless units (ħ = 1).

mod basis;
mod evolve;
mod hamiltonian;
mod operator;
mod project;

pub use basis::{enumerate_basis, FockBasis, MAX_DIMENSION, MAX_SITES};
pub use evolve::{evolve_eig, evolve_stepped, ground_state, Spectrum};
pub use hamiltonian::build_hamiltonian;
pub(crate) use hamiltonian::diagonal_energy;
pub use operator::{HermitianOperator, HERMITIAN_TOLERANCE};
pub use project::{embed_qubit_state, encoded_indices, project_qubit_subspace};

pub(crate) use operator::fock_tag;
pub(crate) use project::bits;
