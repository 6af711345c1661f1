//! Domain types shared by the calculators and simulators.

pub mod constants;
mod hamiltonian;
mod lattice;
mod schedule;
mod species;
mod state;

pub use constants::{debye_to_si, si_to_debye, EnergyUnit, PhysicalConstants};
pub use hamiltonian::{HamiltonianParams, Mode, OccupationCaps, Statistics};
pub use lattice::{DipoleRange, FieldSpec, LatticeSpec};
pub use schedule::{parse_angle, Axis, PulseSchedule, PulseStep};
pub use species::{MoleculeSpecies, SpeciesCatalog};
pub(crate) use state::l2_norm as state_norm;
pub use state::{bitstring, BasisTag, FockState, RegisterState, Sector, NORM_TOLERANCE};
