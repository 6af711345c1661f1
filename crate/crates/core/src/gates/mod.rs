//! Qubit-level gates, Bell preparation, readout and pulse schedules.

mod bell;
mod entangle;
mod measure;
mod ops;
mod runner;
mod unitary;

pub use bell::{bell_prep, BellPreparation};
pub use entangle::{
    cross_ratio_phase, entangling_phase_from_fock, entangling_phase_from_operator,
    entangling_phase_qubit, phase_distance, wrap_phase,
};
pub use measure::{measure, shot_uniform, MeasurementRecord};
pub use ops::{
    apply_single, concurrence, fidelity, free_evolution, init_register, phase_gate, rx, rx_matrix,
    ry, ry_matrix, BellState, Matrix2, PairCoupling, MAX_QUBITS,
};
pub use runner::{run_schedule, Backend, RunReport};
pub use unitary::{apply_cnot, cnot, ideal_cnot, GateUnitary, UNITARY_TOLERANCE};
