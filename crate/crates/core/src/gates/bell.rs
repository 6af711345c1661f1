use std::f64::consts::{FRAC_PI_2, PI};

use super::ops::{concurrence, init_register, phase_gate, ry, BellState};
use crate::error::Result;
use crate::model::RegisterState;

/// The three intermediate states of Bell preparation and what came out.
#[derive(Debug, Clone, PartialEq)]
pub struct BellPreparation {
    /// After `Ry(π/2)` on both qubits.
    pub after_pulse: RegisterState,
    /// After the π phase gate.
    pub after_phase: RegisterState,
    /// After `Ry(π/2)` on qubit 0.
    pub output: RegisterState,
    pub identity: BellState,
    pub fidelity: f64,
    pub concurrence: f64,
}

/// Prepares a Bell state from `|00⟩`: a simultaneous π/2 pulse on both
/// qubits, a π phase gate, then a π/2 pulse on the first qubit.
///
/// With the `Ry` convention of [`ry`](super::ry) this lands on
/// `(|01⟩ + |10⟩)/√2`; the result reports which Bell state it is rather than
/// assuming one.
pub fn bell_prep() -> Result<BellPreparation> {
    let start = init_register(2)?;
    let after_pulse = ry(&ry(&start, 0, FRAC_PI_2)?, 1, FRAC_PI_2)?;
    let after_phase = phase_gate(&after_pulse, (0, 1), PI)?;
    let output = ry(&after_phase, 0, FRAC_PI_2)?;
    let (identity, fidelity) = BellState::closest(&output)?;
    let concurrence = concurrence(&output)?;
    Ok(BellPreparation {
        after_pulse,
        after_phase,
        output,
        identity,
        fidelity,
        concurrence,
    })
}
