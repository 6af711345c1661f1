use num_complex::Complex64;

use super::basis::FockBasis;
use super::operator::fock_tag;
use crate::error::{Error, Result};
use crate::model::{BasisTag, FockState, RegisterState, Sector};

/// Fock-basis index of every computational state `q` (qubit 0 most
/// significant), for an `M`-site basis in sector `(M, M)`.
pub fn encoded_indices(basis: &FockBasis) -> Result<Vec<usize>> {
    let m = basis.num_sites();
    let want = Sector::new(m as u32, m as u32);
    if basis.sector() != Some(want) {
        return Err(Error::InvalidArgument(format!(
            "qubit encoding needs sector {want}, basis has {}",
            basis
                .sector()
                .map_or_else(|| "mixed or empty sectors".to_string(), |s| s.to_string())
        )));
    }
    (0..1usize << m)
        .map(|q| {
            let state = FockState::encoded(&bits(q, m));
            basis
                .index_of(&state)
                .ok_or_else(|| Error::InvalidArgument(format!("basis lacks encoded state {state}")))
        })
        .collect()
}

/// Bits of `q`, qubit 0 first.
pub(crate) fn bits(q: usize, n: usize) -> Vec<bool> {
    (0..n).map(|k| (q >> (n - 1 - k)) & 1 == 1).collect()
}

/// Restricts a Fock state to the encoded products `|110⟩ ↦ |0⟩`,
/// `|001⟩ ↦ |1⟩` and renormalizes. Returns the qubit state and the weight
/// left outside the encoding.
pub fn project_qubit_subspace(
    state: &RegisterState,
    basis: &FockBasis,
) -> Result<(RegisterState, f64)> {
    if state.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: state.dim(),
        });
    }
    let indices = encoded_indices(basis)?;
    let amps: Vec<Complex64> = indices.iter().map(|&i| state.amplitudes()[i]).collect();
    let captured: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    let leakage = (1.0 - captured).max(0.0);
    let qubits = RegisterState::normalized(amps, BasisTag::Qubits(basis.num_sites()))
        .map_err(|_| Error::Regime("state has no weight in the encoded qubit subspace".into()))?;
    Ok((qubits, leakage))
}

/// Inverse of [`project_qubit_subspace`] for states without leakage.
pub fn embed_qubit_state(state: &RegisterState, basis: &FockBasis) -> Result<RegisterState> {
    let n = basis.num_sites();
    if state.num_qubits() != Some(n) {
        return Err(Error::InvalidArgument(format!(
            "expected a {n}-qubit state for a {n}-site basis"
        )));
    }
    let indices = encoded_indices(basis)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); basis.dim()];
    for (q, &i) in indices.iter().enumerate() {
        amps[i] = state.amplitudes()[q];
    }
    RegisterState::new(amps, fock_tag(basis))
}
