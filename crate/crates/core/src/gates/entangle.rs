use std::f64::consts::PI;

use num_complex::Complex64;

use super::ops::{free_evolution, PairCoupling};
use crate::error::{Error, Result};
use crate::fock::{
    build_hamiltonian, encoded_indices, enumerate_basis, fock_tag, FockBasis, HermitianOperator,
    Spectrum,
};
use crate::model::{BasisTag, HamiltonianParams, RegisterState, Sector};

/// Wraps an angle into `(-π, π]`.
pub fn wrap_phase(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    wrap_phase(a - b).abs()
}

/// `arg(A₀₀ A₁₁ / (A₀₁ A₁₀))` from the diagonal return amplitudes of the four
/// computational states. Single-qubit phases cancel in the ratio.
pub fn cross_ratio_phase(diag: [Complex64; 4]) -> Result<f64> {
    let [a00, a01, a10, a11] = diag;
    let denom = a01 * a10;
    if denom.norm() < 1e-300 || (a00 * a11).norm() < 1e-300 {
        return Err(Error::Regime(
            "computational states do not return to themselves; the evolution is not diagonal"
                .into(),
        ));
    }
    Ok((a00 * a11 / denom).arg())
}

/// Entangling phase of evolving for time `t` under `h`, a Hamiltonian on a
/// two-site basis in sector (2, 2).
pub fn entangling_phase_from_operator(
    h: &HermitianOperator,
    basis: &FockBasis,
    t: f64,
) -> Result<f64> {
    if basis.num_sites() != 2 {
        return Err(Error::InvalidArgument(
            "entangling phase needs a two-site basis".into(),
        ));
    }
    if h.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: h.dim(),
        });
    }
    let spectrum = Spectrum::new(h)?;
    let indices = encoded_indices(basis)?;
    let mut diag = [Complex64::new(0.0, 0.0); 4];
    for (q, &i) in indices.iter().enumerate() {
        let psi = RegisterState::basis_vector(i, fock_tag(basis))?;
        diag[q] = spectrum.evolve(&psi, t)?.amplitudes()[i];
    }
    cross_ratio_phase(diag)
}

/// Entangling phase accumulated by free evolution of the full two-site
/// Fock model for time `t` (dimensionless). Its magnitude equals `D₁₂ t`
/// modulo 2π; the sign follows `exp(-iHt)`, so it is `-D₁₂ t` wrapped.
///
/// Only the free-evolution regime is accepted: all tunneling and Raman
/// couplings must vanish.
pub fn entangling_phase_from_fock(params: &HamiltonianParams, t: f64) -> Result<f64> {
    if params.num_sites() != 2 {
        return Err(Error::InvalidArgument(format!(
            "entangling phase is defined on two sites, params have {}",
            params.num_sites()
        )));
    }
    check_free_regime(params)?;
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "time must be finite, got {t}"
        )));
    }
    let caps = params.effective_caps(2, 2);
    let basis = enumerate_basis(2, Sector::new(2, 2), caps)?;
    let h = build_hamiltonian(params, &basis)?;
    entangling_phase_from_operator(&h, &basis, t)
}

pub(crate) fn check_free_regime(params: &HamiltonianParams) -> Result<()> {
    if params.tunneling.iter().any(|&t| t != 0.0) {
        return Err(Error::Regime(format!(
            "tunneling {:?} is nonzero; the phase-gate model assumes t_a = t_b = t_c = 0",
            params.tunneling
        )));
    }
    if let Some((i, w)) = params.rabi.iter().enumerate().find(|(_, &w)| w != 0.0) {
        return Err(Error::Regime(format!(
            "Raman coupling on site {i} is {w}; free evolution needs all couplings off"
        )));
    }
    Ok(())
}

/// The same cross-ratio on the ideal qubit model.
pub fn entangling_phase_qubit(couplings: &[PairCoupling], t: f64) -> Result<f64> {
    let mut diag = [Complex64::new(0.0, 0.0); 4];
    for (q, d) in diag.iter_mut().enumerate() {
        let psi = RegisterState::basis_vector(q, BasisTag::Qubits(2))?;
        *d = free_evolution(&psi, couplings, t)?.amplitudes()[q];
    }
    cross_ratio_phase(diag)
}
