use std::collections::BTreeMap;

use num_complex::Complex64;

use super::basis::FockBasis;
use super::operator::{fock_tag, HermitianOperator};
use crate::error::{Error, Result};
use crate::model::{FockState, HamiltonianParams, Mode};

/// Assembles the atom–molecule lattice Hamiltonian on `basis`:
///
/// ```text
/// H = -Σ_<ij> Σ_κ t_κ (κ_i⁺ κ_j + h.c.)
///     + Σ_i Ω_i (e^{iφ_i} c_i⁺ a_i b_i + e^{-iφ_i} a_i⁺ b_i⁺ c_i)
///     + Σ_(ij) D_ij n_ci n_cj
///     + Σ_i Σ_κ U_κκ n_κi (n_κi - 1) / 2
///     + Σ_i (U_ab n_a n_b + U_ac n_a n_c + U_bc n_b n_c)
/// ```
///
/// The chain is open. Hops or conversions that leave the basis (because a
/// cap would be exceeded) are dropped.
pub fn build_hamiltonian(
    params: &HamiltonianParams,
    basis: &FockBasis,
) -> Result<HermitianOperator> {
    params.ensure_valid()?;
    if basis.is_empty() {
        return Err(Error::InvalidArgument("basis is empty".into()));
    }
    let m = params.num_sites();
    if basis.num_sites() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: basis.num_sites(),
        });
    }
    for state in basis.states() {
        let sector = state.sector();
        let caps = params.effective_caps(sector.q1, sector.q2);
        if !state.within(&caps) {
            return Err(Error::InvalidArgument(format!(
                "basis state {state} exceeds occupation caps {caps:?}"
            )));
        }
    }

    let mut h: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
    let mut add = |row: usize, col: usize, v: Complex64| {
        if v != Complex64::new(0.0, 0.0) {
            *h.entry((row, col)).or_insert(Complex64::new(0.0, 0.0)) += v;
        }
    };

    for (col, state) in basis.states().iter().enumerate() {
        add(
            col,
            col,
            Complex64::new(diagonal_energy(params, state), 0.0),
        );

        // Tunneling, both directions of every nearest-neighbour bond.
        for mode in Mode::ALL {
            let t = params.tunneling[mode.index()];
            if t == 0.0 {
                continue;
            }
            for i in 0..m.saturating_sub(1) {
                for (src, dst) in [(i, i + 1), (i + 1, i)] {
                    let n_src = state.get(src, mode);
                    if n_src == 0 {
                        continue;
                    }
                    let n_dst = state.get(dst, mode);
                    let mut target = state.clone();
                    target.site_mut(src)[mode.index()] -= 1;
                    target.site_mut(dst)[mode.index()] += 1;
                    if let Some(row) = basis.index_of(&target) {
                        let amp = (n_src as f64 * (n_dst + 1) as f64).sqrt();
                        add(row, col, Complex64::new(-t * amp, 0.0));
                    }
                }
            }
        }

        // Raman conversion a + b <-> c on each site.
        for i in 0..m {
            let omega = params.rabi[i];
            if omega == 0.0 {
                continue;
            }
            let phase = Complex64::from_polar(omega, params.raman_phase[i]);
            let [na, nb, nc] = state.occupations()[i];
            if na > 0 && nb > 0 {
                let mut target = state.clone();
                let occ = target.site_mut(i);
                occ[0] -= 1;
                occ[1] -= 1;
                occ[2] += 1;
                if let Some(row) = basis.index_of(&target) {
                    let amp = (na as f64 * nb as f64 * (nc + 1) as f64).sqrt();
                    add(row, col, phase * amp);
                }
            }
            if nc > 0 {
                let mut target = state.clone();
                let occ = target.site_mut(i);
                occ[0] += 1;
                occ[1] += 1;
                occ[2] -= 1;
                if let Some(row) = basis.index_of(&target) {
                    let amp = ((na + 1) as f64 * (nb + 1) as f64 * nc as f64).sqrt();
                    add(row, col, phase.conj() * amp);
                }
            }
        }
    }
    Ok(HermitianOperator::from_map(fock_tag(basis), h))
}

/// Dipole-dipole plus on-site interaction energy of a Fock state.
pub(crate) fn diagonal_energy(params: &HamiltonianParams, state: &FockState) -> f64 {
    let m = params.num_sites();
    let u = &params.interactions;
    let mut e = 0.0;
    for i in 0..m {
        for j in (i + 1)..m {
            if params.dipole_range.includes(i, j) {
                e += params.dipole_coupling[i][j]
                    * (state.get(i, Mode::C) * state.get(j, Mode::C)) as f64;
            }
        }
    }
    for occ in state.occupations() {
        let n = occ.map(f64::from);
        for k in 0..3 {
            e += u[k][k] * n[k] * (n[k] - 1.0) / 2.0;
        }
        e += u[0][1] * n[0] * n[1] + u[0][2] * n[0] * n[2] + u[1][2] * n[1] * n[2];
    }
    e
}
