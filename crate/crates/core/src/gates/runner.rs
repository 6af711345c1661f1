use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Deserialize;

use super::entangle::check_free_regime;
use super::ops::{apply_single, qubit_count, rx_matrix, ry_matrix};
use crate::error::{Error, Result};
use crate::fock::bits;
use crate::fock::{
    build_hamiltonian, embed_qubit_state, enumerate_basis, project_qubit_subspace, FockBasis,
    Spectrum,
};
use crate::model::{
    Axis, FockState, HamiltonianParams, PulseSchedule, PulseStep, RegisterState, Sector,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Ideal gates on the `2^n` qubit space.
    #[default]
    Qubit,
    /// Full atom–molecule Hamiltonian on the Fock space, projected back.
    Fock,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub state: RegisterState,
    /// Probability outside the encoded subspace (zero on the qubit backend).
    pub leakage: f64,
}

/// Executes `schedule` on `initial`.
///
/// The qubit backend applies each pulse as an exact rotation and each free
/// interval as `exp(-iE t)`, with `E` the interaction energy of each encoded
/// product state under `params` (dipole couplings plus on-site terms).
///
/// The Fock backend evolves the lattice Hamiltonian itself. During a pulse
/// the addressed sites get Raman coupling `rabi / 2` with the phase of the
/// pulse axis for `|angle| / rabi`; otherwise all Raman couplings are off.
/// `params.rabi` and `params.raman_phase` are ignored. Tunneling must be
/// zero.
pub fn run_schedule(
    schedule: &PulseSchedule,
    backend: Backend,
    params: &HamiltonianParams,
    initial: &RegisterState,
) -> Result<RunReport> {
    let n = qubit_count(initial)?;
    params.ensure_valid()?;
    if params.num_sites() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: params.num_sites(),
        });
    }
    if let Some(site) = schedule.max_site().filter(|&s| s >= n) {
        return Err(Error::SiteOutOfRange { site, len: n });
    }
    match backend {
        Backend::Qubit => run_qubit(schedule, params, initial),
        Backend::Fock => run_fock(schedule, params, initial),
    }
}

fn run_qubit(
    schedule: &PulseSchedule,
    params: &HamiltonianParams,
    initial: &RegisterState,
) -> Result<RunReport> {
    let n = qubit_count(initial)?;
    let energies: Vec<f64> = (0..1usize << n)
        .map(|q| crate::fock::diagonal_energy(params, &FockState::encoded(&bits(q, n))))
        .collect();
    let mut state = initial.clone();
    for step in schedule.steps() {
        match step {
            PulseStep::Raman {
                sites, axis, angle, ..
            } => {
                let m = match axis {
                    Axis::X => rx_matrix(*angle),
                    Axis::Y => ry_matrix(*angle),
                };
                for &site in sites {
                    state = apply_single(&state, site, &m)?;
                }
            }
            PulseStep::FreeEvolution { duration } => {
                for (a, &e) in state.amplitudes_mut().iter_mut().zip(&energies) {
                    *a *= Complex64::from_polar(1.0, -e * duration);
                }
            }
        }
    }
    Ok(RunReport {
        state,
        leakage: 0.0,
    })
}

#[derive(Hash, PartialEq, Eq)]
struct PulseKey {
    sites: Vec<usize>,
    phase_bits: u64,
    rabi_bits: u64,
}

fn run_fock(
    schedule: &PulseSchedule,
    params: &HamiltonianParams,
    initial: &RegisterState,
) -> Result<RunReport> {
    let n = qubit_count(initial)?;
    let mut idle = params.clone();
    idle.rabi = vec![0.0; n];
    idle.raman_phase = vec![0.0; n];
    check_free_regime(&idle)?;

    let q = n as u32;
    let basis: FockBasis = enumerate_basis(n, Sector::new(q, q), idle.effective_caps(q, q))?;
    let free = Spectrum::new(&build_hamiltonian(&idle, &basis)?)?;
    let mut pulses: HashMap<PulseKey, Spectrum> = HashMap::new();

    let mut state = embed_qubit_state(initial, &basis)?;
    for step in schedule.steps() {
        match step {
            PulseStep::Raman {
                sites,
                axis,
                angle,
                rabi,
            } => {
                if *angle == 0.0 {
                    continue;
                }
                let phase = axis.raman_phase() + if *angle < 0.0 { PI } else { 0.0 };
                let key = PulseKey {
                    sites: sites.clone(),
                    phase_bits: phase.to_bits(),
                    rabi_bits: rabi.to_bits(),
                };
                let spectrum = match pulses.entry(key) {
                    Entry::Occupied(e) => e.into_mut(),
                    Entry::Vacant(e) => {
                        let mut driven = idle.clone();
                        for &s in sites {
                            driven.rabi[s] = rabi / 2.0;
                            driven.raman_phase[s] = phase;
                        }
                        e.insert(Spectrum::new(&build_hamiltonian(&driven, &basis)?)?)
                    }
                };
                state = spectrum.evolve(&state, step.duration())?;
            }
            PulseStep::FreeEvolution { duration } => {
                state = free.evolve(&state, *duration)?;
            }
        }
    }
    let (state, leakage) = project_qubit_subspace(&state, &basis)?;
    Ok(RunReport { state, leakage })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{bell_prep, fidelity, init_register, ry};
    use crate::model::Mode;
    use std::f64::consts::FRAC_PI_2;

    fn pulse(sites: Vec<usize>, axis: Axis, angle: f64, rabi: f64) -> PulseStep {
        PulseStep::Raman {
            sites,
            axis,
            angle,
            rabi,
        }
    }

    fn coupled(d: f64) -> HamiltonianParams {
        let mut p = HamiltonianParams::zeros(2);
        p.set_dipole(0, 1, d);
        p
    }

    fn bell_schedule(d: f64, rabi: f64) -> PulseSchedule {
        PulseSchedule::new(vec![
            pulse(vec![0, 1], Axis::Y, FRAC_PI_2, rabi),
            PulseStep::FreeEvolution { duration: PI / d },
            pulse(vec![0], Axis::Y, FRAC_PI_2, rabi),
        ])
        .unwrap()
    }

    #[test]
    fn empty_schedule_is_identity() {
        let psi = ry(&init_register(2).unwrap(), 1, 0.4).unwrap();
        for backend in [Backend::Qubit, Backend::Fock] {
            let r = run_schedule(&PulseSchedule::empty(), backend, &coupled(1.0), &psi).unwrap();
            assert!(r.state.max_distance(&psi).unwrap() < 1e-15);
            assert!(r.leakage < 1e-15);
        }
    }

    #[test]
    fn bell_schedule_on_qubit_backend_equals_bell_prep() {
        let d = 0.5;
        let r = run_schedule(
            &bell_schedule(d, 10.0),
            Backend::Qubit,
            &coupled(d),
            &init_register(2).unwrap(),
        )
        .unwrap();
        let want = bell_prep().unwrap().output;
        assert!(r.state.max_distance(&want).unwrap() < 1e-12);
    }

    #[test]
    fn fock_single_pulse_matches_two_level_rabi() {
        // One site, no neighbours: the pulse is an exact two-level rotation.
        let p = HamiltonianParams::zeros(1);
        let psi = init_register(1).unwrap();
        let rabi = 3.0;
        for angle in [0.3, FRAC_PI_2, PI, -1.2] {
            let s = PulseSchedule::new(vec![pulse(vec![0], Axis::Y, angle, rabi)]).unwrap();
            let r = run_schedule(&s, Backend::Fock, &p, &psi).unwrap();
            let molecular = r.state.amplitudes()[1].norm_sqr();
            assert!((molecular - (angle / 2.0).sin().powi(2)).abs() < 1e-12);
            let ideal = ry(&psi, 0, angle).unwrap();
            assert!(r.state.max_distance(&ideal).unwrap() < 1e-12);
        }
    }

    #[test]
    fn x_axis_pulse_agrees() {
        let p = HamiltonianParams::zeros(1);
        let psi = init_register(1).unwrap();
        let s = PulseSchedule::new(vec![pulse(vec![0], Axis::X, 1.1, 2.0)]).unwrap();
        let q = run_schedule(&s, Backend::Qubit, &p, &psi).unwrap();
        let f = run_schedule(&s, Backend::Fock, &p, &psi).unwrap();
        assert!(q.state.max_distance(&f.state).unwrap() < 1e-12);
    }

    #[test]
    fn fock_pi_pulse_with_neighbour_molecule() {
        // Neighbour already molecular: D shifts the driven transition by D.
        // Two-level oracle with detuning Δ = D and coupling Ω/2:
        // P = Ω² / (Ω² + D²) · sin²(√(Ω² + D²) τ / 2), τ = π / Ω.
        let d = 0.05;
        let rabi = 5.0;
        let start = RegisterState::basis_vector(1, crate::model::BasisTag::Qubits(2)).unwrap(); // |01⟩
        let s = PulseSchedule::new(vec![pulse(vec![0], Axis::Y, PI, rabi)]).unwrap();
        let r = run_schedule(&s, Backend::Fock, &coupled(d), &start).unwrap();
        let p_flip = r.state.amplitudes()[3].norm_sqr();
        let gen = (rabi * rabi + d * d).sqrt();
        let oracle = rabi * rabi / (gen * gen) * (gen * (PI / rabi) / 2.0).sin().powi(2);
        assert!((p_flip - oracle).abs() < 1e-12);
        assert!(p_flip >= 1.0 - (d / rabi).powi(2));
        assert!(r.leakage < 1e-12);
    }

    #[test]
    fn backends_agree_on_bell_schedule() {
        let d = 1e-3;
        let s = bell_schedule(d, 1e3);
        let psi = init_register(2).unwrap();
        let q = run_schedule(&s, Backend::Qubit, &coupled(d), &psi).unwrap();
        let f = run_schedule(&s, Backend::Fock, &coupled(d), &psi).unwrap();
        assert!(1.0 - fidelity(&q.state, &f.state).unwrap() < 1e-8);
        assert!(f.leakage < 1e-10);
    }

    #[test]
    fn on_site_energies_match_across_backends_in_free_evolution() {
        let mut p = coupled(0.3);
        p.set_interaction(Mode::A, Mode::B, 0.9);
        p.set_interaction(Mode::C, Mode::C, 4.0);
        let psi = crate::model::RegisterState::normalized(
            vec![
                Complex64::new(0.3, 0.1),
                Complex64::new(0.5, 0.0),
                Complex64::new(-0.2, 0.4),
                Complex64::new(0.6, -0.1),
            ],
            crate::model::BasisTag::Qubits(2),
        )
        .unwrap();
        let s = PulseSchedule::new(vec![PulseStep::FreeEvolution { duration: 2.7 }]).unwrap();
        let q = run_schedule(&s, Backend::Qubit, &p, &psi).unwrap();
        let f = run_schedule(&s, Backend::Fock, &p, &psi).unwrap();
        assert!(q.state.max_distance(&f.state).unwrap() < 1e-12);
    }

    #[test]
    fn fock_rejects_tunneling_and_bad_sites() {
        let mut p = coupled(1.0);
        p.tunneling[0] = 0.1;
        let psi = init_register(2).unwrap();
        let s = PulseSchedule::empty();
        assert!(matches!(
            run_schedule(&s, Backend::Fock, &p, &psi),
            Err(Error::Regime(_))
        ));
        let far = PulseSchedule::new(vec![pulse(vec![2], Axis::Y, 1.0, 1.0)]).unwrap();
        assert!(matches!(
            run_schedule(&far, Backend::Qubit, &coupled(1.0), &psi),
            Err(Error::SiteOutOfRange { .. })
        ));
        assert!(run_schedule(&s, Backend::Qubit, &HamiltonianParams::zeros(3), &psi).is_err());
    }
}
