use num_complex::Complex64;
use proptest::prelude::*;

use diatomic::fock::{
    build_hamiltonian, enumerate_basis, evolve_eig, evolve_stepped, HermitianOperator,
};
use diatomic::gates::{fidelity, run_schedule, Backend};
use diatomic::model::{
    Axis, BasisTag, HamiltonianParams, Mode, PulseSchedule, PulseStep, RegisterState, Sector,
};

fn params(
    sites: usize,
    tunneling: [f64; 3],
    rabi: f64,
    phase: f64,
    u: f64,
    d: f64,
) -> HamiltonianParams {
    let mut p = HamiltonianParams::zeros(sites);
    p.tunneling = tunneling;
    p.rabi = vec![rabi; sites];
    p.raman_phase = vec![phase; sites];
    for m in Mode::ALL {
        p.set_interaction(m, m, u);
    }
    p.set_interaction(Mode::A, Mode::B, 0.5 * u);
    p.set_uniform_dipole(d);
    p
}

fn start(dim: usize, sector: Option<Sector>, seed: &[f64]) -> RegisterState {
    let amps = (0..dim)
        .map(|k| {
            Complex64::new(
                seed[k % seed.len()] + k as f64 * 0.01,
                seed[(k + 1) % seed.len()],
            )
        })
        .collect();
    RegisterState::normalized(amps, BasisTag::Fock { dim, sector }).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evolution_is_norm_preserving_and_backends_agree(
        t in prop::array::uniform3(0.0..1.0f64),
        rabi in 0.0..1.5f64,
        phase in 0.0..std::f64::consts::TAU,
        u in 0.0..4.0f64,
        d in 0.0..1.0f64,
        time in 0.0..3.0f64,
        seed in prop::collection::vec(-1.0..1.0f64, 3..8),
    ) {
        let basis = enumerate_basis(2, Sector::new(2, 2), [2, 2, 2]).unwrap();
        let h = build_hamiltonian(&params(2, t, rabi, phase, u, d), &basis).unwrap();
        prop_assert!(h.hermiticity_residual() <= 1e-12);
        let psi = start(basis.dim(), basis.sector(), &seed);
        let a = evolve_eig(&psi, &h, time).unwrap();
        let b = evolve_stepped(&psi, &h, time, 200).unwrap();
        prop_assert!((a.norm() - 1.0).abs() < 1e-12);
        prop_assert!((b.norm() - 1.0).abs() < 1e-12);
        prop_assert!(a.max_distance(&b).unwrap() < 1e-8);
    }

    #[test]
    fn energy_is_conserved(
        t in prop::array::uniform3(0.0..1.0f64),
        rabi in 0.0..1.5f64,
        u in 0.0..4.0f64,
        time in 0.0..5.0f64,
        seed in prop::collection::vec(-1.0..1.0f64, 3..8),
    ) {
        let basis = enumerate_basis(3, Sector::new(2, 1), [2, 1, 1]).unwrap();
        let mut p = params(3, t, rabi, 0.3, u, 0.2);
        p.caps = Some([2, 1, 1]);
        let h = build_hamiltonian(&p, &basis).unwrap();
        let psi = start(basis.dim(), basis.sector(), &seed);
        let e0 = h.expectation(&psi).unwrap();
        let e1 = h.expectation(&evolve_eig(&psi, &h, time).unwrap()).unwrap();
        prop_assert!((e0 - e1).abs() < 1e-10);
        let n = HermitianOperator::number(&basis, Mode::C);
        prop_assert!(n.hermiticity_residual() == 0.0);
    }

    /// With no interactions at all the Fock pulses are exact rotations, so
    /// both backends agree on any schedule.
    #[test]
    fn backends_agree_without_interactions(
        pulses in prop::collection::vec((0usize..3, prop::bool::ANY, -6.0..6.0f64, 0.5..4.0f64), 0..6),
    ) {
        let steps = pulses
            .into_iter()
            .map(|(which, x, angle, rabi)| {
                let sites = match which {
                    0 => vec![0],
                    1 => vec![1],
                    _ => vec![0, 1],
                };
                let axis = if x { Axis::X } else { Axis::Y };
                PulseStep::Raman { sites, axis, angle, rabi }
            })
            .chain(std::iter::once(PulseStep::FreeEvolution { duration: 0.7 }))
            .collect();
        let schedule = PulseSchedule::new(steps).unwrap();
        let p = HamiltonianParams::zeros(2);
        let psi = RegisterState::basis_vector(0, BasisTag::Qubits(2)).unwrap();
        let q = run_schedule(&schedule, Backend::Qubit, &p, &psi).unwrap();
        let f = run_schedule(&schedule, Backend::Fock, &p, &psi).unwrap();
        prop_assert!(q.state.max_distance(&f.state).unwrap() < 1e-10);
        prop_assert!(f.leakage < 1e-12);
        prop_assert!((fidelity(&q.state, &f.state).unwrap() - 1.0).abs() < 1e-10);
    }
}
