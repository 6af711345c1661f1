use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{BasisTag, RegisterState};

/// Single-qubit gate, row-major.
pub type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest register [`init_register`] will allocate.
pub const MAX_QUBITS: usize = 20;

/// `|0…0⟩` on `n` qubits: every site holds an atom pair.
pub fn init_register(n: usize) -> Result<RegisterState> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "register needs at least one qubit".into(),
        ));
    }
    if n > MAX_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "{n} qubits exceeds the limit of {MAX_QUBITS}"
        )));
    }
    RegisterState::basis_vector(0, BasisTag::Qubits(n))
}

pub(crate) fn qubit_count(state: &RegisterState) -> Result<usize> {
    state
        .num_qubits()
        .ok_or_else(|| Error::InvalidArgument("gate needs a qubit-basis state".into()))
}

fn check_site(site: usize, n: usize) -> Result<()> {
    if site >= n {
        return Err(Error::SiteOutOfRange { site, len: n });
    }
    Ok(())
}

/// Bit mask of qubit `site` in an `n`-qubit index (qubit 0 is the MSB).
pub(crate) fn mask(site: usize, n: usize) -> usize {
    1 << (n - 1 - site)
}

/// Applies a 2x2 matrix to one qubit.
pub fn apply_single(state: &RegisterState, site: usize, m: &Matrix2) -> Result<RegisterState> {
    let n = qubit_count(state)?;
    check_site(site, n)?;
    let bit = mask(site, n);
    let mut out = state.clone();
    let amps = out.amplitudes_mut();
    for i in 0..amps.len() {
        if i & bit == 0 {
            let (a0, a1) = (amps[i], amps[i | bit]);
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
    Ok(out)
}

/// `[[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]]`, so `Ry(π/2)|0⟩ = (|0⟩+|1⟩)/√2`
/// and `Ry(π/2)|1⟩ = (-|0⟩+|1⟩)/√2`.
pub fn ry_matrix(angle: f64) -> Matrix2 {
    let (s, c) = (angle / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

/// `[[cos θ/2, -i sin θ/2], [-i sin θ/2, cos θ/2]]`
pub fn rx_matrix(angle: f64) -> Matrix2 {
    let (s, c) = (angle / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
        [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
    ]
}

pub fn ry(state: &RegisterState, site: usize, angle: f64) -> Result<RegisterState> {
    apply_single(state, site, &ry_matrix(angle))
}

pub fn rx(state: &RegisterState, site: usize, angle: f64) -> Result<RegisterState> {
    apply_single(state, site, &rx_matrix(angle))
}

/// Multiplies every amplitude with qubits `i` and `j` both set by `e^{iφ}`.
pub fn phase_gate(state: &RegisterState, pair: (usize, usize), phi: f64) -> Result<RegisterState> {
    let n = qubit_count(state)?;
    let (i, j) = pair;
    if i == j {
        return Err(Error::InvalidArgument(format!(
            "phase gate needs two distinct qubits, got ({i}, {j})"
        )));
    }
    check_site(i, n)?;
    check_site(j, n)?;
    let both = mask(i, n) | mask(j, n);
    let factor = Complex64::from_polar(1.0, phi);
    let mut out = state.clone();
    for (k, a) in out.amplitudes_mut().iter_mut().enumerate() {
        if k & both == both {
            *a *= factor;
        }
    }
    Ok(out)
}

/// A dipole coupling `strength` between qubits `i` and `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCoupling {
    pub i: usize,
    pub j: usize,
    pub strength: f64,
}

/// Free evolution under conditional couplings: a phase gate with angle
/// `D_ij t` on each coupled pair (ħ = 1). All factors are diagonal and
/// commute.
pub fn free_evolution(
    state: &RegisterState,
    couplings: &[PairCoupling],
    t: f64,
) -> Result<RegisterState> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "duration must be non-negative, got {t}"
        )));
    }
    couplings.iter().try_fold(state.clone(), |s, c| {
        phase_gate(&s, (c.i, c.j), c.strength * t)
    })
}

/// `|⟨a|b⟩|²`
pub fn fidelity(a: &RegisterState, b: &RegisterState) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}

/// Two-qubit pure-state concurrence `2 |a₀₀ a₁₁ - a₀₁ a₁₀|`.
pub fn concurrence(state: &RegisterState) -> Result<f64> {
    if state.num_qubits() != Some(2) {
        return Err(Error::InvalidArgument(
            "concurrence is defined here for two qubits".into(),
        ));
    }
    let a = state.amplitudes();
    Ok(2.0 * (a[0] * a[3] - a[1] * a[2]).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellState {
    /// (|00⟩ + |11⟩)/√2
    PhiPlus,
    /// (|00⟩ - |11⟩)/√2
    PhiMinus,
    /// (|01⟩ + |10⟩)/√2
    PsiPlus,
    /// (|01⟩ - |10⟩)/√2
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [
        BellState::PhiPlus,
        BellState::PhiMinus,
        BellState::PsiPlus,
        BellState::PsiMinus,
    ];

    pub fn state(self) -> RegisterState {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let amps = match self {
            BellState::PhiPlus => [h, ZERO, ZERO, h],
            BellState::PhiMinus => [h, ZERO, ZERO, -h],
            BellState::PsiPlus => [ZERO, h, h, ZERO],
            BellState::PsiMinus => [ZERO, h, -h, ZERO],
        };
        RegisterState::new(amps.to_vec(), BasisTag::Qubits(2)).expect("Bell states are normalized")
    }

    pub fn label(self) -> &'static str {
        match self {
            BellState::PhiPlus => "phi+",
            BellState::PhiMinus => "phi-",
            BellState::PsiPlus => "psi+",
            BellState::PsiMinus => "psi-",
        }
    }

    /// The Bell state with the highest fidelity to `state`, and that fidelity.
    pub fn closest(state: &RegisterState) -> Result<(BellState, f64)> {
        let mut best = (BellState::PhiPlus, -1.0);
        for b in Self::ALL {
            let f = fidelity(&b.state(), state)?;
            if f > best.1 {
                best = (b, f);
            }
        }
        Ok(best)
    }
}
