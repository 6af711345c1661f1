use std::fmt;

use num_complex::Complex64;

use super::hamiltonian::{Mode, OccupationCaps};
use crate::error::{Error, Result};

/// Conserved charges `(Σ n_a + n_c, Σ n_b + n_c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sector {
    pub q1: u32,
    pub q2: u32,
}

impl Sector {
    pub fn new(q1: u32, q2: u32) -> Self {
        Self { q1, q2 }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.q1, self.q2)
    }
}

/// Occupations `(n_a, n_b, n_c)` on each site.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState {
    occupations: Vec<[u32; 3]>,
}

impl FockState {
    pub fn new(occupations: Vec<[u32; 3]>) -> Self {
        Self { occupations }
    }

    /// Product of per-site qubit encodings: bit 0 is the atom pair
    /// `(1, 1, 0)`, bit 1 the molecule `(0, 0, 1)`.
    pub fn encoded(bits: &[bool]) -> Self {
        Self::new(
            bits.iter()
                .map(|&b| if b { [0, 0, 1] } else { [1, 1, 0] })
                .collect(),
        )
    }

    pub fn num_sites(&self) -> usize {
        self.occupations.len()
    }

    pub fn occupations(&self) -> &[[u32; 3]] {
        &self.occupations
    }

    pub fn get(&self, site: usize, mode: Mode) -> u32 {
        self.occupations[site][mode.index()]
    }

    pub(crate) fn site_mut(&mut self, site: usize) -> &mut [u32; 3] {
        &mut self.occupations[site]
    }

    pub fn sector(&self) -> Sector {
        let (q1, q2) = self
            .occupations
            .iter()
            .fold((0, 0), |(q1, q2), [a, b, c]| (q1 + a + c, q2 + b + c));
        Sector::new(q1, q2)
    }

    pub fn within(&self, caps: &OccupationCaps) -> bool {
        self.occupations
            .iter()
            .all(|occ| occ.iter().zip(caps).all(|(n, cap)| n <= cap))
    }

    pub fn total(&self, mode: Mode) -> u32 {
        self.occupations.iter().map(|o| o[mode.index()]).sum()
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for [a, b, c] in &self.occupations {
            write!(f, "|{a}{b}{c}>")?;
        }
        Ok(())
    }
}

/// Which ordered basis a [`RegisterState`] indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisTag {
    /// `2^n` computational states; qubit 0 is the most significant bit.
    Qubits(usize),
    /// A Fock basis of the given dimension; sector `None` for mixed bases.
    Fock { dim: usize, sector: Option<Sector> },
}

impl BasisTag {
    pub fn dim(&self) -> usize {
        match *self {
            BasisTag::Qubits(n) => 1 << n,
            BasisTag::Fock { dim, .. } => dim,
        }
    }
}

pub const NORM_TOLERANCE: f64 = 1e-12;

/// A normalized pure state over a qubit or Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct RegisterState {
    amplitudes: Vec<Complex64>,
    basis: BasisTag,
}

impl RegisterState {
    /// Rejects vectors whose length does not match `basis` or whose norm
    /// differs from one by more than [`NORM_TOLERANCE`].
    pub fn new(amplitudes: Vec<Complex64>, basis: BasisTag) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                found: amplitudes.len(),
            });
        }
        let norm = l2_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "state is not normalized (norm = {norm})"
            )));
        }
        Ok(Self { amplitudes, basis })
    }

    /// Scales `amplitudes` to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>, basis: BasisTag) -> Result<Self> {
        let norm = l2_norm(&amplitudes);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidArgument(
                "cannot normalize a zero vector".into(),
            ));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::new(amplitudes, basis)
    }

    /// Single basis vector `index`.
    pub fn basis_vector(index: usize, basis: BasisTag) -> Result<Self> {
        let dim = basis.dim();
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            amplitudes: amps,
            basis,
        })
    }

    /// Builds a state without the normalization check. Callers are
    /// unitary maps applied to an already normalized state.
    pub(crate) fn from_unitary_image(amplitudes: Vec<Complex64>, basis: BasisTag) -> Self {
        debug_assert_eq!(amplitudes.len(), basis.dim());
        Self { amplitudes, basis }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Number of qubits, or `None` for Fock-basis states.
    pub fn num_qubits(&self) -> Option<usize> {
        match self.basis {
            BasisTag::Qubits(n) => Some(n),
            BasisTag::Fock { .. } => None,
        }
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amplitudes)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &RegisterState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Largest entrywise distance `max_k |a_k - b_k|`.
    pub fn max_distance(&self, other: &RegisterState) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

pub(crate) fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Bitstring label of a computational basis index, qubit 0 first.
pub fn bitstring(index: usize, num_qubits: usize) -> String {
    (0..num_qubits)
        .map(|q| {
            if (index >> (num_qubits - 1 - q)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}
