use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::ops::{mask, phase_gate, qubit_count, ry};
use crate::error::{Error, Result};
use crate::model::{BasisTag, RegisterState};

pub const UNITARY_TOLERANCE: f64 = 1e-10;

/// Dense `2^n × 2^n` unitary on the qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct GateUnitary {
    num_qubits: usize,
    matrix: DMatrix<Complex64>,
}

impl GateUnitary {
    /// Rejects matrices of the wrong size or with `‖U†U - I‖_max` above
    /// [`UNITARY_TOLERANCE`].
    pub fn new(num_qubits: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: matrix.nrows(),
            });
        }
        let gram = matrix.adjoint() * &matrix;
        let residual = max_abs_diff(&gram, &DMatrix::identity(dim, dim));
        if residual > UNITARY_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "matrix is not unitary (residual {residual:e})"
            )));
        }
        Ok(Self { num_qubits, matrix })
    }

    /// Tabulates a state map column by column on the computational basis.
    pub fn from_map(
        num_qubits: usize,
        f: impl Fn(&RegisterState) -> Result<RegisterState>,
    ) -> Result<Self> {
        let dim = 1usize << num_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            let out = f(&RegisterState::basis_vector(
                col,
                BasisTag::Qubits(num_qubits),
            )?)?;
            for (row, a) in out.amplitudes().iter().enumerate() {
                m[(row, col)] = *a;
            }
        }
        Self::new(num_qubits, m)
    }

    pub fn identity(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        Self {
            num_qubits,
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn apply(&self, state: &RegisterState) -> Result<RegisterState> {
        if state.num_qubits() != Some(self.num_qubits) {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.nrows(),
                found: state.dim(),
            });
        }
        let v = &self.matrix * nalgebra::DVector::from_column_slice(state.amplitudes());
        Ok(RegisterState::from_unitary_image(
            v.iter().copied().collect(),
            state.basis(),
        ))
    }

    /// `self · other` (apply `other` first).
    pub fn then_after(&self, other: &GateUnitary) -> Result<Self> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.nrows(),
                found: other.matrix.nrows(),
            });
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            matrix: &self.matrix * &other.matrix,
        })
    }

    /// Largest entrywise deviation from `other`.
    pub fn distance(&self, other: &GateUnitary) -> f64 {
        max_abs_diff(&self.matrix, &other.matrix)
    }
}

fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn check_wires(n: usize, control: usize, target: usize) -> Result<()> {
    if control == target {
        return Err(Error::InvalidArgument(format!(
            "control and target are the same wire ({control})"
        )));
    }
    for w in [control, target] {
        if w >= n {
            return Err(Error::SiteOutOfRange { site: w, len: n });
        }
    }
    Ok(())
}

/// CNOT as the register actually realizes it: `Ry(-π/2)` on the target, a
/// π phase gate on the pair, `Ry(π/2)` on the target.
pub fn apply_cnot(state: &RegisterState, control: usize, target: usize) -> Result<RegisterState> {
    let n = qubit_count(state)?;
    check_wires(n, control, target)?;
    let s = ry(state, target, -FRAC_PI_2)?;
    let s = phase_gate(&s, (control, target), PI)?;
    ry(&s, target, FRAC_PI_2)
}

/// The composed CNOT of [`apply_cnot`] as an `n`-qubit unitary.
pub fn cnot(num_qubits: usize, control: usize, target: usize) -> Result<GateUnitary> {
    check_wires(num_qubits, control, target)?;
    GateUnitary::from_map(num_qubits, |s| apply_cnot(s, control, target))
}

/// Textbook CNOT permutation: flip `target` wherever `control` is set.
pub fn ideal_cnot(num_qubits: usize, control: usize, target: usize) -> Result<GateUnitary> {
    check_wires(num_qubits, control, target)?;
    let dim = 1usize << num_qubits;
    let (cm, tm) = (mask(control, num_qubits), mask(target, num_qubits));
    let mut m = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let row = if col & cm != 0 { col ^ tm } else { col };
        m[(row, col)] = Complex64::new(1.0, 0.0);
    }
    GateUnitary::new(num_qubits, m)
}
