//! Unitary time evolution `exp(-iHt)` (ħ = 1) with two independent backends,
//! plus ground-state extraction.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::basis::MAX_DIMENSION;
use super::operator::HermitianOperator;
use crate::error::{Error, Result};
use crate::model::RegisterState;

/// Full eigendecomposition `H = V diag(E) V†`, reusable across many
/// evolution times.
#[derive(Debug, Clone)]
pub struct Spectrum {
    energies: Vec<f64>,
    vectors: DMatrix<Complex64>,
    source: HermitianOperator,
}

impl Spectrum {
    pub fn new(h: &HermitianOperator) -> Result<Self> {
        guard(h.dim())?;
        let eig = h.to_dense().symmetric_eigen();
        Ok(Self {
            energies: eig.eigenvalues.iter().copied().collect(),
            vectors: eig.eigenvectors,
            source: h.clone(),
        })
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn evolve(&self, state: &RegisterState, t: f64) -> Result<RegisterState> {
        check_dims(state, &self.source)?;
        check_time(t)?;
        if t == 0.0 {
            return Ok(state.clone());
        }
        let psi = HermitianOperator::dense_vector(state.amplitudes());
        let mut coeffs = self.vectors.adjoint() * psi;
        for (c, &e) in coeffs.iter_mut().zip(&self.energies) {
            *c *= Complex64::from_polar(1.0, -e * t);
        }
        let out = &self.vectors * coeffs;
        Ok(RegisterState::from_unitary_image(
            out.iter().copied().collect(),
            state.basis(),
        ))
    }

    /// Lowest eigenpair. The eigenvector's largest-magnitude amplitude is
    /// made real and positive (first such index on ties).
    pub fn ground(&self) -> (f64, RegisterState) {
        let k = self
            .energies
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, _)| k)
            .expect("non-empty spectrum");
        let mut v: Vec<Complex64> = self.vectors.column(k).iter().copied().collect();
        let pivot = v
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, a)| {
                if a.norm() > best.1 + 1e-12 {
                    (i, a.norm())
                } else {
                    best
                }
            })
            .0;
        let phase = v[pivot].conj() / v[pivot].norm();
        v.iter_mut().for_each(|a| *a *= phase);
        v[pivot] = Complex64::new(v[pivot].re, 0.0);
        let norm = crate::model::state_norm(&v);
        v.iter_mut().for_each(|a| *a /= norm);
        (
            self.energies[k],
            RegisterState::from_unitary_image(v, self.source.basis()),
        )
    }
}

/// `exp(-iHt) ψ` by full Hermitian eigendecomposition.
pub fn evolve_eig(state: &RegisterState, h: &HermitianOperator, t: f64) -> Result<RegisterState> {
    check_dims(state, h)?;
    Spectrum::new(h)?.evolve(state, t)
}

/// Order of the diagonal Padé approximant used per step.
const PADE_ORDER: usize = 6;

/// `exp(-iHt) ψ` by `steps` applications of the diagonal [6/6] Padé
/// approximant of `exp(-iH t/steps)`. The approximant of an anti-Hermitian
/// argument is exactly unitary, so the norm is preserved to rounding for any
/// step count; accuracy needs `‖H‖ t / steps` well below one.
pub fn evolve_stepped(
    state: &RegisterState,
    h: &HermitianOperator,
    t: f64,
    steps: usize,
) -> Result<RegisterState> {
    check_dims(state, h)?;
    check_time(t)?;
    if steps == 0 {
        return Err(Error::InvalidArgument(
            "step count must be at least 1".into(),
        ));
    }
    guard(h.dim())?;
    if t == 0.0 {
        return Ok(state.clone());
    }
    let dt = t / steps as f64;
    let a = h.to_dense() * Complex64::new(0.0, -dt);
    let step = pade_exp(&a)?;
    let mut psi: DVector<Complex64> = HermitianOperator::dense_vector(state.amplitudes());
    for _ in 0..steps {
        psi = &step * psi;
    }
    Ok(RegisterState::from_unitary_image(
        psi.iter().copied().collect(),
        state.basis(),
    ))
}

/// `D(A)⁻¹ N(A)` with `N(A) = Σ c_k A^k`, `D(A) = N(-A)`.
fn pade_exp(a: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let n = a.nrows();
    let coeffs = pade_coefficients(PADE_ORDER);
    let identity = DMatrix::<Complex64>::identity(n, n);
    let mut numer = identity.clone() * Complex64::from(coeffs[0]);
    let mut denom = numer.clone();
    let mut power = identity;
    for (k, &c) in coeffs.iter().enumerate().skip(1) {
        power = &power * a;
        let term = &power * Complex64::from(c);
        numer += &term;
        if k % 2 == 0 {
            denom += term;
        } else {
            denom -= term;
        }
    }
    denom
        .lu()
        .solve(&numer)
        .ok_or_else(|| Error::InvalidArgument("Padé denominator is singular".into()))
}

/// `c_k = (2m - k)! m! / ((2m)! k! (m - k)!)`
fn pade_coefficients(m: usize) -> Vec<f64> {
    let mut c = vec![1.0; m + 1];
    for k in 1..=m {
        c[k] = c[k - 1] * (m - k + 1) as f64 / (k as f64 * (2 * m - k + 1) as f64);
    }
    c
}

/// Lowest eigenvalue and its eigenvector.
pub fn ground_state(h: &HermitianOperator) -> Result<(f64, RegisterState)> {
    if h.dim() == 0 {
        return Err(Error::InvalidArgument("operator has dimension 0".into()));
    }
    Ok(Spectrum::new(h)?.ground())
}

fn check_dims(state: &RegisterState, h: &HermitianOperator) -> Result<()> {
    if state.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: state.dim(),
        });
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "time must be finite, got {t}"
        )));
    }
    Ok(())
}

fn guard(dim: usize) -> Result<()> {
    if dim > MAX_DIMENSION {
        return Err(Error::ResourceLimit(format!(
            "dimension {dim} exceeds the limit of {MAX_DIMENSION}"
        )));
    }
    Ok(())
}
