use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::basis::FockBasis;
use crate::error::{Error, Result};
use crate::model::{BasisTag, FockState, Mode, RegisterState};

/// Entrywise tolerance for the Hermiticity check.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Sparse Hermitian matrix in coordinate form, entries sorted by
/// `(row, col)` with no duplicates.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    basis: BasisTag,
    entries: Vec<(usize, usize, Complex64)>,
}

impl HermitianOperator {
    pub fn zeros(basis: BasisTag) -> Self {
        Self {
            basis,
            entries: Vec::new(),
        }
    }

    /// Sums duplicate coordinates, then checks Hermiticity.
    pub fn from_entries(
        basis: BasisTag,
        entries: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Result<Self> {
        let dim = basis.dim();
        let mut map = BTreeMap::new();
        for (r, c, v) in entries {
            if r >= dim || c >= dim {
                return Err(Error::InvalidArgument(format!(
                    "entry ({r}, {c}) outside a {dim}x{dim} operator"
                )));
            }
            *map.entry((r, c)).or_insert(Complex64::new(0.0, 0.0)) += v;
        }
        let op = Self::from_map(basis, map);
        let residual = op.hermiticity_residual();
        if residual > HERMITIAN_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "operator is not Hermitian (residual {residual:e})"
            )));
        }
        Ok(op)
    }

    pub(crate) fn from_map(basis: BasisTag, map: BTreeMap<(usize, usize), Complex64>) -> Self {
        Self {
            basis,
            entries: map.into_iter().map(|((r, c), v)| (r, c, v)).collect(),
        }
    }

    /// Diagonal operator with `f(state)` on each basis state.
    pub fn diagonal(basis: &FockBasis, f: impl Fn(&FockState) -> f64) -> Self {
        let entries = basis
            .states()
            .iter()
            .enumerate()
            .map(|(i, s)| (i, i, Complex64::new(f(s), 0.0)))
            .filter(|e| e.2 != Complex64::new(0.0, 0.0))
            .collect();
        Self {
            basis: fock_tag(basis),
            entries,
        }
    }

    /// Total particle number of one mode, `Σ_i n_κi`.
    pub fn number(basis: &FockBasis, mode: Mode) -> Self {
        Self::diagonal(basis, |s| s.total(mode) as f64)
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries
            .binary_search_by(|&(r, c, _)| (r, c).cmp(&(row, col)))
            .map_or(Complex64::new(0.0, 0.0), |k| self.entries[k].2)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.2 == Complex64::new(0.0, 0.0))
    }

    /// `max |H_ij - conj(H_ji)|`
    pub fn hermiticity_residual(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(r, c, v)| (v - self.get(c, r).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn plus(&self, other: &HermitianOperator) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let mut map = BTreeMap::new();
        for &(r, c, v) in self.entries.iter().chain(&other.entries) {
            *map.entry((r, c)).or_insert(Complex64::new(0.0, 0.0)) += v;
        }
        Ok(Self::from_map(self.basis, map))
    }

    /// `H + shift·I`
    pub fn shifted(&self, shift: f64) -> Self {
        let mut map: BTreeMap<(usize, usize), Complex64> =
            self.entries.iter().map(|&(r, c, v)| ((r, c), v)).collect();
        for i in 0..self.dim() {
            *map.entry((i, i)).or_insert(Complex64::new(0.0, 0.0)) += shift;
        }
        Self::from_map(self.basis, map)
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for &(r, c, v) in &self.entries {
            m[(r, c)] = v;
        }
        m
    }

    /// `H v`
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for &(r, c, val) in &self.entries {
            out[r] += val * v[c];
        }
        Ok(out)
    }

    /// `⟨ψ|H|ψ⟩`, real for a Hermitian `H`.
    pub fn expectation(&self, state: &RegisterState) -> Result<f64> {
        let hv = self.apply(state.amplitudes())?;
        Ok(state
            .amplitudes()
            .iter()
            .zip(&hv)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .re)
    }

    pub(crate) fn dense_vector(v: &[Complex64]) -> DVector<Complex64> {
        DVector::from_column_slice(v)
    }

    /// Coordinate-list dump, one `row,col,re,im` line per stored entry in
    /// row-major order. Values use the shortest round-trip representation.
    pub fn dump(&self) -> String {
        let mut s = format!("# dim {}\nrow,col,re,im\n", self.dim());
        for &(r, c, v) in &self.entries {
            writeln!(s, "{r},{c},{:e},{:e}", v.re, v.im).expect("write to string");
        }
        s
    }

    /// Reads the format written by [`dump`](Self::dump).
    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let dim = lines
            .next()
            .and_then(|(_, l)| l.strip_prefix("# dim "))
            .and_then(|d| d.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse("operator dump: missing `# dim N` header".into()))?;
        match lines.next() {
            Some((_, "row,col,re,im")) => {}
            _ => return Err(Error::Parse("operator dump: missing column header".into())),
        }
        let mut entries = Vec::new();
        for (no, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let bad = || Error::Parse(format!("operator dump: line {}: {line:?}", no + 1));
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 4 {
                return Err(bad());
            }
            let r = f[0].parse().map_err(|_| bad())?;
            let c = f[1].parse().map_err(|_| bad())?;
            let re = f[2].parse().map_err(|_| bad())?;
            let im = f[3].parse().map_err(|_| bad())?;
            entries.push((r, c, Complex64::new(re, im)));
        }
        Self::from_entries(BasisTag::Fock { dim, sector: None }, entries)
    }
}

pub(crate) fn fock_tag(basis: &FockBasis) -> BasisTag {
    BasisTag::Fock {
        dim: basis.dim(),
        sector: basis.sector(),
    }
}
