use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which site pairs carry a dipole-dipole coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DipoleRange {
    /// Only |i - j| = 1.
    #[default]
    NearestNeighbor,
    /// Every pair, with the 1/|i - j|³ falloff.
    FullInverseCube,
}

impl DipoleRange {
    pub fn includes(self, i: usize, j: usize) -> bool {
        match self {
            Self::NearestNeighbor => i.abs_diff(j) == 1,
            Self::FullInverseCube => i != j,
        }
    }
}

/// A finite open 1D chain. Site `i` sits at `z = i * spacing`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    num_sites: usize,
    spacing: f64,
    wavelength: Option<f64>,
    pub dipole_range: DipoleRange,
}

impl LatticeSpec {
    pub fn new(num_sites: usize, spacing: f64) -> Result<Self> {
        if num_sites == 0 {
            return Err(Error::InvalidArgument(
                "lattice needs at least one site".into(),
            ));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "lattice spacing must be positive, got {spacing}"
            )));
        }
        Ok(Self {
            num_sites,
            spacing,
            wavelength: None,
            dipole_range: DipoleRange::default(),
        })
    }

    /// Lattice formed by a retro-reflected laser of the given wavelength;
    /// the spacing is half the wavelength.
    pub fn from_wavelength(num_sites: usize, wavelength: f64) -> Result<Self> {
        let mut lattice = Self::new(num_sites, wavelength / 2.0)?;
        lattice.wavelength = Some(wavelength);
        Ok(lattice)
    }

    pub fn with_dipole_range(mut self, range: DipoleRange) -> Self {
        self.dipole_range = range;
        self
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn wavelength(&self) -> Option<f64> {
        self.wavelength
    }

    pub fn position(&self, site: usize) -> f64 {
        site as f64 * self.spacing
    }
}

/// External field `E(z) = E0 + g z` along the dipole axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec {
    base_field: f64,
    gradient: f64,
}

impl FieldSpec {
    /// `base_field` in V/m, `gradient` in V/m².
    pub fn new(base_field: f64, gradient: f64) -> Result<Self> {
        for (name, v) in [("base_field", base_field), ("gradient", gradient)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be finite and non-negative, got {v}"
                )));
            }
        }
        Ok(Self {
            base_field,
            gradient,
        })
    }

    pub fn base_field(&self) -> f64 {
        self.base_field
    }

    pub fn gradient(&self) -> f64 {
        self.gradient
    }

    pub fn at(&self, z: f64) -> f64 {
        self.base_field + self.gradient * z
    }
}
