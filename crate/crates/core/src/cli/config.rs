use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::gates::Backend;
use crate::model::{
    constants::volts_per_cm2, DipoleRange, EnergyUnit, FieldSpec, HamiltonianParams, LatticeSpec,
    Mode, OccupationCaps, SpeciesCatalog, Statistics,
};
use crate::params::{dipole_coupling, FrequencyConvention};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

/// Everything a run needs. Unknown keys anywhere are rejected.
///
/// ```toml
/// species = ["KRb", "LiCs"]   # omitted: the whole built-in catalog
/// format = "csv"
/// seed = 42
/// shots = 10000
/// backend = "fock"
/// schedule = "bell.toml"      # relative to this file
///
/// [lattice]
/// sites = 2
/// spacing = 420e-9            # m; or `wavelength` (spacing = wavelength / 2)
///
/// [field]
/// base = 0.0                  # V/m
/// gradient = 1.0              # V/cm², or `gradient_si` in V/m²
///
/// [hamiltonian]
/// reference_energy = 1e-30    # J, the energy unit of every entry below
/// tunneling = [0.0, 0.0, 0.0]
/// dipole = 0.5                # nearest-neighbour D, or `dipole_species = "KRb"`
///
/// [hamiltonian.interactions]
/// ab = 1.0
/// ```
#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub species: Option<Vec<String>>,
    /// Extra catalog replacing the built-in one.
    pub species_file: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
    pub seed: Option<u64>,
    #[serde(default)]
    pub shots: usize,
    #[serde(default)]
    pub backend: Backend,
    pub schedule: Option<PathBuf>,
    #[serde(default)]
    pub lattice: LatticeConfig,
    #[serde(default)]
    pub field: FieldConfig,
    #[serde(default)]
    pub hamiltonian: HamiltonianConfig,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    #[serde(default = "default_sites")]
    pub sites: usize,
    pub spacing: Option<f64>,
    pub wavelength: Option<f64>,
    #[serde(default)]
    pub dipole_range: DipoleRange,
}

fn default_sites() -> usize {
    2
}

pub const DEFAULT_SPACING: f64 = 420e-9;

impl Default for LatticeConfig {
    fn default() -> Self {
        Self {
            sites: default_sites(),
            spacing: Some(DEFAULT_SPACING),
            wavelength: None,
            dipole_range: DipoleRange::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    #[serde(default)]
    pub base: f64,
    /// V/cm².
    pub gradient: Option<f64>,
    /// V/m².
    pub gradient_si: Option<f64>,
    #[serde(default)]
    pub convention: FrequencyConvention,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianConfig {
    pub reference_energy: Option<f64>,
    #[serde(default)]
    pub tunneling: [f64; 3],
    #[serde(default)]
    pub interactions: InteractionConfig,
    pub dipole: Option<f64>,
    pub dipole_species: Option<String>,
    pub caps: Option<OccupationCaps>,
    #[serde(default)]
    pub statistics: Statistics,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct InteractionConfig {
    #[serde(default)]
    pub aa: f64,
    #[serde(default)]
    pub bb: f64,
    #[serde(default)]
    pub cc: f64,
    #[serde(default)]
    pub ab: f64,
    #[serde(default)]
    pub ac: f64,
    #[serde(default)]
    pub bc: f64,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let config: Self =
            toml::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))?;
        config.check()?;
        Ok(config)
    }

    /// Reads `path` and resolves relative file references against its
    /// directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        let mut config = Self::parse(&text)?;
        let dir = path.parent().unwrap_or(Path::new(""));
        for p in [&mut config.schedule, &mut config.species_file]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        }
        Ok(config)
    }

    pub fn check(&self) -> Result<()> {
        if self.lattice.spacing.is_some() == self.lattice.wavelength.is_some() {
            return Err(Error::InvalidArgument(
                "lattice: give exactly one of `spacing` or `wavelength`".into(),
            ));
        }
        if self.field.gradient.is_some() && self.field.gradient_si.is_some() {
            return Err(Error::InvalidArgument(
                "field: give at most one of `gradient` or `gradient_si`".into(),
            ));
        }
        if self.shots > 0 && self.seed.is_none() {
            return Err(Error::InvalidArgument(format!(
                "{} shots requested but no `seed` given",
                self.shots
            )));
        }
        let h = &self.hamiltonian;
        if h.dipole.is_some() && h.dipole_species.is_some() {
            return Err(Error::InvalidArgument(
                "hamiltonian: give at most one of `dipole` or `dipole_species`".into(),
            ));
        }
        if h.dipole_species.is_some() && h.reference_energy.is_none() {
            return Err(Error::InvalidArgument(
                "hamiltonian: `dipole_species` needs `reference_energy`".into(),
            ));
        }
        Ok(())
    }

    /// The catalog before the `species` selection.
    pub fn full_catalog(&self) -> Result<SpeciesCatalog> {
        match &self.species_file {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))?;
                SpeciesCatalog::parse(&text)
            }
            None => Ok(SpeciesCatalog::builtin()),
        }
    }

    pub fn catalog(&self) -> Result<SpeciesCatalog> {
        let full = self.full_catalog()?;
        match &self.species {
            Some(names) => full.select(names),
            None => Ok(full),
        }
    }

    pub fn lattice(&self) -> Result<LatticeSpec> {
        let spec = match (self.lattice.spacing, self.lattice.wavelength) {
            (Some(r), None) => LatticeSpec::new(self.lattice.sites, r)?,
            (None, Some(w)) => LatticeSpec::from_wavelength(self.lattice.sites, w)?,
            _ => {
                return Err(Error::InvalidArgument(
                    "lattice: spacing or wavelength".into(),
                ))
            }
        };
        Ok(spec.with_dipole_range(self.lattice.dipole_range))
    }

    /// Gradient defaults to 1 V/cm².
    pub fn field(&self) -> Result<FieldSpec> {
        let g = match (self.field.gradient, self.field.gradient_si) {
            (_, Some(si)) => si,
            (Some(cgs), None) => volts_per_cm2(cgs),
            (None, None) => volts_per_cm2(1.0),
        };
        FieldSpec::new(self.field.base, g)
    }

    /// Nearest-neighbour dipole coupling in dimensionless units, if any.
    pub fn dipole(&self) -> Result<Option<f64>> {
        let h = &self.hamiltonian;
        if let Some(d) = h.dipole {
            return Ok(Some(d));
        }
        let Some(name) = &h.dipole_species else {
            return Ok(None);
        };
        let catalog = self.full_catalog()?;
        let species = catalog
            .get(name)
            .ok_or_else(|| Error::UnknownSpecies(name.clone()))?;
        let unit = EnergyUnit::new(h.reference_energy.unwrap_or(f64::NAN))?;
        let r = self.lattice()?.spacing();
        let joules = dipole_coupling(species.dipole_moment, species.dipole_moment, r, 1)?;
        Ok(Some(unit.energy_to_dimensionless(joules)))
    }

    /// Hamiltonian on `num_sites` sites with all Raman couplings off.
    pub fn hamiltonian(&self, num_sites: usize) -> Result<HamiltonianParams> {
        let h = &self.hamiltonian;
        let mut p = HamiltonianParams::zeros(num_sites);
        p.tunneling = h.tunneling;
        let u = h.interactions;
        for (k, l, v) in [
            (Mode::A, Mode::A, u.aa),
            (Mode::B, Mode::B, u.bb),
            (Mode::C, Mode::C, u.cc),
            (Mode::A, Mode::B, u.ab),
            (Mode::A, Mode::C, u.ac),
            (Mode::B, Mode::C, u.bc),
        ] {
            p.set_interaction(k, l, v);
        }
        p.dipole_range = self.lattice.dipole_range;
        if let Some(d) = self.dipole()? {
            p.set_uniform_dipole(d);
        }
        p.caps = h.caps;
        p.statistics = h.statistics;
        p.ensure_valid()?;
        Ok(p)
    }
}
