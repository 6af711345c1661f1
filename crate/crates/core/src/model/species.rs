use std::collections::HashSet;

use serde::Deserialize;

use super::constants::debye_to_si;
use crate::error::{Error, Result};

/// A heteronuclear molecule and its ground-state electric dipole moment.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeSpecies {
    pub name: String,
    /// C·m
    pub dipole_moment: f64,
}

impl MoleculeSpecies {
    pub fn new(name: impl Into<String>, dipole_moment: f64) -> Result<Self> {
        if !(dipole_moment.is_finite() && dipole_moment >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "dipole moment must be finite and non-negative, got {dipole_moment}"
            )));
        }
        Ok(Self {
            name: name.into(),
            dipole_moment,
        })
    }

    pub fn from_debye(name: impl Into<String>, debye: f64) -> Result<Self> {
        Self::new(name, debye_to_si(debye)?)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    #[serde(default)]
    species: Vec<SpeciesRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpeciesRecord {
    name: String,
    dipole_debye: f64,
}

const BUILTIN: &str = include_str!("../../data/species.toml");

/// An ordered list of species with unique names.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpeciesCatalog {
    species: Vec<MoleculeSpecies>,
}

impl SpeciesCatalog {
    pub fn new(species: Vec<MoleculeSpecies>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &species {
            if !seen.insert(s.name.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate species name {:?}",
                    s.name
                )));
            }
        }
        Ok(Self { species })
    }

    /// The ten XY dimers shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("built-in species catalog is valid")
    }

    /// Parses the TOML catalog format:
    ///
    /// ```toml
    /// [[species]]
    /// name = "RbCs"
    /// dipole_debye = 1.26
    /// ```
    ///
    /// Unknown keys are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let file: CatalogFile =
            toml::from_str(text).map_err(|e| Error::Parse(format!("species catalog: {e}")))?;
        let species = file
            .species
            .into_iter()
            .map(|r| MoleculeSpecies::from_debye(r.name, r.dipole_debye))
            .collect::<Result<Vec<_>>>()?;
        Self::new(species)
    }

    pub fn get(&self, name: &str) -> Option<&MoleculeSpecies> {
        self.species.iter().find(|s| s.name == name)
    }

    /// Restricts the catalog to `names`, in the given order.
    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Result<Self> {
        let species = names
            .iter()
            .map(|n| {
                self.get(n.as_ref())
                    .cloned()
                    .ok_or_else(|| Error::UnknownSpecies(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(species)
    }

    pub fn iter(&self) -> impl Iterator<Item = &MoleculeSpecies> {
        self.species.iter()
    }

    pub fn len(&self) -> usize {
        self.species.len()
    }

    pub fn is_empty(&self) -> bool {
        self.species.is_empty()
    }
}
