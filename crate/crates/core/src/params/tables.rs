use serde::Serialize;

use super::{cnot_rate, delta_nu_with, rate_from_frequency, FrequencyConvention};
use crate::error::{Error, Result};
use crate::model::{FieldSpec, LatticeSpec, SpeciesCatalog};
use crate::numfmt::{round6, sig6};

#[derive(Debug, Clone, PartialEq)]
pub struct TableEntry {
    pub species: String,
    pub value: f64,
}

#[derive(Serialize)]
struct Row<'a> {
    species: &'a str,
    value: f64,
    unit: &'a str,
}

fn write_csv(entries: &[TableEntry], unit: &str) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["species", "value", "unit"])
        .map_err(csv_err)?;
    for e in entries {
        w.write_record([e.species.as_str(), &sig6(e.value), unit])
            .map_err(csv_err)?;
    }
    into_string(w)
}

fn write_json(entries: &[TableEntry], unit: &str) -> String {
    let rows: Vec<Row> = entries
        .iter()
        .map(|e| Row {
            species: &e.species,
            value: round6(e.value),
            unit,
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("table rows serialize")
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

pub(crate) fn into_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Addressing frequency per species at fixed gradient and spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTable {
    pub entries: Vec<TableEntry>,
    /// V/m²
    pub gradient: f64,
    /// m
    pub spacing: f64,
    pub convention: FrequencyConvention,
}

impl FrequencyTable {
    pub const UNIT: &'static str = "Hz";

    pub fn get(&self, species: &str) -> Option<f64> {
        lookup(&self.entries, species)
    }

    pub fn to_csv(&self) -> Result<String> {
        write_csv(&self.entries, Self::UNIT)
    }

    pub fn to_json(&self) -> String {
        write_json(&self.entries, Self::UNIT)
    }
}

/// CNOT gates per second per species at fixed spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct RateTable {
    pub entries: Vec<TableEntry>,
    pub spacing: f64,
}

impl RateTable {
    pub const UNIT: &'static str = "1/s";

    pub fn get(&self, species: &str) -> Option<f64> {
        lookup(&self.entries, species)
    }

    pub fn to_csv(&self) -> Result<String> {
        write_csv(&self.entries, Self::UNIT)
    }

    pub fn to_json(&self) -> String {
        write_json(&self.entries, Self::UNIT)
    }
}

fn lookup(entries: &[TableEntry], species: &str) -> Option<f64> {
    entries
        .iter()
        .find(|e| e.species == species)
        .map(|e| e.value)
}

pub fn build_frequency_table(
    catalog: &SpeciesCatalog,
    field: &FieldSpec,
    lattice: &LatticeSpec,
    convention: FrequencyConvention,
) -> Result<FrequencyTable> {
    let entries = catalog
        .iter()
        .map(|s| {
            Ok(TableEntry {
                species: s.name.clone(),
                value: delta_nu_with(
                    s.dipole_moment,
                    field.gradient(),
                    lattice.spacing(),
                    convention,
                )?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FrequencyTable {
        entries,
        gradient: field.gradient(),
        spacing: lattice.spacing(),
        convention,
    })
}

/// Homonuclear pairs: both qubits of the CNOT carry the same species.
pub fn build_rate_table(catalog: &SpeciesCatalog, lattice: &LatticeSpec) -> Result<RateTable> {
    let r = lattice.spacing();
    let entries = catalog
        .iter()
        .map(|s| {
            Ok(TableEntry {
                species: s.name.clone(),
                value: cnot_rate(s.dipole_moment, s.dipole_moment, r)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RateTable {
        entries,
        spacing: r,
    })
}

/// Direct CNOT rate against the rate reconstructed from the addressing
/// frequency alone.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyRow {
    pub species: String,
    pub rate_direct: f64,
    pub rate_from_frequency: f64,
    pub relative_residual: f64,
}

/// Requires a [`FrequencyConvention::ReducedPlanck`] table with the same
/// spacing as `rates`.
pub fn consistency_rows(freq: &FrequencyTable, rates: &RateTable) -> Result<Vec<ConsistencyRow>> {
    if freq.convention != FrequencyConvention::ReducedPlanck {
        return Err(Error::InvalidArgument(
            "consistency identity assumes the reduced-Planck frequency convention".into(),
        ));
    }
    if freq.spacing != rates.spacing {
        return Err(Error::InvalidArgument(
            "tables use different spacings".into(),
        ));
    }
    rates
        .entries
        .iter()
        .map(|e| {
            let nu = freq.get(&e.species).ok_or_else(|| {
                Error::InvalidArgument(format!("{} missing from frequency table", e.species))
            })?;
            let derived = rate_from_frequency(nu, freq.gradient, freq.spacing)?;
            let residual = if e.value == 0.0 {
                derived.abs()
            } else {
                (derived - e.value).abs() / e.value.abs()
            };
            Ok(ConsistencyRow {
                species: e.species.clone(),
                rate_direct: e.value,
                rate_from_frequency: derived,
                relative_residual: residual,
            })
        })
        .collect()
}

impl ConsistencyRow {
    pub fn rows_to_csv(rows: &[ConsistencyRow]) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "species",
            "rate_direct",
            "rate_from_frequency",
            "relative_residual",
        ])
        .map_err(csv_err)?;
        for r in rows {
            w.write_record([
                r.species.as_str(),
                &sig6(r.rate_direct),
                &sig6(r.rate_from_frequency),
                &sig6(r.relative_residual),
            ])
            .map_err(csv_err)?;
        }
        into_string(w)
    }

    pub fn rows_to_json(rows: &[ConsistencyRow]) -> String {
        let rounded: Vec<ConsistencyRow> = rows
            .iter()
            .map(|r| ConsistencyRow {
                species: r.species.clone(),
                rate_direct: round6(r.rate_direct),
                rate_from_frequency: round6(r.rate_from_frequency),
                relative_residual: round6(r.relative_residual),
            })
            .collect();
        serde_json::to_string_pretty(&rounded).expect("rows serialize")
    }
}
