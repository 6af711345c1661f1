//! Closed-form calculators in SI units: addressing frequencies, dipole-dipole
//! couplings, field dominance, phase accumulation and gate rates.

pub(crate) mod tables;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::constants::{EPSILON0, HBAR};
use crate::model::{FieldSpec, LatticeSpec};

pub use tables::{
    build_frequency_table, build_rate_table, consistency_rows, ConsistencyRow, FrequencyTable,
    RateTable, TableEntry,
};

/// Default acceptance threshold for [`dominance_ratio`].
pub const DEFAULT_DOMINANCE_THRESHOLD: f64 = 100.0;

/// How an energy splitting is turned into a frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrequencyConvention {
    /// `Δν = ΔE / ħ`. This is what the published addressing table uses.
    #[default]
    ReducedPlanck,
    /// `Δν = ΔE / h`, the physical cycle frequency.
    Planck,
}

impl FrequencyConvention {
    fn divisor(self) -> f64 {
        match self {
            Self::ReducedPlanck => HBAR,
            Self::Planck => 2.0 * PI * HBAR,
        }
    }
}

fn check_nonneg(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{name} must be finite and non-negative, got {v}"
        )))
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

/// Transition-frequency difference between neighbouring sites, `g d r / ħ`.
///
/// `d` in C·m, `g` in V/m², `r` in m; result in Hz.
pub fn delta_nu(d: f64, g: f64, r: f64) -> Result<f64> {
    delta_nu_with(d, g, r, FrequencyConvention::ReducedPlanck)
}

pub fn delta_nu_with(d: f64, g: f64, r: f64, convention: FrequencyConvention) -> Result<f64> {
    check_nonneg("dipole moment", d)?;
    check_nonneg("gradient", g)?;
    check_positive("spacing", r)?;
    Ok(g * d * r / convention.divisor())
}

/// Dipole moment that produces the splitting `delta_nu`: `Δν ħ / (g r)`.
pub fn invert_delta_nu(delta_nu: f64, g: f64, r: f64) -> Result<f64> {
    check_nonneg("frequency", delta_nu)?;
    check_positive("gradient", g)?;
    check_positive("spacing", r)?;
    Ok(delta_nu * HBAR / (g * r))
}

/// Coupling between co-aligned dipoles `separation` sites apart,
/// `d1 d2 / (4π ε0 (r k)³)` in joules.
pub fn dipole_coupling(d1: f64, d2: f64, r: f64, separation: u32) -> Result<f64> {
    if separation < 1 {
        return Err(Error::InvalidArgument(
            "site separation must be at least 1".into(),
        ));
    }
    check_nonneg("dipole moment", d1)?;
    check_nonneg("dipole moment", d2)?;
    check_positive("spacing", r)?;
    let distance = r * separation as f64;
    Ok(d1 * d2 / (4.0 * PI * EPSILON0 * distance.powi(3)))
}

/// Ratio of the weakest external field on the chain to the internal field
/// produced at `site` by the other molecules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DominanceRatio {
    Finite(f64),
    /// No neighbouring molecule: the internal field vanishes.
    Unconstrained,
}

impl DominanceRatio {
    pub fn satisfies(self, threshold: f64) -> bool {
        match self {
            Self::Finite(r) => r >= threshold,
            Self::Unconstrained => true,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Self::Finite(r) => r,
            Self::Unconstrained => f64::INFINITY,
        }
    }
}

/// `min_z |E0 + g z| / |E_int(site)|`, where the internal field sums
/// `d n_cj / (4π ε0 (r |j - i|)³)` over all other sites. `molecules[j]` is the
/// molecular occupation `n_cj` (0 or 1).
pub fn dominance_ratio(
    field: &FieldSpec,
    site: usize,
    molecules: &[u8],
    d: f64,
    lattice: &LatticeSpec,
) -> Result<DominanceRatio> {
    let m = lattice.num_sites();
    if molecules.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: molecules.len(),
        });
    }
    if site >= m {
        return Err(Error::SiteOutOfRange { site, len: m });
    }
    if let Some(bad) = molecules.iter().find(|&&n| n > 1) {
        return Err(Error::InvalidArgument(format!(
            "molecular occupation must be 0 or 1, got {bad}"
        )));
    }
    check_nonneg("dipole moment", d)?;

    let internal: f64 = molecules
        .iter()
        .enumerate()
        .filter(|&(j, &n)| j != site && n == 1)
        .map(|(j, _)| {
            let dist = lattice.spacing() * j.abs_diff(site) as f64;
            d / (4.0 * PI * EPSILON0 * dist.powi(3))
        })
        .sum();
    if internal == 0.0 {
        return Ok(DominanceRatio::Unconstrained);
    }
    let weakest = (0..m)
        .map(|i| field.at(lattice.position(i)).abs())
        .fold(f64::INFINITY, f64::min);
    Ok(DominanceRatio::Finite(weakest / internal))
}

/// Conditional phase `D t / ħ` accumulated over `t` seconds.
pub fn phase_shift(d12: f64, t: f64) -> Result<f64> {
    check_nonneg("duration", t)?;
    if !d12.is_finite() {
        return Err(Error::InvalidArgument("coupling must be finite".into()));
    }
    Ok(d12 * t / HBAR)
}

/// Duration of a phase gate with angle `phi`: `phi ħ / D`.
pub fn phase_gate_duration(d12: f64, phi: f64) -> Result<f64> {
    check_positive("coupling", d12)?;
    check_nonneg("phase", phi)?;
    Ok(phi * HBAR / d12)
}

/// CNOT gates per second when each is limited by a π phase gate,
/// `d1 d2 / (4π² ε0 ħ r³)`.
pub fn cnot_rate(d1: f64, d2: f64, r: f64) -> Result<f64> {
    Ok(dipole_coupling(d1, d2, r, 1)? / (PI * HBAR))
}

/// The CNOT rate recovered from an addressing frequency alone,
/// `Δν² ħ / (4π² ε0 g² r⁵)`. Never touches the dipole moment.
pub fn rate_from_frequency(delta_nu: f64, g: f64, r: f64) -> Result<f64> {
    check_nonneg("frequency", delta_nu)?;
    check_positive("gradient", g)?;
    check_positive("spacing", r)?;
    Ok(delta_nu * delta_nu * HBAR / (4.0 * PI * PI * EPSILON0 * g * g * r.powi(5)))
}

/// Largest population a resonant pulse of Rabi angular frequency `rabi`
/// transfers on a neighbour detuned by `delta_nu`: `Ω² / (Ω² + (2π Δν)²)`.
pub fn crosstalk_bound(rabi: f64, delta_nu: f64) -> Result<f64> {
    check_nonneg("rabi frequency", rabi)?;
    if !delta_nu.is_finite() {
        return Err(Error::InvalidArgument("frequency must be finite".into()));
    }
    if rabi == 0.0 {
        return Ok(0.0);
    }
    let detuning = 2.0 * PI * delta_nu;
    Ok(rabi * rabi / (rabi * rabi + detuning * detuning))
}
