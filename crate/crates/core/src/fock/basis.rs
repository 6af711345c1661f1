use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::model::{FockState, OccupationCaps, Sector};

/// Largest chain the simulator accepts.
pub const MAX_SITES: usize = 5;
/// Largest Hilbert-space dimension the dense backends accept.
pub const MAX_DIMENSION: usize = 1024;

/// Ordered Fock states, in descending lexicographic order of the flattened
/// occupation tuple `(n_a0, n_b0, n_c0, n_a1, ...)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockBasis {
    num_sites: usize,
    states: Vec<FockState>,
    sector: Option<Sector>,
    index: HashMap<FockState, usize>,
}

impl FockBasis {
    /// Builds a basis from arbitrary states; they are sorted into canonical
    /// order. All states must share a site count and be distinct.
    pub fn from_states(mut states: Vec<FockState>) -> Result<Self> {
        let num_sites = states.first().map_or(0, FockState::num_sites);
        if states.iter().any(|s| s.num_sites() != num_sites) {
            return Err(Error::InvalidArgument(
                "states have different site counts".into(),
            ));
        }
        states.sort_unstable_by(|a, b| b.cmp(a));
        let sectors: BTreeSet<Sector> = states.iter().map(FockState::sector).collect();
        let sector = if sectors.len() == 1 {
            sectors.into_iter().next()
        } else {
            None
        };
        let index: HashMap<FockState, usize> = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        if index.len() != states.len() {
            return Err(Error::InvalidArgument(
                "duplicate Fock state in basis".into(),
            ));
        }
        Ok(Self {
            num_sites,
            states,
            sector,
            index,
        })
    }

    /// Union of two bases over the same chain.
    pub fn merge(&self, other: &FockBasis) -> Result<Self> {
        let mut states = self.states.clone();
        states.extend(
            other
                .states
                .iter()
                .filter(|s| !self.index.contains_key(*s))
                .cloned(),
        );
        Self::from_states(states)
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// The common sector, or `None` for an empty or mixed basis.
    pub fn sector(&self) -> Option<Sector> {
        self.sector
    }

    pub fn states(&self) -> &[FockState] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &FockState {
        &self.states[i]
    }

    pub fn index_of(&self, state: &FockState) -> Option<usize> {
        self.index.get(state).copied()
    }
}

/// Every occupation configuration on `num_sites` sites with the given sector
/// charges and per-mode caps. An empty sector yields an empty basis.
pub fn enumerate_basis(
    num_sites: usize,
    sector: Sector,
    caps: OccupationCaps,
) -> Result<FockBasis> {
    if num_sites == 0 {
        return Err(Error::InvalidArgument(
            "basis needs at least one site".into(),
        ));
    }
    if num_sites > MAX_SITES {
        return Err(Error::ResourceLimit(format!(
            "{num_sites} sites exceeds the limit of {MAX_SITES}"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(num_sites);
    fill(
        num_sites,
        sector.q1,
        sector.q2,
        &caps,
        &mut current,
        &mut out,
    )?;
    let index = out
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    Ok(FockBasis {
        num_sites,
        sector: (!out.is_empty()).then_some(sector),
        states: out,
        index,
    })
}

fn fill(
    sites_left: usize,
    q1: u32,
    q2: u32,
    caps: &OccupationCaps,
    current: &mut Vec<[u32; 3]>,
    out: &mut Vec<FockState>,
) -> Result<()> {
    if sites_left == 0 {
        if q1 == 0 && q2 == 0 {
            if out.len() == MAX_DIMENSION {
                return Err(Error::ResourceLimit(format!(
                    "basis dimension exceeds the limit of {MAX_DIMENSION}"
                )));
            }
            out.push(FockState::new(current.clone()));
        }
        return Ok(());
    }
    // Descending order per component gives descending lexicographic order
    // of the whole tuple.
    for na in (0..=caps[0].min(q1)).rev() {
        for nb in (0..=caps[1].min(q2)).rev() {
            let nc_max = caps[2].min(q1 - na).min(q2 - nb);
            for nc in (0..=nc_max).rev() {
                current.push([na, nb, nc]);
                fill(
                    sites_left - 1,
                    q1 - na - nc,
                    q2 - nb - nc,
                    caps,
                    current,
                    out,
                )?;
                current.pop();
            }
        }
    }
    Ok(())
}
