use serde::{Deserialize, Serialize};

use super::lattice::DipoleRange;
use crate::error::{Diagnostic, Error, Result};

/// The three bosonic modes on each site: the two atomic species and the
/// molecule they bind into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    A = 0,
    B = 1,
    C = 2,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::A, Mode::B, Mode::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Mode::A => "a",
            Mode::B => "b",
            Mode::C => "c",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistics {
    #[default]
    Bose,
    /// Fermionic atoms, hard-core on each site, no tunneling.
    FermiAtoms,
}

/// Maximum occupation per mode per site, indexed by [`Mode`].
pub type OccupationCaps = [u32; 3];

/// Coefficients of the atom–molecule lattice Hamiltonian, in dimensionless
/// energy units.
///
/// `interactions[k][l]` is `U_kl` for modes `k, l`; the diagonal holds the
/// intra-species terms. `dipole_coupling[i][j]` is `D_ij`. The Raman term on
/// site `i` reads `rabi[i] * (e^{i phase} c⁺ab + e^{-i phase} a⁺b⁺c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianParams {
    pub tunneling: [f64; 3],
    pub rabi: Vec<f64>,
    pub raman_phase: Vec<f64>,
    pub interactions: [[f64; 3]; 3],
    pub dipole_coupling: Vec<Vec<f64>>,
    pub dipole_range: DipoleRange,
    /// `None` means "no truncation": the caps equal the sector charges.
    pub caps: Option<OccupationCaps>,
    pub statistics: Statistics,
}

impl HamiltonianParams {
    /// All coefficients zero on an `num_sites`-site chain.
    pub fn zeros(num_sites: usize) -> Self {
        Self {
            tunneling: [0.0; 3],
            rabi: vec![0.0; num_sites],
            raman_phase: vec![0.0; num_sites],
            interactions: [[0.0; 3]; 3],
            dipole_coupling: vec![vec![0.0; num_sites]; num_sites],
            dipole_range: DipoleRange::NearestNeighbor,
            caps: None,
            statistics: Statistics::Bose,
        }
    }

    pub fn num_sites(&self) -> usize {
        self.rabi.len()
    }

    pub fn interaction(&self, k: Mode, l: Mode) -> f64 {
        self.interactions[k.index()][l.index()]
    }

    /// Sets `U_kl` and `U_lk` together.
    pub fn set_interaction(&mut self, k: Mode, l: Mode, value: f64) {
        self.interactions[k.index()][l.index()] = value;
        self.interactions[l.index()][k.index()] = value;
    }

    /// Sets `D_ij` and `D_ji` together.
    pub fn set_dipole(&mut self, i: usize, j: usize, value: f64) {
        self.dipole_coupling[i][j] = value;
        self.dipole_coupling[j][i] = value;
    }

    /// Fills the coupling matrix from a single nearest-neighbour strength.
    /// Under [`DipoleRange::FullInverseCube`] farther pairs get `D / k³`.
    pub fn set_uniform_dipole(&mut self, nearest: f64) {
        let m = self.num_sites();
        for i in 0..m {
            for j in 0..m {
                self.dipole_coupling[i][j] = if self.dipole_range.includes(i, j) {
                    nearest / (i.abs_diff(j) as f64).powi(3)
                } else {
                    0.0
                };
            }
        }
    }

    /// Occupation caps for a sector `(q1, q2)` with `q1 = Σ(n_a + n_c)` and
    /// `q2 = Σ(n_b + n_c)`.
    pub fn effective_caps(&self, q1: u32, q2: u32) -> OccupationCaps {
        let mut caps = self.caps.unwrap_or([q1, q2, q1.min(q2)]);
        if self.statistics == Statistics::FermiAtoms {
            caps[0] = caps[0].min(1);
            caps[1] = caps[1].min(1);
        }
        caps
    }

    /// Every violated invariant, each tagged with its field path. Empty means
    /// valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        let m = self.num_sites();
        if m == 0 {
            diags.push(Diagnostic::new("rabi", "at least one site is required"));
        }
        if self.raman_phase.len() != m {
            diags.push(Diagnostic::new(
                "raman_phase",
                format!("expected {m} entries, found {}", self.raman_phase.len()),
            ));
        }

        for mode in Mode::ALL {
            let t = self.tunneling[mode.index()];
            if !t.is_finite() {
                diags.push(Diagnostic::new(
                    format!("tunneling.{}", mode.label()),
                    "must be finite",
                ));
            }
        }
        for (i, &w) in self.rabi.iter().enumerate() {
            if !(w.is_finite() && w >= 0.0) {
                diags.push(Diagnostic::new(
                    format!("rabi[{i}]"),
                    format!("must be finite and non-negative, got {w}"),
                ));
            }
        }
        for (i, &p) in self.raman_phase.iter().enumerate() {
            if !p.is_finite() {
                diags.push(Diagnostic::new(
                    format!("raman_phase[{i}]"),
                    "must be finite",
                ));
            }
        }

        for k in Mode::ALL {
            for l in Mode::ALL {
                let u = self.interaction(k, l);
                let path = format!("interactions.{}{}", k.label(), l.label());
                if !u.is_finite() {
                    diags.push(Diagnostic::new(path, "must be finite"));
                } else if k.index() < l.index() && !close(u, self.interaction(l, k)) {
                    diags.push(Diagnostic::new(
                        path,
                        format!(
                            "U matrix not symmetric: U_{}{} = {u}, U_{}{} = {}",
                            k.label(),
                            l.label(),
                            l.label(),
                            k.label(),
                            self.interaction(l, k)
                        ),
                    ));
                }
            }
        }

        if self.dipole_coupling.len() != m || self.dipole_coupling.iter().any(|r| r.len() != m) {
            diags.push(Diagnostic::new(
                "dipole_coupling",
                format!("must be a {m}x{m} matrix"),
            ));
        } else {
            for i in 0..m {
                for j in 0..m {
                    let d = self.dipole_coupling[i][j];
                    let path = format!("dipole_coupling[{i}][{j}]");
                    if !d.is_finite() {
                        diags.push(Diagnostic::new(path, "must be finite"));
                    } else if !self.dipole_range.includes(i, j) {
                        if d != 0.0 {
                            diags.push(Diagnostic::new(
                                path,
                                format!("pair excluded by {:?} must be zero", self.dipole_range),
                            ));
                        }
                    } else if i < j && !close(d, self.dipole_coupling[j][i]) {
                        diags.push(Diagnostic::new(path, "D matrix not symmetric"));
                    }
                }
            }
        }

        if self.statistics == Statistics::FermiAtoms {
            for mode in [Mode::A, Mode::B] {
                if self.interaction(mode, mode) != 0.0 {
                    diags.push(Diagnostic::new(
                        format!("interactions.{0}{0}", mode.label()),
                        format!("U_{0}{0} must be 0 for fermionic atoms", mode.label()),
                    ));
                }
                if let Some(caps) = self.caps {
                    if caps[mode.index()] != 1 {
                        diags.push(Diagnostic::new(
                            format!("caps.{}", mode.label()),
                            "fermionic atoms require an occupation cap of 1",
                        ));
                    }
                }
            }
            for mode in Mode::ALL {
                if self.tunneling[mode.index()] != 0.0 {
                    diags.push(Diagnostic::new(
                        format!("tunneling.{}", mode.label()),
                        "tunneling must be 0 with fermi_atoms statistics (only on-site terms are modeled)",
                    ));
                }
            }
        }
        diags
    }

    /// [`validate`](Self::validate) folded into a `Result`.
    pub fn ensure_valid(&self) -> Result<()> {
        let diags = self.validate();
        if diags.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParams(diags))
        }
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}
