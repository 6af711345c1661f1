use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{bitstring, RegisterState};
use crate::params::tables::{csv_err, into_string};

/// Outcomes of repeated projective readout in the computational basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub num_qubits: usize,
    pub seed: u64,
    /// Basis index observed in each shot.
    pub outcomes: Vec<usize>,
}

impl MeasurementRecord {
    pub fn shots(&self) -> usize {
        self.outcomes.len()
    }

    pub fn bitstrings(&self) -> impl Iterator<Item = String> + '_ {
        self.outcomes.iter().map(|&k| bitstring(k, self.num_qubits))
    }

    /// Occurrences of each basis index.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0; 1 << self.num_qubits];
        for &k in &self.outcomes {
            counts[k] += 1;
        }
        counts
    }

    /// `shot,bitstring` rows, shots numbered from 0.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["shot", "bitstring"]).map_err(csv_err)?;
        for (shot, bits) in self.bitstrings().enumerate() {
            w.write_record([shot.to_string(), bits]).map_err(csv_err)?;
        }
        into_string(w)
    }
}

/// Draws `shots` independent Born-rule samples.
///
/// Shot `k` consumes exactly one `u64` (words `2k`, `2k+1`) of a ChaCha8
/// stream seeded with `seed`, so any shot can be regenerated on its own with
/// [`shot_uniform`] and the record is identical however shots are scheduled.
pub fn measure(state: &RegisterState, shots: usize, seed: u64) -> Result<MeasurementRecord> {
    let n = state
        .num_qubits()
        .ok_or_else(|| Error::InvalidArgument("measurement needs a qubit-basis state".into()))?;
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let cumulative: Vec<f64> = state
        .probabilities()
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let total = *cumulative.last().expect("non-empty state");
    let last_nonzero = state
        .amplitudes()
        .iter()
        .rposition(|a| a.norm_sqr() > 0.0)
        .expect("normalized state has support");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outcomes = (0..shots)
        .map(|_| {
            let u = rng.random::<f64>() * total;
            cumulative.partition_point(|&c| c <= u).min(last_nonzero)
        })
        .collect();
    Ok(MeasurementRecord {
        num_qubits: n,
        seed,
        outcomes,
    })
}

/// The uniform variate that shot `shot` of [`measure`] uses.
pub fn shot_uniform(seed: u64, shot: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(2 * shot as u128);
    rng.random::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{bell_prep, init_register, BellState};
    use crate::model::BasisTag;
    use num_complex::Complex64;

    #[test]
    fn basis_state_always_same_outcome() {
        let rec = measure(&init_register(2).unwrap(), 500, 1).unwrap();
        assert!(rec.bitstrings().all(|b| b == "00"));
    }

    #[test]
    fn bell_state_has_no_forbidden_outcomes() {
        let phi = measure(&BellState::PhiPlus.state(), 10_000, 99).unwrap();
        let counts = phi.counts();
        assert_eq!(counts[1] + counts[2], 0);
        assert!(counts[0] > 0 && counts[3] > 0);
        let prep = bell_prep().unwrap();
        let psi = measure(&prep.output, 10_000, 99).unwrap().counts();
        assert_eq!(psi[0] + psi[3], 0);
    }

    #[test]
    fn uniform_state_frequencies_within_five_sigma() {
        let shots = 100_000;
        let psi = RegisterState::normalized(vec![Complex64::new(1.0, 0.0); 4], BasisTag::Qubits(2))
            .unwrap();
        let counts = measure(&psi, shots, 2024).unwrap().counts();
        // binomial σ = sqrt(N p (1-p)) with p = 1/4
        let sigma = (shots as f64 * 0.25 * 0.75).sqrt();
        for k in counts {
            assert!((k as f64 - shots as f64 * 0.25).abs() < 5.0 * sigma, "{k}");
        }
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let psi = bell_prep().unwrap().output;
        let a = measure(&psi, 2000, 7).unwrap();
        let b = measure(&psi, 2000, 7).unwrap();
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
        assert_ne!(a, measure(&psi, 2000, 8).unwrap());
    }

    #[test]
    fn shots_are_independently_addressable() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for shot in 0..20 {
            assert_eq!(rng.random::<f64>(), shot_uniform(5, shot));
        }
    }

    #[test]
    fn csv_layout_and_errors() {
        let rec = measure(&init_register(1).unwrap(), 2, 0).unwrap();
        assert_eq!(rec.to_csv().unwrap(), "shot,bitstring\n0,0\n1,0\n");
        assert!(measure(&init_register(1).unwrap(), 0, 0).is_err());
    }
}
