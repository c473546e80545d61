//! Joint Bell measurements on disjoint qubit pairs.
//!
//! Outcomes are cross Bell indices over the plan's pairs, in plan order. The
//! register is rotated pair by pair into Bell coordinates, after which each
//! outcome's branch is a contiguous slice of amplitudes over the unmeasured
//! qubits.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::bellkit::{frame_offset, to_bell_frame, CrossBellIndex};
use crate::error::{Error, Result};
use crate::statevec::{shift_of, StateVector};

/// Probabilities below this are treated as impossible outcomes.
pub const MIN_PROBABILITY: f64 = 1e-15;

/// The generator every seeded collapse uses.
pub type TrialRng = ChaCha20Rng;

/// Disjoint qubit pairs `(a, b)` measured jointly in the Bell basis, with
/// `a` as the first qubit of each Bell state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementPlan {
    pairs: Vec<(usize, usize)>,
}

impl MeasurementPlan {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidPlan("no pairs".into()));
        }
        let mut seen: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        if seen.contains(&0) {
            return Err(Error::InvalidPlan("qubits are numbered from 1".into()));
        }
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPlan("pairs overlap".into()));
        }
        Ok(Self { pairs })
    }

    /// Pairs `(N+1, 2N+1), …, (2N, 3N)`.
    pub fn teleportation(n_pairs: usize) -> Self {
        Self {
            pairs: (1..=n_pairs)
                .map(|k| (n_pairs + k, 2 * n_pairs + k))
                .collect(),
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn n_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn validate_for(&self, n_qubits: usize) -> Result<()> {
        if let Some(&(a, b)) = self
            .pairs
            .iter()
            .find(|&&(a, b)| a > n_qubits || b > n_qubits)
        {
            return Err(Error::InvalidPlan(format!(
                "pair ({a},{b}) outside a {n_qubits}-qubit register"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OutcomeRecord {
    pub outcome: CrossBellIndex,
    pub probability: f64,
    /// Normalized state of the unmeasured qubits, kept in ascending original
    /// order and renumbered from 1.
    pub collapsed: StateVector,
}

/// The register in Bell coordinates on the plan's pairs.
struct BellFrame {
    amps: Vec<Complex64>,
    n_pairs: usize,
    measured_offsets: Vec<usize>,
    rest_offsets: Vec<usize>,
    n_rest: usize,
}

impl BellFrame {
    fn new(state: &StateVector, plan: &MeasurementPlan) -> Result<Self> {
        let n = state.n_qubits();
        plan.validate_for(n)?;
        let mut amps = state.amplitudes().to_vec();
        to_bell_frame(&mut amps, n, plan.pairs());

        let measured: Vec<usize> = plan.pairs().iter().flat_map(|&(a, b)| [a, b]).collect();
        let rest: Vec<usize> = (1..=n).filter(|q| !measured.contains(q)).collect();
        let n_pairs = plan.n_pairs();
        let measured_offsets = (0..1usize << (2 * n_pairs))
            .map(|o| frame_offset(n, plan.pairs(), o))
            .collect();
        // rest index r (MSB = lowest surviving qubit) -> register offset
        let rest_offsets = (0..1usize << rest.len())
            .map(|r| {
                rest.iter().enumerate().fold(0usize, |acc, (k, &q)| {
                    acc | (((r >> (rest.len() - 1 - k)) & 1) << shift_of(n, q))
                })
            })
            .collect();
        Ok(Self {
            amps,
            n_pairs,
            measured_offsets,
            rest_offsets,
            n_rest: rest.len(),
        })
    }

    fn branch(&self, ordinal: usize) -> Vec<Complex64> {
        let base = self.measured_offsets[ordinal];
        self.rest_offsets
            .iter()
            .map(|&r| self.amps[base | r])
            .collect()
    }

    fn probability(&self, ordinal: usize) -> f64 {
        let base = self.measured_offsets[ordinal];
        self.rest_offsets
            .iter()
            .map(|&r| self.amps[base | r].norm_sqr())
            .sum()
    }

    fn probabilities(&self) -> Vec<f64> {
        (0..self.measured_offsets.len())
            .map(|o| self.probability(o))
            .collect()
    }

    fn record(&self, ordinal: usize) -> Result<OutcomeRecord> {
        let outcome = CrossBellIndex::from_ordinal(self.n_pairs, ordinal);
        let probability = self.probability(ordinal);
        if probability < MIN_PROBABILITY {
            return Err(Error::ZeroProbability {
                outcome: outcome.to_string(),
                probability,
            });
        }
        let collapsed = StateVector::new(self.n_rest, self.branch(ordinal))?.normalize();
        Ok(OutcomeRecord {
            outcome,
            probability,
            collapsed,
        })
    }
}

/// Unnormalized branch amplitudes `(⟨B^(outcome)| ⊗ 1)|state⟩` on the
/// unmeasured qubits.
pub fn branch_amplitudes(
    state: &StateVector,
    plan: &MeasurementPlan,
    outcome: &CrossBellIndex,
) -> Result<StateVector> {
    check_outcome(plan, outcome)?;
    let frame = BellFrame::new(state, plan)?;
    StateVector::new(frame.n_rest, frame.branch(outcome.ordinal()))
}

fn check_outcome(plan: &MeasurementPlan, outcome: &CrossBellIndex) -> Result<()> {
    if outcome.len() != plan.n_pairs() {
        return Err(Error::DimensionMismatch {
            left: plan.n_pairs(),
            right: outcome.len(),
        });
    }
    Ok(())
}

/// Born probabilities of every outcome, keyed in canonical order.
pub fn outcome_distribution(
    state: &StateVector,
    plan: &MeasurementPlan,
) -> Result<BTreeMap<CrossBellIndex, f64>> {
    let frame = BellFrame::new(state, plan)?;
    Ok(frame
        .probabilities()
        .into_iter()
        .enumerate()
        .map(|(o, p)| (CrossBellIndex::from_ordinal(plan.n_pairs(), o), p))
        .collect())
}

/// Random collapse using a generator seeded from `seed`.
pub fn collapse(state: &StateVector, plan: &MeasurementPlan, seed: u64) -> Result<OutcomeRecord> {
    collapse_with(state, plan, &mut TrialRng::seed_from_u64(seed))
}

/// Random collapse drawing exactly one uniform variate from `rng` and
/// inverting the cumulative distribution in canonical outcome order.
pub fn collapse_with<R: Rng + ?Sized>(
    state: &StateVector,
    plan: &MeasurementPlan,
    rng: &mut R,
) -> Result<OutcomeRecord> {
    PreparedMeasurement::new(state, plan)?.sample(rng)
}

/// A register already rotated into the Bell frame of a plan, for repeated
/// sampling of the same state.
pub struct PreparedMeasurement {
    frame: BellFrame,
    probabilities: Vec<f64>,
}

impl PreparedMeasurement {
    pub fn new(state: &StateVector, plan: &MeasurementPlan) -> Result<Self> {
        let frame = BellFrame::new(state, plan)?;
        let probabilities = frame.probabilities();
        Ok(Self {
            frame,
            probabilities,
        })
    }

    /// Born probabilities indexed by outcome ordinal.
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Same draw as [`collapse_with`].
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<OutcomeRecord> {
        let u: f64 = rng.random();
        let ordinal =
            sample_index(&self.probabilities, u).ok_or_else(|| Error::ZeroProbability {
                outcome: "any".into(),
                probability: self.probabilities.iter().cloned().fold(0.0, f64::max),
            })?;
        self.frame.record(ordinal)
    }

    pub fn forced(&self, outcome: &CrossBellIndex) -> Result<OutcomeRecord> {
        if outcome.len() != self.frame.n_pairs {
            return Err(Error::DimensionMismatch {
                left: self.frame.n_pairs,
                right: outcome.len(),
            });
        }
        self.frame.record(outcome.ordinal())
    }
}

/// Inverse CDF over `probabilities`; mass lost to rounding falls on the last
/// possible outcome.
pub(crate) fn sample_index(probabilities: &[f64], u: f64) -> Option<usize> {
    let total: f64 = probabilities.iter().sum();
    let target = u * total;
    let mut cumulative = 0.0;
    let mut last = None;
    for (i, &p) in probabilities.iter().enumerate() {
        if p < MIN_PROBABILITY {
            continue;
        }
        cumulative += p;
        last = Some(i);
        if target < cumulative {
            return last;
        }
    }
    last
}

/// Projects onto `outcome` deterministically; `probability` is the true Born
/// probability of that branch.
pub fn collapse_forced(
    state: &StateVector,
    plan: &MeasurementPlan,
    outcome: &CrossBellIndex,
) -> Result<OutcomeRecord> {
    check_outcome(plan, outcome)?;
    BellFrame::new(state, plan)?.record(outcome.ordinal())
}
