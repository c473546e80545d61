//! End-to-end teleportation of an `N`-qubit state through a cross Bell channel.
//!
//! Register layout for `N` pairs: Bob holds qubits `1..=N`, Alice holds her
//! channel halves `N+1..=2N` and the unknown state on `2N+1..=3N`. Alice
//! Bell-measures pairs `(N+k, 2N+k)` and sends the outcome labels; Bob undoes
//! `T[R_k][S_k]` on each of his qubits.

use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bellkit::{composite_correction, cross_bell_state, CrossBellIndex};
use crate::error::{Error, Result};
use crate::measurement::{self, MeasurementPlan, OutcomeRecord, PreparedMeasurement, TrialRng};
use crate::statevec::{check_cap, StateVector};

/// Normalization slack accepted for the unknown input state.
pub const INPUT_NORM_TOL: f64 = 1e-9;

/// Fidelity tolerance for a successful teleportation.
pub const FIDELITY_TOL: f64 = 1e-10;

/// The cross Bell state `B^(R₁…R_N)` shared by Bob and Alice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ChannelSpec {
    labels: CrossBellIndex,
}

impl ChannelSpec {
    pub fn new(labels: CrossBellIndex) -> Result<Self> {
        check_cap(3 * labels.len())?;
        Ok(Self { labels })
    }

    pub fn labels(&self) -> &CrossBellIndex {
        &self.labels
    }

    pub fn n_pairs(&self) -> usize {
        self.labels.len()
    }

    pub fn state(&self) -> Result<StateVector> {
        cross_bell_state(&self.labels)
    }
}

/// Alice's outcome labels packed two bits each (`λ - 1`), first label in the
/// most significant bits, zero-padded to a whole byte.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalMessage {
    n_labels: usize,
    bytes: Vec<u8>,
}

impl ClassicalMessage {
    pub fn encode(outcome: &CrossBellIndex) -> Self {
        let n_labels = outcome.len();
        let mut bytes = vec![0u8; (2 * n_labels).div_ceil(8)];
        for (k, label) in outcome.labels().iter().enumerate() {
            let bit = 2 * k;
            bytes[bit / 8] |= label.bits() << (6 - bit % 8);
        }
        Self { n_labels, bytes }
    }

    /// Validates length and zero padding of received bytes.
    pub fn from_bytes(n_labels: usize, bytes: Vec<u8>) -> Result<Self> {
        if n_labels == 0 {
            return Err(Error::MalformedMessage("zero labels".into()));
        }
        let expected = (2 * n_labels).div_ceil(8);
        if bytes.len() != expected {
            return Err(Error::MalformedMessage(format!(
                "{n_labels} labels need {expected} bytes, got {}",
                bytes.len()
            )));
        }
        let used_bits = 2 * n_labels;
        if !used_bits.is_multiple_of(8) {
            let pad_mask = 0xffu8 >> (used_bits % 8);
            if bytes[expected - 1] & pad_mask != 0 {
                return Err(Error::MalformedMessage("nonzero padding bits".into()));
            }
        }
        Ok(Self { n_labels, bytes })
    }

    pub fn decode(&self) -> Result<CrossBellIndex> {
        let labels = (0..self.n_labels)
            .map(|k| {
                let bit = 2 * k;
                crate::bellkit::BellLabel::from_bits(self.bytes[bit / 8] >> (6 - bit % 8))
            })
            .collect();
        CrossBellIndex::new(labels)
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn n_labels(&self) -> usize {
        self.n_labels
    }

    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn encode_message(outcome: &CrossBellIndex) -> ClassicalMessage {
    ClassicalMessage::encode(outcome)
}

pub fn decode_message(message: &ClassicalMessage) -> Result<CrossBellIndex> {
    message.decode()
}

/// `B^(channel)` on qubits `1..=2N` followed by `input` on `2N+1..=3N`.
pub fn prepare_total_state(channel: &ChannelSpec, input: &StateVector) -> Result<StateVector> {
    if input.n_qubits() != channel.n_pairs() {
        return Err(Error::DimensionMismatch {
            left: channel.n_pairs(),
            right: input.n_qubits(),
        });
    }
    input.check_normalized(INPUT_NORM_TOL)?;
    channel.state()?.tensor(input)
}

/// Bob's qubits as they are after Alice's measurement, before any correction.
#[derive(Debug, Clone)]
pub struct BobQubits(StateVector);

impl BobQubits {
    pub fn state(&self) -> &StateVector {
        &self.0
    }
}

/// Alice's side: owns the prepared register until she measures it.
pub struct Alice {
    plan: MeasurementPlan,
    register: StateVector,
}

/// What leaves Alice's lab: the classical message for Bob, his (physically
/// separate) qubits, and the Born probability of the branch she observed.
pub struct MeasurementHandoff {
    pub message: ClassicalMessage,
    pub bob: BobQubits,
    pub outcome: CrossBellIndex,
    pub probability: f64,
}

impl Alice {
    pub fn new(channel: &ChannelSpec, input: &StateVector) -> Result<Self> {
        Ok(Self {
            plan: MeasurementPlan::teleportation(channel.n_pairs()),
            register: prepare_total_state(channel, input)?,
        })
    }

    fn handoff(record: OutcomeRecord) -> MeasurementHandoff {
        MeasurementHandoff {
            message: ClassicalMessage::encode(&record.outcome),
            bob: BobQubits(record.collapsed),
            outcome: record.outcome,
            probability: record.probability,
        }
    }

    pub fn measure(self, rng: &mut TrialRng) -> Result<MeasurementHandoff> {
        measurement::collapse_with(&self.register, &self.plan, rng).map(Self::handoff)
    }

    pub fn measure_forced(self, outcome: &CrossBellIndex) -> Result<MeasurementHandoff> {
        measurement::collapse_forced(&self.register, &self.plan, outcome).map(Self::handoff)
    }
}

/// Bob's side: knows the channel, receives qubits and a message.
pub struct Bob {
    channel: ChannelSpec,
}

impl Bob {
    pub fn new(channel: ChannelSpec) -> Self {
        Self { channel }
    }

    /// Applies `T[R_k][S_k]†` to qubit `k` for every pair.
    pub fn correct(&self, qubits: BobQubits, message: &ClassicalMessage) -> Result<StateVector> {
        let outcome = message.decode()?;
        let corrections = composite_correction(self.channel.labels(), &outcome)?;
        let mut state = qubits.0;
        for (k, u) in corrections.iter().enumerate() {
            state.apply_single_qubit_in_place(k + 1, &u.dagger())?;
        }
        Ok(state)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TeleportationReport {
    pub channel: ChannelSpec,
    pub outcome: CrossBellIndex,
    pub probability: f64,
    #[serde(rename = "message_hex", serialize_with = "message_hex")]
    pub message: ClassicalMessage,
    pub fidelity: f64,
    /// Seed of the run; `None` for forced-outcome runs.
    pub seed: Option<u64>,
    /// Trial number inside a batch.
    #[serde(skip)]
    pub trial: u64,
    /// Bob's corrected state.
    #[serde(skip)]
    pub received: StateVector,
}

fn message_hex<S: serde::Serializer>(
    m: &ClassicalMessage,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_hex())
}

fn finish(
    channel: &ChannelSpec,
    input: &StateVector,
    handoff: MeasurementHandoff,
    seed: Option<u64>,
    trial: u64,
) -> Result<TeleportationReport> {
    let bob = Bob::new(channel.clone());
    let received = bob.correct(handoff.bob, &handoff.message)?;
    // the input on 2N+1..3N relabelled to 1..N keeps its amplitude order
    let fidelity = input.fidelity(&received)?;
    Ok(TeleportationReport {
        channel: channel.clone(),
        outcome: handoff.outcome,
        probability: handoff.probability,
        message: handoff.message,
        fidelity,
        seed,
        trial,
        received,
    })
}

pub fn run_teleportation(
    channel: &ChannelSpec,
    input: &StateVector,
    seed: u64,
) -> Result<TeleportationReport> {
    run_trial(channel, input, seed, 0)
}

/// Trial `trial` of a batch: the generator is seeded with `seed` and set to
/// stream `trial`, so trial 0 reproduces [`run_teleportation`].
pub fn run_trial(
    channel: &ChannelSpec,
    input: &StateVector,
    seed: u64,
    trial: u64,
) -> Result<TeleportationReport> {
    let prepared = prepare_measurement(channel, input)?;
    sampled_trial(&prepared, channel, input, seed, trial)
}

fn prepare_measurement(channel: &ChannelSpec, input: &StateVector) -> Result<PreparedMeasurement> {
    PreparedMeasurement::new(
        &prepare_total_state(channel, input)?,
        &MeasurementPlan::teleportation(channel.n_pairs()),
    )
}

fn sampled_trial(
    prepared: &PreparedMeasurement,
    channel: &ChannelSpec,
    input: &StateVector,
    seed: u64,
    trial: u64,
) -> Result<TeleportationReport> {
    let mut rng = TrialRng::seed_from_u64(seed);
    rng.set_stream(trial);
    let handoff = Alice::handoff(prepared.sample(&mut rng)?);
    finish(channel, input, handoff, Some(seed), trial)
}

pub fn run_teleportation_forced(
    channel: &ChannelSpec,
    input: &StateVector,
    outcome: &CrossBellIndex,
) -> Result<TeleportationReport> {
    let handoff = Alice::new(channel, input)?.measure_forced(outcome)?;
    finish(channel, input, handoff, None, 0)
}

#[derive(Debug, Clone, Serialize)]
pub struct OutcomeCount {
    pub outcome: CrossBellIndex,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchSummary {
    pub channel: ChannelSpec,
    pub trials: u64,
    pub seed: u64,
    /// Every outcome in canonical order, including unseen ones.
    pub counts: Vec<OutcomeCount>,
    pub min_fidelity: f64,
    pub mean_fidelity: f64,
    /// Largest `|count - T/4^N| / σ` under the uniform binomial model.
    pub max_abs_z: f64,
}

#[derive(Debug, Clone)]
pub struct BatchResult {
    pub reports: Vec<TeleportationReport>,
    pub summary: BatchSummary,
}

/// Runs `trials` independent teleportations. `threads == 0` uses rayon's
/// default pool, `1` runs sequentially; results are in trial order either way.
pub fn run_batch(
    channel: &ChannelSpec,
    input: &StateVector,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<BatchResult> {
    if trials == 0 {
        return Err(Error::Unsupported(
            "a batch needs at least one trial".into(),
        ));
    }
    // the register is identical for every trial; only the draw differs
    let prepared = prepare_measurement(channel, input)?;
    let run = |k: u64| sampled_trial(&prepared, channel, input, seed, k);
    let reports: Vec<TeleportationReport> = match threads {
        1 => (0..trials).map(run).collect::<Result<_>>()?,
        0 => (0..trials)
            .into_par_iter()
            .map(run)
            .collect::<Result<_>>()?,
        t => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Unsupported(e.to_string()))?
            .install(|| (0..trials).into_par_iter().map(run).collect::<Result<_>>())?,
    };
    let summary = summarize(channel, seed, &reports);
    Ok(BatchResult { reports, summary })
}

fn summarize(channel: &ChannelSpec, seed: u64, reports: &[TeleportationReport]) -> BatchSummary {
    let n = channel.n_pairs();
    let mut counts = vec![0u64; 1 << (2 * n)];
    let mut min_fidelity = f64::INFINITY;
    let mut fidelity_sum = 0.0;
    for r in reports {
        counts[r.outcome.ordinal()] += 1;
        min_fidelity = min_fidelity.min(r.fidelity);
        fidelity_sum += r.fidelity;
    }
    let trials = reports.len() as u64;
    let p = 1.0 / counts.len() as f64;
    let mean = trials as f64 * p;
    let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
    let max_abs_z = if sigma > 0.0 {
        counts
            .iter()
            .map(|&c| (c as f64 - mean).abs() / sigma)
            .fold(0.0, f64::max)
    } else {
        0.0
    };
    BatchSummary {
        channel: channel.clone(),
        trials,
        seed,
        counts: counts
            .into_iter()
            .enumerate()
            .map(|(o, count)| OutcomeCount {
                outcome: CrossBellIndex::from_ordinal(n, o),
                count,
            })
            .collect(),
        min_fidelity,
        mean_fidelity: fidelity_sum / trials as f64,
        max_abs_z,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bellkit::BellLabel;
    use crate::fixtures;

    fn channel(values: &[i64]) -> ChannelSpec {
        ChannelSpec::new(CrossBellIndex::from_values(values).unwrap()).unwrap()
    }

    #[test]
    fn message_encoding_examples() {
        let m = encode_message(&CrossBellIndex::uniform(3, BellLabel::PSI_MINUS));
        assert_eq!(m.bytes(), &[0xfc]);
        assert_eq!(m.to_hex(), "fc");
        let m = encode_message(&CrossBellIndex::from_values(&[1]).unwrap());
        assert_eq!(m.bytes(), &[0x00]);
        let m = encode_message(&CrossBellIndex::from_values(&[2, 3, 4, 1, 4]).unwrap());
        assert_eq!(m.bytes(), &[0b0110_1100, 0b1100_0000]);
    }

    #[test]
    fn message_decode_round_trip_exhaustive() {
        for n in 1..=5 {
            for idx in CrossBellIndex::all(n) {
                let m = encode_message(&idx);
                assert_eq!(m.bytes().len(), (2 * n).div_ceil(8));
                let received = ClassicalMessage::from_bytes(n, m.bytes().to_vec()).unwrap();
                assert_eq!(decode_message(&received).unwrap(), idx);
            }
        }
    }

    #[test]
    fn malformed_messages_rejected() {
        assert!(ClassicalMessage::from_bytes(3, vec![0xfc, 0x00]).is_err());
        assert!(ClassicalMessage::from_bytes(3, vec![0xfd]).is_err());
        assert!(ClassicalMessage::from_bytes(0, vec![]).is_err());
        assert!(ClassicalMessage::from_bytes(4, vec![0xff]).is_ok());
    }

    #[test]
    fn total_state_for_single_pair() {
        let phi = fixtures::haar_random(1, 5).unwrap();
        let ch = channel(&[4]);
        let total = prepare_total_state(&ch, &phi).unwrap();
        // ψ⁻₁₂ ⊗ φ₃ = (|01⟩ − |10⟩)/√2 ⊗ (α, β)
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (a, b) = (phi.amplitude(0), phi.amplitude(1));
        let want = [0.0, 0.0, h, h, -h, -h, 0.0, 0.0];
        for (i, &w) in want.iter().enumerate() {
            let amp = if i % 2 == 0 { a } else { b };
            assert!((total.amplitude(i) - amp * w).norm() < 1e-12);
        }
        assert!((total.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn total_state_rejects_mismatch_and_unnormalized() {
        let ch = channel(&[4, 4]);
        assert!(matches!(
            prepare_total_state(&ch, &fixtures::ghz(3).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
        let loose = fixtures::ghz(2)
            .unwrap()
            .scaled(num_complex::Complex64::new(1.1, 0.0));
        assert!(matches!(
            prepare_total_state(&ch, &loose),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn channel_respects_cap() {
        let idx = CrossBellIndex::uniform(7, BellLabel::PHI_PLUS);
        assert!(matches!(ChannelSpec::new(idx), Err(Error::QubitCap { .. })));
    }

    #[test]
    fn single_qubit_every_channel_and_outcome() {
        let phi = fixtures::haar_random(1, 11).unwrap();
        for r in BellLabel::ALL {
            let ch = ChannelSpec::new(CrossBellIndex::new(vec![r]).unwrap()).unwrap();
            for s in CrossBellIndex::all(1) {
                let rep = run_teleportation_forced(&ch, &phi, &s).unwrap();
                assert!((rep.fidelity - 1.0).abs() < FIDELITY_TOL);
                assert!((rep.probability - 0.25).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn batch_of_one_matches_single_run() {
        let ch = channel(&[2, 3]);
        let input = fixtures::w(2).unwrap();
        let single = run_teleportation(&ch, &input, 77).unwrap();
        let batch = run_batch(&ch, &input, 1, 77, 1).unwrap();
        assert_eq!(batch.reports[0].outcome, single.outcome);
        assert_eq!(batch.reports[0].fidelity, single.fidelity);
        assert_eq!(batch.summary.trials, 1);
        assert!(run_batch(&ch, &input, 0, 77, 1).is_err());
    }

    #[test]
    fn batch_is_thread_count_invariant() {
        let ch = channel(&[1, 4]);
        let input = fixtures::haar_random(2, 1).unwrap();
        let a = run_batch(&ch, &input, 200, 9, 1).unwrap();
        let b = run_batch(&ch, &input, 200, 9, 3).unwrap();
        let outcomes = |r: &BatchResult| {
            r.reports
                .iter()
                .map(|x| x.outcome.clone())
                .collect::<Vec<_>>()
        };
        assert_eq!(outcomes(&a), outcomes(&b));
        assert_eq!(a.summary.mean_fidelity, b.summary.mean_fidelity);
    }

    #[test]
    fn report_json_schema() {
        let ch = channel(&[4, 4, 4]);
        let input = fixtures::ghz(3).unwrap();
        let rep = run_teleportation(&ch, &input, 7).unwrap();
        let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
        let obj = v.as_object().unwrap();
        let mut keys: Vec<_> = obj.keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            [
                "channel",
                "fidelity",
                "message_hex",
                "outcome",
                "probability",
                "seed"
            ]
        );
        assert_eq!(v["channel"], serde_json::json!([4, 4, 4]));
        assert_eq!(v["seed"], serde_json::json!(7));
    }
}
