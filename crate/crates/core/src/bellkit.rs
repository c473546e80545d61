//! Bell states, the cross product, cross Bell bases and the correction table.
//!
//! Bell labels follow the usual numbering `1 = φ⁺, 2 = φ⁻, 3 = ψ⁺, 4 = ψ⁻`.
//! A cross Bell state on `2N` qubits places a Bell pair on every qubit pair
//! `(k, N + k)`; the `N`-tuple of labels indexes it, and tuples are enumerated
//! lexicographically with labels ascending.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::statevec::{check_cap, shift_of, QubitPermutation, SingleQubitUnitary, StateVector};

/// One of the four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BellLabel(u8);

impl BellLabel {
    pub const PHI_PLUS: Self = Self(1);
    pub const PHI_MINUS: Self = Self(2);
    pub const PSI_PLUS: Self = Self(3);
    pub const PSI_MINUS: Self = Self(4);

    pub const ALL: [Self; 4] = [
        Self::PHI_PLUS,
        Self::PHI_MINUS,
        Self::PSI_PLUS,
        Self::PSI_MINUS,
    ];

    pub fn new(value: i64) -> Result<Self> {
        if (1..=4).contains(&value) {
            Ok(Self(value as u8))
        } else {
            Err(Error::InvalidLabel(value))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// The two classical bits `λ - 1` carried for this label.
    pub fn bits(self) -> u8 {
        self.0 - 1
    }

    pub fn from_bits(bits: u8) -> Self {
        Self((bits & 0b11) + 1)
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            1 => "phi+",
            2 => "phi-",
            3 => "psi+",
            _ => "psi-",
        }
    }

    /// Real amplitudes over `|00>, |01>, |10>, |11>`.
    pub fn amplitudes(self) -> [f64; 4] {
        let h = FRAC_1_SQRT_2;
        match self.0 {
            1 => [h, 0.0, 0.0, h],
            2 => [h, 0.0, 0.0, -h],
            3 => [0.0, h, h, 0.0],
            _ => [0.0, h, -h, 0.0],
        }
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for BellLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.0)
    }
}

/// Label tuple `(λ₁, …, λ_N)` selecting one cross Bell basis entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossBellIndex(Vec<BellLabel>);

impl CrossBellIndex {
    pub fn new(labels: Vec<BellLabel>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyIndex);
        }
        Ok(Self(labels))
    }

    pub fn from_values(values: &[i64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| BellLabel::new(v))
                .collect::<Result<_>>()?,
        )
    }

    pub fn uniform(n: usize, label: BellLabel) -> Self {
        assert!(n > 0, "cross Bell index needs at least one label");
        Self(vec![label; n])
    }

    pub fn labels(&self) -> &[BellLabel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> Vec<u8> {
        self.0.iter().map(|l| l.value()).collect()
    }

    /// Position in the lexicographic enumeration of all `4^N` indices.
    pub fn ordinal(&self) -> usize {
        self.0
            .iter()
            .fold(0usize, |acc, l| (acc << 2) | l.bits() as usize)
    }

    pub fn from_ordinal(n: usize, ordinal: usize) -> Self {
        assert!(n > 0 && ordinal < 1 << (2 * n));
        Self(
            (0..n)
                .map(|k| BellLabel::from_bits((ordinal >> (2 * (n - 1 - k))) as u8))
                .collect(),
        )
    }

    /// All `4^n` indices in canonical order.
    pub fn all(n: usize) -> impl Iterator<Item = Self> {
        (0..1usize << (2 * n)).map(move |o| Self::from_ordinal(n, o))
    }
}

impl fmt::Display for CrossBellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Parses `"4,4,4"` (optionally wrapped in parentheses).
impl FromStr for CrossBellIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let values = body
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidLabel(-1))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(&values)
    }
}

impl Serialize for CrossBellIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

pub fn bell_state(label: BellLabel) -> StateVector {
    StateVector::from_real(2, &label.amplitudes()).expect("4 amplitudes")
}

/// Tensor-factor order of `s₁ ⊗ s₂ ⊗ … ⊗ s_N` (each a 2-qubit state) mapped
/// so the first qubit of `s_n` lands on `n` and the second on `N + n`.
pub fn cross_permutation(n_pairs: usize) -> QubitPermutation {
    let mapping = (1..=n_pairs).flat_map(|n| [n, n_pairs + n]).collect();
    QubitPermutation::new(mapping).expect("interleaving is a bijection")
}

/// The cross product `∇(s₁, …, s_N)`: the tensor product of 2-qubit states
/// returned to the order `(i₁ … i_N j₁ … j_N)`.
pub fn cross_product(states: &[StateVector]) -> Result<StateVector> {
    if states.is_empty() {
        return Err(Error::EmptyIndex);
    }
    check_cap(2 * states.len())?;
    for s in states {
        if s.n_qubits() != 2 {
            return Err(Error::DimensionMismatch {
                left: 2,
                right: s.n_qubits(),
            });
        }
    }
    let mut product = states[0].clone();
    for s in &states[1..] {
        product = product.tensor(s)?;
    }
    product.permute_to_natural(&cross_permutation(states.len()))
}

pub fn cross_bell_state(index: &CrossBellIndex) -> Result<StateVector> {
    let pairs: Vec<StateVector> = index.labels().iter().map(|&l| bell_state(l)).collect();
    cross_product(&pairs)
}

/// All `4^N` cross Bell states on `2N` qubits, in canonical order.
pub fn cross_bell_basis(n_pairs: usize) -> Result<Vec<StateVector>> {
    if n_pairs == 0 {
        return Err(Error::EmptyIndex);
    }
    check_cap(2 * n_pairs)?;
    CrossBellIndex::all(n_pairs)
        .map(|idx| cross_bell_state(&idx))
        .collect()
}

/// Rewrites the amplitudes of each listed qubit pair `(a, b)` into Bell
/// coordinates in place: afterwards the two bits at `(a, b)` hold `λ - 1`
/// (high bit on `a`) and the amplitude is `<Ω^λ_ab| · >` of the original.
pub(crate) fn to_bell_frame(amps: &mut [Complex64], n_qubits: usize, pairs: &[(usize, usize)]) {
    let h = FRAC_1_SQRT_2;
    for &(a, b) in pairs {
        let ma = 1usize << shift_of(n_qubits, a);
        let mb = 1usize << shift_of(n_qubits, b);
        for base in 0..amps.len() {
            if base & (ma | mb) != 0 {
                continue;
            }
            let (i00, i01, i10, i11) = (base, base | mb, base | ma, base | ma | mb);
            let (v00, v01, v10, v11) = (amps[i00], amps[i01], amps[i10], amps[i11]);
            amps[i00] = (v00 + v11) * h;
            amps[i01] = (v00 - v11) * h;
            amps[i10] = (v01 + v10) * h;
            amps[i11] = (v01 - v10) * h;
        }
    }
}

/// Inverse of [`to_bell_frame`].
pub(crate) fn from_bell_frame(amps: &mut [Complex64], n_qubits: usize, pairs: &[(usize, usize)]) {
    let h = FRAC_1_SQRT_2;
    for &(a, b) in pairs {
        let ma = 1usize << shift_of(n_qubits, a);
        let mb = 1usize << shift_of(n_qubits, b);
        for base in 0..amps.len() {
            if base & (ma | mb) != 0 {
                continue;
            }
            let (i00, i01, i10, i11) = (base, base | mb, base | ma, base | ma | mb);
            let (c1, c2, c3, c4) = (amps[i00], amps[i01], amps[i10], amps[i11]);
            amps[i00] = (c1 + c2) * h;
            amps[i11] = (c1 - c2) * h;
            amps[i01] = (c3 + c4) * h;
            amps[i10] = (c3 - c4) * h;
        }
    }
}

/// Register index holding the Bell-frame coordinate of `ordinal` on the given
/// pairs, with every other qubit zero.
pub(crate) fn frame_offset(n_qubits: usize, pairs: &[(usize, usize)], ordinal: usize) -> usize {
    let n_pairs = pairs.len();
    pairs.iter().enumerate().fold(0usize, |acc, (k, &(a, b))| {
        let bits = (ordinal >> (2 * (n_pairs - 1 - k))) & 0b11;
        acc | ((bits >> 1) << shift_of(n_qubits, a)) | ((bits & 1) << shift_of(n_qubits, b))
    })
}

fn cross_pairs(n_pairs: usize) -> Vec<(usize, usize)> {
    (1..=n_pairs).map(|k| (k, n_pairs + k)).collect()
}

/// Coefficients `c_idx = <B^(idx)|state>` of a `2N`-qubit state, indexed by
/// [`CrossBellIndex::ordinal`].
pub fn expand_in_cross_bell(state: &StateVector) -> Result<Vec<Complex64>> {
    let n = state.n_qubits();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::OddQubitCount(n));
    }
    let pairs = cross_pairs(n / 2);
    let mut amps = state.amplitudes().to_vec();
    to_bell_frame(&mut amps, n, &pairs);
    Ok((0..amps.len())
        .map(|o| amps[frame_offset(n, &pairs, o)])
        .collect())
}

/// `Σ c_idx · B^(idx)` over `n_pairs` pairs.
pub fn reconstruct_from_cross_bell(
    n_pairs: usize,
    coefficients: &[Complex64],
) -> Result<StateVector> {
    let n = 2 * n_pairs;
    check_cap(n)?;
    let expected = 1usize << n;
    if coefficients.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            actual: coefficients.len(),
        });
    }
    let pairs = cross_pairs(n_pairs);
    let mut amps = vec![Complex64::new(0.0, 0.0); expected];
    for (o, &c) in coefficients.iter().enumerate() {
        amps[frame_offset(n, &pairs, o)] = c;
    }
    from_bell_frame(&mut amps, n, &pairs);
    StateVector::new(n, amps)
}

/// The correction matrices as commonly stated for a ψ⁻ channel:
/// `U₁ = iσ_y`, `U₂ = −σ_x`, `U₃ = σ_z`, `U₄ = −σ₀`.
pub fn correction_unitary(label: BellLabel) -> SingleQubitUnitary {
    match label.value() {
        1 => SingleQubitUnitary::real([[0.0, 1.0], [-1.0, 0.0]]),
        2 => SingleQubitUnitary::real([[0.0, -1.0], [-1.0, 0.0]]),
        3 => SingleQubitUnitary::real([[1.0, 0.0], [0.0, -1.0]]),
        _ => SingleQubitUnitary::real([[-1.0, 0.0], [0.0, -1.0]]),
    }
}

/// Map `(channel label R, outcome label S) → T` such that
/// `Ω^R_12 ⊗ |φ⟩_3 = ½ Σ_S (T|φ⟩)_1 ⊗ Ω^S_23`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionTable {
    entries: [[SingleQubitUnitary; 4]; 4],
}

impl CorrectionTable {
    pub fn get(&self, channel: BellLabel, outcome: BellLabel) -> &SingleQubitUnitary {
        &self.entries[channel.bits() as usize][outcome.bits() as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (BellLabel, BellLabel, &SingleQubitUnitary)> {
        BellLabel::ALL.into_iter().flat_map(move |r| {
            BellLabel::ALL
                .into_iter()
                .map(move |s| (r, s, self.get(r, s)))
        })
    }

    /// Largest entry deviation from `other`, comparing exact matrices.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.iter()
            .map(|(r, s, u)| u.max_deviation(other.get(r, s)))
            .fold(0.0, f64::max)
    }
}

const fn u(m: [[f64; 2]; 2]) -> SingleQubitUnitary {
    SingleQubitUnitary::real(m)
}

const I2: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, 1.0]];
const Z2: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, -1.0]];
const X2: [[f64; 2]; 2] = [[0.0, 1.0], [1.0, 0.0]];

/// Generated from [`derive_correction_table`]; `derived_table_matches_constant`
/// guards it.
pub const CORRECTION_TABLE: CorrectionTable = CorrectionTable {
    entries: [
        [u(I2), u(Z2), u(X2), u([[0.0, 1.0], [-1.0, 0.0]])],
        [u(Z2), u(I2), u([[0.0, 1.0], [-1.0, 0.0]]), u(X2)],
        [
            u(X2),
            u([[0.0, -1.0], [1.0, 0.0]]),
            u(I2),
            u([[-1.0, 0.0], [0.0, 1.0]]),
        ],
        [
            u([[0.0, 1.0], [-1.0, 0.0]]),
            u([[0.0, -1.0], [-1.0, 0.0]]),
            u(Z2),
            u([[-1.0, 0.0], [0.0, -1.0]]),
        ],
    ],
};

pub const DERIVATION_TOL: f64 = 1e-10;

/// Solves for every table entry by projecting `Ω^R_12 ⊗ |j⟩_3` onto
/// `⟨i|_1 ⊗ ⟨Ω^S|_23`, then checks each entry is unitary, the four entries of
/// a row are distinct up to phase, and the ½-weighted branch sum rebuilds the
/// three-qubit state for a generic input.
pub fn derive_correction_table() -> Result<CorrectionTable> {
    let zero = Complex64::new(0.0, 0.0);
    let mut entries = [[SingleQubitUnitary::IDENTITY; 4]; 4];
    for r in BellLabel::ALL {
        let channel = bell_state(r);
        for s in BellLabel::ALL {
            let outcome = s.amplitudes();
            let mut m = [[zero; 2]; 2];
            for j in 0..2u8 {
                let total = channel.tensor(&StateVector::basis_state(&[j])?)?;
                for (i, row) in m.iter_mut().enumerate() {
                    let projected: Complex64 = (0..4)
                        .map(|pair| total.amplitude(i * 4 + pair) * outcome[pair])
                        .sum();
                    row[j as usize] = projected * 2.0;
                }
            }
            let entry = SingleQubitUnitary::from_matrix_unchecked(m);
            let deviation = entry.unitarity_deviation();
            if deviation > DERIVATION_TOL {
                return Err(Error::DerivationFailed(format!(
                    "entry ({r},{s}) deviates from unitarity by {deviation:e}"
                )));
            }
            entries[r.bits() as usize][s.bits() as usize] = entry;
        }
        let row = &entries[r.bits() as usize];
        for a in 0..4 {
            for b in a + 1..4 {
                if row[a].equal_up_to_phase(&row[b], DERIVATION_TOL) {
                    return Err(Error::DerivationFailed(format!(
                        "channel {r}: outcomes {} and {} coincide",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
    }
    let table = CorrectionTable { entries };

    let probe = StateVector::new(
        1,
        vec![Complex64::new(0.48, -0.36), Complex64::new(0.6, 0.52)],
    )?
    .normalize();
    for r in BellLabel::ALL {
        let lhs = bell_state(r).tensor(&probe)?;
        let mut rhs = StateVector::new(3, vec![zero; 8])?;
        for s in BellLabel::ALL {
            let bob = probe.apply_single_qubit(1, table.get(r, s))?;
            rhs = rhs.add(&bob.tensor(&bell_state(s))?.scaled(Complex64::new(0.5, 0.0)))?;
        }
        let residual = lhs.max_deviation(&rhs)?;
        if residual > DERIVATION_TOL {
            return Err(Error::DerivationFailed(format!(
                "channel {r}: branch sum residual {residual:e}"
            )));
        }
    }
    Ok(table)
}

/// Per-qubit transformations `T[R_k][S_k]` that Bob's qubits carry after
/// Alice reports `outcome` on `channel`. Bob undoes each with its adjoint.
pub fn composite_correction(
    channel: &CrossBellIndex,
    outcome: &CrossBellIndex,
) -> Result<Vec<SingleQubitUnitary>> {
    if channel.len() != outcome.len() {
        return Err(Error::DimensionMismatch {
            left: channel.len(),
            right: outcome.len(),
        });
    }
    Ok(channel
        .labels()
        .iter()
        .zip(outcome.labels())
        .map(|(&r, &s)| *CORRECTION_TABLE.get(r, s))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::AMPLITUDE_TOL;

    const H: f64 = FRAC_1_SQRT_2;

    fn real_state(n: usize, amps: &[f64]) -> StateVector {
        StateVector::from_real(n, amps).unwrap()
    }

    #[test]
    fn bell_states_match_definitions() {
        assert!(bell_state(BellLabel::PHI_PLUS).approx_eq(&real_state(2, &[H, 0.0, 0.0, H]), 0.0));
        assert!(bell_state(BellLabel::PSI_MINUS).approx_eq(&real_state(2, &[0.0, H, -H, 0.0]), 0.0));
        for l in BellLabel::ALL {
            assert!((bell_state(l).norm() - 1.0).abs() < AMPLITUDE_TOL);
        }
    }

    #[test]
    fn label_validation() {
        assert!(matches!(BellLabel::new(0), Err(Error::InvalidLabel(0))));
        assert!(matches!(BellLabel::new(5), Err(Error::InvalidLabel(5))));
        assert_eq!(BellLabel::new(3).unwrap(), BellLabel::PSI_PLUS);
        assert!(CrossBellIndex::from_values(&[]).is_err());
        assert!("1,5".parse::<CrossBellIndex>().is_err());
        assert!("a".parse::<CrossBellIndex>().is_err());
        assert_eq!(
            "(4,4,4)".parse::<CrossBellIndex>().unwrap(),
            CrossBellIndex::uniform(3, BellLabel::PSI_MINUS)
        );
    }

    #[test]
    fn ordinal_is_lexicographic() {
        let all: Vec<_> = CrossBellIndex::all(2).collect();
        assert_eq!(all.len(), 16);
        assert_eq!(all[0].values(), vec![1, 1]);
        assert_eq!(all[1].values(), vec![1, 2]);
        assert_eq!(all[4].values(), vec![2, 1]);
        assert_eq!(all[15].values(), vec![4, 4]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (o, idx) in all.iter().enumerate() {
            assert_eq!(idx.ordinal(), o);
        }
    }

    #[test]
    fn cross_product_of_one_pair_is_identity() {
        let s = real_state(2, &[0.1, 0.2, 0.3, 0.4]);
        assert_eq!(cross_product(std::slice::from_ref(&s)).unwrap(), s);
    }

    #[test]
    fn cross_product_two_phi_plus() {
        // ½(|0000⟩ + |0101⟩ + |1010⟩ + |1111⟩)
        let phi = bell_state(BellLabel::PHI_PLUS);
        let got = cross_product(&[phi.clone(), phi]).unwrap();
        let mut want = vec![0.0; 16];
        for i in [0b0000, 0b0101, 0b1010, 0b1111] {
            want[i] = 0.5;
        }
        assert!(got.approx_eq(&real_state(4, &want), AMPLITUDE_TOL));
        let idx = CrossBellIndex::from_values(&[1, 1]).unwrap();
        assert!(cross_bell_state(&idx)
            .unwrap()
            .approx_eq(&real_state(4, &want), AMPLITUDE_TOL));
    }

    #[test]
    fn cross_product_rejects_bad_inputs() {
        assert!(cross_product(&[]).is_err());
        let one = StateVector::basis_state(&[0]).unwrap();
        assert!(matches!(
            cross_product(&[one]),
            Err(Error::DimensionMismatch { .. })
        ));
        let phi = bell_state(BellLabel::PHI_PLUS);
        assert!(matches!(
            cross_product(&vec![phi; 10]),
            Err(Error::QubitCap { .. })
        ));
    }

    #[test]
    fn single_pair_basis_is_bell_basis() {
        let basis = cross_bell_basis(1).unwrap();
        for (b, l) in basis.iter().zip(BellLabel::ALL) {
            assert_eq!(b, &bell_state(l));
        }
        let idx = CrossBellIndex::from_values(&[4]).unwrap();
        assert_eq!(
            cross_bell_state(&idx).unwrap(),
            bell_state(BellLabel::PSI_MINUS)
        );
    }

    #[test]
    fn channel_444_pairs_qubits_k_and_k_plus_3() {
        let idx = CrossBellIndex::uniform(3, BellLabel::PSI_MINUS);
        let state = cross_bell_state(&idx).unwrap();
        // amplitude of |i1 i2 i3 j1 j2 j3⟩ is Π ψ⁻(i_k, j_k)
        let psi = BellLabel::PSI_MINUS.amplitudes();
        for b in 0..64usize {
            let bit = |q: usize| (b >> (6 - q)) & 1;
            let want: f64 = (1..=3).map(|k| psi[bit(k) * 2 + bit(k + 3)]).product();
            assert!((state.amplitude(b).re - want).abs() < AMPLITUDE_TOL);
        }
    }

    #[test]
    fn expansion_of_all_zero_and_all_one() {
        for n in 1..=3usize {
            let scale = 2f64.powf(-(n as f64) / 2.0);
            let zeros = StateVector::basis_state(&vec![0; 2 * n]).unwrap();
            let ones = StateVector::basis_state(&vec![1; 2 * n]).unwrap();
            let cz = expand_in_cross_bell(&zeros).unwrap();
            let co = expand_in_cross_bell(&ones).unwrap();
            for idx in CrossBellIndex::all(n) {
                let phi_only = idx.labels().iter().all(|l| l.value() <= 2);
                let sum: i64 = idx.values().iter().map(|&v| v as i64).sum();
                let sign = if (sum - n as i64) % 2 == 0 { 1.0 } else { -1.0 };
                let (wz, wo) = if phi_only {
                    (scale, sign * scale)
                } else {
                    (0.0, 0.0)
                };
                assert!((cz[idx.ordinal()].re - wz).abs() < AMPLITUDE_TOL, "{idx}");
                assert!((co[idx.ordinal()].re - wo).abs() < AMPLITUDE_TOL, "{idx}");
            }
        }
    }

    #[test]
    fn basis_states_expand_to_unit_vectors() {
        for idx in CrossBellIndex::all(2) {
            let coeffs = expand_in_cross_bell(&cross_bell_state(&idx).unwrap()).unwrap();
            for (o, c) in coeffs.iter().enumerate() {
                let want = if o == idx.ordinal() { 1.0 } else { 0.0 };
                assert!((c - want).norm() < AMPLITUDE_TOL);
            }
        }
    }

    #[test]
    fn expansion_rejects_odd_registers() {
        let s = StateVector::basis_state(&[0, 0, 0]).unwrap();
        assert!(matches!(
            expand_in_cross_bell(&s),
            Err(Error::OddQubitCount(3))
        ));
    }

    #[test]
    fn stated_corrections() {
        assert_eq!(
            correction_unitary(BellLabel::PHI_PLUS),
            SingleQubitUnitary::real([[0.0, 1.0], [-1.0, 0.0]])
        );
        assert_eq!(
            correction_unitary(BellLabel::PSI_MINUS),
            SingleQubitUnitary::real([[-1.0, 0.0], [0.0, -1.0]])
        );
        for l in BellLabel::ALL {
            assert!(correction_unitary(l).unitarity_deviation() < AMPLITUDE_TOL);
        }
    }

    #[test]
    fn derived_table_matches_constant() {
        let derived = derive_correction_table().unwrap();
        assert!(derived.max_deviation(&CORRECTION_TABLE) < DERIVATION_TOL);
    }

    #[test]
    fn psi_minus_row_matches_hand_expansion() {
        // ψ⁻₁₂(α|0⟩+β|1⟩)₃ expanded by hand: the ψ⁻₂₃ branch carries −(α,β),
        // the φ⁺₂₃ branch carries (β,−α).
        let (alpha, beta) = (Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
        let t = &CORRECTION_TABLE;
        let id = t
            .get(BellLabel::PSI_MINUS, BellLabel::PSI_MINUS)
            .apply([alpha, beta]);
        assert!((id[0] + alpha).norm() < AMPLITUDE_TOL && (id[1] + beta).norm() < AMPLITUDE_TOL);
        let fp = t
            .get(BellLabel::PSI_MINUS, BellLabel::PHI_PLUS)
            .apply([alpha, beta]);
        assert!((fp[0] - beta).norm() < AMPLITUDE_TOL && (fp[1] + alpha).norm() < AMPLITUDE_TOL);
        for l in BellLabel::ALL {
            assert_eq!(t.get(BellLabel::PSI_MINUS, l), &correction_unitary(l));
        }
    }

    #[test]
    fn composite_correction_lookup() {
        let ch = CrossBellIndex::from_values(&[4]).unwrap();
        let out = CrossBellIndex::from_values(&[2]).unwrap();
        assert_eq!(
            composite_correction(&ch, &out).unwrap(),
            vec![*CORRECTION_TABLE.get(BellLabel::PSI_MINUS, BellLabel::PHI_MINUS)]
        );
        let ch3 = CrossBellIndex::uniform(3, BellLabel::PSI_MINUS);
        let out3 = CrossBellIndex::from_values(&[1, 3, 4]).unwrap();
        let got = composite_correction(&ch3, &out3).unwrap();
        let want: Vec<_> = out3
            .labels()
            .iter()
            .map(|&l| correction_unitary(l))
            .collect();
        assert_eq!(got, want);
        assert!(composite_correction(&ch3, &out).is_err());
    }
}
