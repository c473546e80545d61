//! Dense complex state vectors over `n` qubits.
//!
//! Qubits are labelled `1..=n` and qubit 1 is the most significant bit of the
//! basis index, so `|i_1 i_2 ... i_n>` sits at `sum_k i_k * 2^(n-k)`.

use std::fmt;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest register the simulator will allocate (262144 amplitudes).
pub const QUBIT_CAP: usize = 18;

/// Per-amplitude tolerance used for equality of protocol values.
pub const AMPLITUDE_TOL: f64 = 1e-12;

/// Normalization slack accepted when loading a state file.
pub const LOAD_NORM_TOL: f64 = 1e-9;

pub(crate) fn check_cap(n_qubits: usize) -> Result<()> {
    if n_qubits > QUBIT_CAP {
        return Err(Error::QubitCap {
            requested: n_qubits,
            cap: QUBIT_CAP,
        });
    }
    Ok(())
}

/// Bit shift of 1-based qubit `q` inside an `n`-qubit index.
#[inline]
pub(crate) fn shift_of(n_qubits: usize, qubit: usize) -> usize {
    n_qubits - qubit
}

/// A pure state of `n_qubits` qubits stored as `2^n_qubits` amplitudes.
///
/// A zero-qubit state (a single amplitude) is allowed; it is what remains
/// after every qubit of a register has been measured.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector[{}q](", self.n_qubits)?;
        for (i, a) in self.amplitudes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:.6}{:+.6}i", a.re, a.im)?;
        }
        write!(f, ")")
    }
}

impl StateVector {
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_cap(n_qubits)?;
        let expected = 1usize << n_qubits;
        if amplitudes.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: amplitudes.len(),
            });
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Like [`StateVector::new`] but also requires unit norm within `tol`.
    pub fn normalized(n_qubits: usize, amplitudes: Vec<Complex64>, tol: f64) -> Result<Self> {
        let state = Self::new(n_qubits, amplitudes)?;
        state.check_normalized(tol)?;
        Ok(state)
    }

    /// Builds a state from real amplitudes.
    pub fn from_real(n_qubits: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::new(
            n_qubits,
            amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    /// Computational basis state `|bits[0] bits[1] ...>`.
    pub fn basis_state(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyBits);
        }
        check_cap(bits.len())?;
        let mut index = 0usize;
        for &b in bits {
            if b > 1 {
                return Err(Error::InvalidBit(b));
            }
            index = (index << 1) | b as usize;
        }
        Ok(Self::basis_index(bits.len(), index))
    }

    pub(crate) fn basis_index(n_qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self {
            n_qubits,
            amplitudes,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm });
        }
        Ok(())
    }

    /// Rescales to unit norm. A zero vector is returned unchanged.
    pub fn normalize(mut self) -> Self {
        let norm = self.norm();
        if norm > 0.0 {
            for a in &mut self.amplitudes {
                *a /= norm;
            }
        }
        self
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            n_qubits: self.n_qubits,
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    /// Amplitude-wise sum of two states of the same size.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(Self {
            n_qubits: self.n_qubits,
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(())
    }

    /// Ordinary tensor product `self ⊗ other`; `self` occupies the leading qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n_qubits = self.n_qubits + other.n_qubits;
        check_cap(n_qubits)?;
        let mut amplitudes = Vec::with_capacity(1 << n_qubits);
        for a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|b| a * b));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// The return operator: re-indexes a state whose tensor factors are in
    /// the order described by `perm` into natural qubit order.
    ///
    /// Factor `k` of the input (the `k`-th most significant bit) is moved to
    /// natural position `perm.mapping()[k]`. Amplitude values are untouched.
    pub fn permute_to_natural(&self, perm: &QubitPermutation) -> Result<Self> {
        if perm.len() != self.n_qubits {
            return Err(Error::InvalidPermutation(format!(
                "permutation over {} qubits applied to a {}-qubit state",
                perm.len(),
                self.n_qubits
            )));
        }
        let n = self.n_qubits;
        // source bit shift -> destination bit shift
        let moves: Vec<(usize, usize)> = perm
            .mapping()
            .iter()
            .enumerate()
            .map(|(k, &dest)| (shift_of(n, k + 1), shift_of(n, dest)))
            .collect();
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (src, &a) in self.amplitudes.iter().enumerate() {
            let mut dst = 0usize;
            for &(from, to) in &moves {
                dst |= ((src >> from) & 1) << to;
            }
            amplitudes[dst] = a;
        }
        Ok(Self {
            n_qubits: n,
            amplitudes,
        })
    }

    /// Applies `u` to the 1-based `qubit`.
    pub fn apply_single_qubit(&self, qubit: usize, u: &SingleQubitUnitary) -> Result<Self> {
        let mut out = self.clone();
        out.apply_single_qubit_in_place(qubit, u)?;
        Ok(out)
    }

    pub fn apply_single_qubit_in_place(
        &mut self,
        qubit: usize,
        u: &SingleQubitUnitary,
    ) -> Result<()> {
        if qubit == 0 || qubit > self.n_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                n_qubits: self.n_qubits,
            });
        }
        let stride = 1usize << shift_of(self.n_qubits, qubit);
        let m = u.matrix();
        for base in 0..self.dim() {
            if base & stride != 0 {
                continue;
            }
            let a0 = self.amplitudes[base];
            let a1 = self.amplitudes[base | stride];
            self.amplitudes[base] = m[0][0] * a0 + m[0][1] * a1;
            self.amplitudes[base | stride] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(())
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        self.same_size(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|`; insensitive to global phase.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner_product(other)?.norm().min(1.0))
    }

    /// Largest absolute amplitude difference.
    pub fn max_deviation(&self, other: &Self) -> Result<f64> {
        self.same_size(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        matches!(self.max_deviation(other), Ok(d) if d <= tol)
    }

    pub fn to_file_format(&self) -> StateFile {
        StateFile {
            n_qubits: self.n_qubits,
            amplitudes: self.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file_format()).expect("state serializes")
    }

    /// Parses the state file format; rejects wrong lengths and states whose
    /// norm differs from 1 by more than [`LOAD_NORM_TOL`].
    pub fn from_json(text: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text)?;
        file.into_state()
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// On-disk representation: `{"n_qubits": n, "amplitudes": [[re, im], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub n_qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn into_state(self) -> Result<StateVector> {
        if self.n_qubits == 0 {
            return Err(Error::EmptyBits);
        }
        StateVector::normalized(
            self.n_qubits,
            self.amplitudes
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
            LOAD_NORM_TOL,
        )
    }
}

/// Factor-order map realizing the return operator.
///
/// `mapping()[k]` is the natural-order position (1-based) of the `k`-th tensor factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitPermutation {
    mapping: Vec<usize>,
}

impl QubitPermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &p in &mapping {
            if p == 0 || p > n {
                return Err(Error::InvalidPermutation(format!(
                    "position {p} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::InvalidPermutation(format!(
                    "position {p} appears twice"
                )));
            }
        }
        Ok(Self { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (1..=n).collect(),
        }
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut mapping = vec![0; self.mapping.len()];
        for (k, &p) in self.mapping.iter().enumerate() {
            mapping[p - 1] = k + 1;
        }
        Self { mapping }
    }
}

/// A 2×2 unitary acting on one qubit, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleQubitUnitary {
    m: [[Complex64; 2]; 2],
}

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl SingleQubitUnitary {
    pub const IDENTITY: Self = Self::real([[1.0, 0.0], [0.0, 1.0]]);
    pub const PAULI_X: Self = Self::real([[0.0, 1.0], [1.0, 0.0]]);
    pub const PAULI_Z: Self = Self::real([[1.0, 0.0], [0.0, -1.0]]);
    pub const PAULI_Y: Self = Self {
        m: [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
    };

    /// Validates unitarity to within [`AMPLITUDE_TOL`].
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let u = Self { m };
        let deviation = u.unitarity_deviation();
        if deviation > AMPLITUDE_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(u)
    }

    pub(crate) const fn real(m: [[f64; 2]; 2]) -> Self {
        Self {
            m: [
                [c(m[0][0], 0.0), c(m[0][1], 0.0)],
                [c(m[1][0], 0.0), c(m[1][1], 0.0)],
            ],
        }
    }

    pub(crate) fn from_matrix_unchecked(m: [[Complex64; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &[[Complex64; 2]; 2] {
        &self.m
    }

    pub fn dagger(&self) -> Self {
        let m = &self.m;
        Self {
            m: [
                [m[0][0].conj(), m[1][0].conj()],
                [m[0][1].conj(), m[1][1].conj()],
            ],
        }
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        let mut m = [[c(0.0, 0.0); 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self { m }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut m = self.m;
        m.iter_mut().flatten().for_each(|x| *x *= factor);
        Self { m }
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    /// Max entry deviation of `U†U` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        self.dagger().mul(self).max_deviation(&Self::IDENTITY)
    }

    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Residual of `U†V ∝ I` with a unit-modulus factor: zero when `self` and
    /// `other` differ only by a global phase.
    pub fn phase_residual(&self, other: &Self) -> f64 {
        let q = self.dagger().mul(other).m;
        let off = q[0][1].norm().max(q[1][0].norm());
        let diag = (q[0][0] - q[1][1]).norm();
        let modulus = (q[0][0].norm() - 1.0).abs();
        off.max(diag).max(modulus)
    }

    pub fn equal_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        self.phase_residual(other) <= tol
    }
}
