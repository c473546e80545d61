//! Named input states for exercising the protocol.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::statevec::{check_cap, StateVector};

fn check_size(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(Error::EmptyBits);
    }
    check_cap(n_qubits)
}

/// `(|0…0⟩ + |1…1⟩)/√2`.
pub fn ghz(n_qubits: usize) -> Result<StateVector> {
    check_size(n_qubits)?;
    let dim = 1usize << n_qubits;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[dim - 1] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    StateVector::new(n_qubits, amps)
}

/// Equal superposition of the `n` single-excitation basis states.
pub fn w(n_qubits: usize) -> Result<StateVector> {
    check_size(n_qubits)?;
    let weight = 1.0 / (n_qubits as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
    for k in 0..n_qubits {
        amps[1 << k] = Complex64::new(weight, 0.0);
    }
    StateVector::new(n_qubits, amps)
}

/// Haar-uniform pure state from normalized complex Gaussian draws.
pub fn haar_random(n_qubits: usize, seed: u64) -> Result<StateVector> {
    check_size(n_qubits)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let amps = (0..1usize << n_qubits)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    Ok(StateVector::new(n_qubits, amps)?.normalize())
}

/// `⊗_s (α_s|0⟩ + β_s|1⟩)`, each factor normalized.
pub fn product(factors: &[[Complex64; 2]]) -> Result<StateVector> {
    let mut iter = factors.iter();
    let first = iter.next().ok_or(Error::EmptyBits)?;
    check_cap(factors.len())?;
    let mut state = StateVector::new(1, first.to_vec())?.normalize();
    for f in iter {
        state = state.tensor(&StateVector::new(1, f.to_vec())?.normalize())?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_normalized() {
        for n in 1..=5 {
            for s in [ghz(n).unwrap(), w(n).unwrap(), haar_random(n, 3).unwrap()] {
                assert!((s.norm() - 1.0).abs() < 1e-12);
                assert_eq!(s.n_qubits(), n);
            }
        }
        assert!(ghz(0).is_err());
    }

    #[test]
    fn w_state_support() {
        let s = w(3).unwrap();
        let support: Vec<usize> = (0..8).filter(|&i| s.amplitude(i).norm() > 0.0).collect();
        assert_eq!(support, vec![1, 2, 4]);
    }

    #[test]
    fn haar_random_is_seeded() {
        assert_eq!(haar_random(3, 7).unwrap(), haar_random(3, 7).unwrap());
        assert_ne!(haar_random(3, 7).unwrap(), haar_random(3, 8).unwrap());
    }
}
