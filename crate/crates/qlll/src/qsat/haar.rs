//! Haar-distributed pure states.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::StateVector;

/// Samples a Haar-random pure state on `n_qubits`.
///
/// Amplitudes are i.i.d. standard complex Gaussians, normalized. Unitary
/// invariance of the Gaussian vector makes the result Haar on the unit sphere;
/// in particular `E |<e|v>|^2 = 2^-n` for any fixed unit vector `e`.
pub fn haar_random_state<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> StateVector {
    let dim = 1usize << n_qubits;
    loop {
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm_sq: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
        // A numerically zero draw has probability ~0; resample rather than
        // divide by it.
        if norm_sq > 1e-300 {
            let norm = norm_sq.sqrt();
            let amps = amps.into_iter().map(|c| c / norm).collect();
            return StateVector::new(n_qubits, amps).expect("constructed with correct length");
        }
    }
}
