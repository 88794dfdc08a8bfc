//! k-local projector instances on qubit registers.
//!
//! An instance is a list of local projectors `Pi_i = pi_i (x) I`, each acting
//! on an ordered tuple of qubits. The instance is satisfiable when the kernels
//! of the embedded projectors have a nonzero common intersection, i.e. some
//! state is annihilated by every constraint.
//!
//! Basis conventions live in [`crate::bits`]: qubit 0 is the most significant
//! bit, and a projector's local amplitudes are indexed MSB-first in its tuple
//! order.

mod haar;
mod io;
mod oracle;

pub use haar::haar_random_state;
pub use io::{
    instance_from_json, instance_to_json, read_instance, read_state, state_from_json,
    state_to_json, write_instance, write_state,
};
pub use oracle::{
    brute_force_sat_dim, check_state, find_satisfying_state, satisfying_space, BruteForceOptions,
    StateCheck,
};

use num_complex::Complex64;

use crate::bits::QubitEmbedding;
use crate::tolerance::ToleranceConfig;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum QsatError {
    #[error("projector qubit {qubit} is out of range for an {n}-qubit register")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("projector qubit tuple contains a repeated index")]
    RepeatedQubit,
    #[error("projector has locality 0")]
    EmptyTuple,
    #[error("projector vector has length {got}, expected {expected}")]
    BadVectorLength { expected: usize, got: usize },
    #[error("projector has rank {rank}, limit for locality {locality} is {max}")]
    RankTooLarge {
        rank: usize,
        locality: usize,
        max: usize,
    },
    #[error("projector has no vectors; rank must be at least 1")]
    RankZero,
    #[error("projector vectors are not orthonormal within tolerance")]
    NotOrthonormal,
    #[error("amplitude is not finite")]
    NonFiniteAmplitude,
    #[error("instance declares locality {k} but a projector acts on {locality} qubits")]
    LocalityAboveK { k: usize, locality: usize },
    #[error("register needs {n} qubits; instance has {expected}")]
    RegisterMismatch { expected: usize, n: usize },
    #[error("state has {got} amplitudes, expected {expected}")]
    BadStateLength { expected: usize, got: usize },
    #[error(
        "brute force on {n} qubits exceeds the guard of {max} (the guard is configurable)"
    )]
    RegisterTooLarge { n: usize, max: usize },
    #[error("no satisfying state reachable within tolerance: {0}")]
    StateConstruction(&'static str),
    #[error("instance format error: {0}")]
    Format(String),
    #[error(transparent)]
    Subspace(#[from] crate::subspace::SubspaceError),
}

type Result<T> = std::result::Result<T, QsatError>;

/// A rank-`r` projector acting on an ordered tuple of qubits, stored as `r`
/// orthonormal local vectors of length `2^locality`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    qubits: Vec<usize>,
    vectors: Vec<Vec<Complex64>>,
}

impl Projector {
    /// Validates tuple and vectors. The tuple order is semantic: local
    /// amplitude indices read the tuple MSB-first.
    pub fn new(
        qubits: Vec<usize>,
        vectors: Vec<Vec<Complex64>>,
        tol: &ToleranceConfig,
    ) -> Result<Self> {
        if qubits.is_empty() {
            return Err(QsatError::EmptyTuple);
        }
        let mut sorted = qubits.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(QsatError::RepeatedQubit);
        }
        let locality = qubits.len();
        let dim = 1usize << locality;
        if vectors.is_empty() {
            return Err(QsatError::RankZero);
        }
        if vectors.len() > dim {
            return Err(QsatError::RankTooLarge {
                rank: vectors.len(),
                locality,
                max: dim,
            });
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(QsatError::BadVectorLength {
                    expected: dim,
                    got: v.len(),
                });
            }
            if v.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(QsatError::NonFiniteAmplitude);
            }
        }
        for i in 0..vectors.len() {
            for j in i..vectors.len() {
                let dot: Complex64 = vectors[i]
                    .iter()
                    .zip(&vectors[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                if (dot - Complex64::new(target, 0.0)).norm() > tol.ortho {
                    return Err(QsatError::NotOrthonormal);
                }
            }
        }
        Ok(Self { qubits, vectors })
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    /// Number of qubits the projector acts on.
    pub fn locality(&self) -> usize {
        self.qubits.len()
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    /// Largest qubit index referenced.
    pub fn max_qubit(&self) -> usize {
        *self.qubits.iter().max().expect("tuple is nonempty")
    }
}

/// A k-QSAT instance: a register size, a nominal locality `k`, and projectors.
///
/// `k` is the nominal locality: every projector acts on at most `k` qubits.
/// Decoupled instances produced by the gluing transform carry projectors of
/// locality `k - 1` alongside untouched `k`-local ones, still under the
/// original nominal `k`; degree certificates use the nominal value.
#[derive(Debug, Clone, PartialEq)]
pub struct QsatInstance {
    n_qubits: usize,
    k: usize,
    projectors: Vec<Projector>,
}

impl QsatInstance {
    pub fn new(n_qubits: usize, k: usize, projectors: Vec<Projector>) -> Result<Self> {
        if k == 0 {
            return Err(QsatError::EmptyTuple);
        }
        for p in &projectors {
            if p.locality() > k {
                return Err(QsatError::LocalityAboveK {
                    k,
                    locality: p.locality(),
                });
            }
            if p.max_qubit() >= n_qubits {
                return Err(QsatError::QubitOutOfRange {
                    qubit: p.max_qubit(),
                    n: n_qubits,
                });
            }
        }
        Ok(Self {
            n_qubits,
            k,
            projectors,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Nominal locality.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn projectors(&self) -> &[Projector] {
        &self.projectors
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    /// Largest projector rank (0 for an empty instance).
    pub fn max_rank(&self) -> usize {
        self.projectors.iter().map(Projector::rank).max().unwrap_or(0)
    }

    /// True when every projector is rank 1.
    pub fn all_rank_one(&self) -> bool {
        self.projectors.iter().all(|p| p.rank() == 1)
    }

    /// Number of projectors containing each qubit.
    pub fn qubit_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n_qubits];
        for p in &self.projectors {
            for &q in p.qubits() {
                deg[q] += 1;
            }
        }
        deg
    }

    /// Dimension of the full register space, `2^n`.
    pub fn register_dim(&self) -> usize {
        1usize << self.n_qubits
    }
}

/// A pure state on an n-qubit register, amplitudes indexed MSB-first.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        let expected = 1usize << n_qubits;
        if amps.len() != expected {
            return Err(QsatError::BadStateLength {
                expected,
                got: amps.len(),
            });
        }
        if amps.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(QsatError::NonFiniteAmplitude);
        }
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Rescales to unit norm; returns `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n <= 0.0 {
            return None;
        }
        Some(Self {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|c| c / n).collect(),
        })
    }

    /// Tensor product, `self` on the most significant qubits.
    pub fn tensor(&self, other: &Self) -> Self {
        let n = self.n_qubits + other.n_qubits;
        let mut amps = Vec::with_capacity(1usize << n);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self { n_qubits: n, amps }
    }
}

/// Norm of `Pi |psi>` for one projector embedded in an `n`-qubit register.
///
/// Because the local vectors are orthonormal, the squared residual is the sum
/// over rest-assignments of the squared overlaps with each local vector; the
/// register-size matrix is never materialized.
pub fn projector_residual(p: &Projector, psi: &StateVector) -> Result<f64> {
    if p.max_qubit() >= psi.n_qubits() {
        return Err(QsatError::QubitOutOfRange {
            qubit: p.max_qubit(),
            n: psi.n_qubits(),
        });
    }
    let emb = QubitEmbedding::new(psi.n_qubits(), p.qubits())
        .expect("projector tuple validated at construction");
    let mut local = vec![Complex64::new(0.0, 0.0); emb.local_states()];
    let mut total = 0.0f64;
    for t in 0..emb.rest_states() {
        let base = emb.scatter_rest(t);
        for (l, slot) in local.iter_mut().enumerate() {
            *slot = psi.amplitudes()[base | emb.scatter_local(l)];
        }
        for v in p.vectors() {
            let overlap: Complex64 = v.iter().zip(&local).map(|(a, b)| a.conj() * b).sum();
            total += overlap.norm_sqr();
        }
    }
    Ok(total.sqrt())
}
