//! Desk-scale brute-force satisfiability oracle.
//!
//! The satisfying subspace of an instance is the common kernel of the
//! embedded projectors. Each `Pi_i` is positive semidefinite, so that kernel
//! equals the null space of the sum `Sigma_i Pi_i`. Writing `W` for the
//! matrix whose columns are the embedded range vectors of all projectors,
//! `Sigma_i Pi_i = W W^H`, so the nonzero spectrum of the sum equals the
//! spectrum of the small Gram matrix `W^H W`. The oracle therefore thresholds
//! Gram eigenvalues instead of materializing the `2^n x 2^n` sum, which is the
//! same null-space computation at a fraction of the memory.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{projector_residual, Projector, QsatError, QsatInstance, StateVector};
use crate::bits::QubitEmbedding;
use crate::subspace::{AmbientSpace, Subspace};
use crate::tolerance::ToleranceConfig;

type Result<T> = std::result::Result<T, QsatError>;

/// Guard settings for the brute-force routines. `2^max_qubits`-length dense
/// vectors must fit comfortably in memory.
#[derive(Debug, Clone, Copy)]
pub struct BruteForceOptions {
    pub max_qubits: usize,
}

impl BruteForceOptions {
    pub const DEFAULT_MAX_QUBITS: usize = 14;
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        Self {
            max_qubits: Self::DEFAULT_MAX_QUBITS,
        }
    }
}

/// Residual report for one state against every projector of an instance.
#[derive(Debug, Clone)]
pub struct StateCheck {
    /// `|Pi_i psi|` per projector, in instance order.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    /// True when every residual is within the residual tolerance.
    pub satisfied: bool,
}

fn guard(n: usize, opts: &BruteForceOptions) -> Result<()> {
    if n > opts.max_qubits {
        return Err(QsatError::RegisterTooLarge {
            n,
            max: opts.max_qubits,
        });
    }
    Ok(())
}

/// Embedded range vectors of every projector, one column per (projector,
/// local vector, rest-assignment) triple. The columns of one projector are
/// orthonormal; columns of different projectors generally are not.
fn range_columns(inst: &QsatInstance) -> DMatrix<Complex64> {
    let dim = inst.register_dim();
    let total: usize = inst
        .projectors()
        .iter()
        .map(|p| p.rank() << (inst.n_qubits() - p.locality()))
        .sum();
    let mut w = DMatrix::zeros(dim, total);
    let mut col = 0usize;
    for p in inst.projectors() {
        let emb = QubitEmbedding::new(inst.n_qubits(), p.qubits())
            .expect("projector tuple validated at construction");
        for v in p.vectors() {
            for t in 0..emb.rest_states() {
                let base = emb.scatter_rest(t);
                for (l, amp) in v.iter().enumerate() {
                    w[(base | emb.scatter_local(l), col)] = *amp;
                }
                col += 1;
            }
        }
    }
    w
}

/// Rank of `W` via eigenvalues of the Gram matrix on the smaller side.
fn range_rank(w: &DMatrix<Complex64>, rank_tol: f64) -> Result<usize> {
    let (rows, cols) = w.shape();
    if cols == 0 {
        return Ok(0);
    }
    let gram = if cols <= rows {
        w.adjoint() * w
    } else {
        w * w.adjoint()
    };
    let eig = gram
        .try_symmetric_eigen(f64::EPSILON, 0)
        .ok_or(QsatError::StateConstruction("eigendecomposition failed"))?;
    let emax = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
    if emax <= 0.0 {
        return Ok(0);
    }
    Ok(eig
        .eigenvalues
        .iter()
        .filter(|&&v| v > rank_tol * emax)
        .count())
}

/// Dimension of the satisfying subspace, `2^n - rank(W)`.
///
/// Exact at desk scale: the kernel of the PSD sum is the orthogonal
/// complement of the span of the embedded ranges.
pub fn brute_force_sat_dim(
    inst: &QsatInstance,
    opts: &BruteForceOptions,
    tol: &ToleranceConfig,
) -> Result<usize> {
    guard(inst.n_qubits(), opts)?;
    if inst.is_empty() {
        return Ok(inst.register_dim());
    }
    let w = range_columns(inst);
    Ok(inst.register_dim() - range_rank(&w, tol.rank)?)
}

/// Kernel of a single embedded projector as a subspace of the register space.
///
/// The kernel factorizes: it is spanned by (local kernel vector) x (rest basis
/// state), so the basis is assembled from a small local complement without any
/// register-size decomposition.
pub fn satisfying_space(
    p: &Projector,
    n_qubits: usize,
    opts: &BruteForceOptions,
    tol: &ToleranceConfig,
) -> Result<Subspace> {
    guard(n_qubits, opts)?;
    if p.max_qubit() >= n_qubits {
        return Err(QsatError::QubitOutOfRange {
            qubit: p.max_qubit(),
            n: n_qubits,
        });
    }
    let local_dim = 1usize << p.locality();
    let local_amb = AmbientSpace::new(local_dim).expect("locality >= 1");
    let local_range = Subspace::span(local_amb, p.vectors(), tol)?;
    if local_range.rank() != p.rank() {
        return Err(QsatError::NotOrthonormal);
    }
    let local_kernel = local_range.complement(tol)?;

    let emb = QubitEmbedding::new(n_qubits, p.qubits())
        .expect("projector tuple validated at construction");
    let dim = 1usize << n_qubits;
    let cols = local_kernel.rank() * emb.rest_states();
    let mut basis = DMatrix::zeros(dim, cols);
    let mut col = 0usize;
    for j in 0..local_kernel.rank() {
        for t in 0..emb.rest_states() {
            let base = emb.scatter_rest(t);
            for l in 0..local_dim {
                basis[(base | emb.scatter_local(l), col)] = local_kernel.basis()[(l, j)];
            }
            col += 1;
        }
    }
    let amb = AmbientSpace::new(dim).expect("dim >= 2");
    // Tensor embedding of an orthonormal family is orthonormal; revalidating
    // the Gram matrix at register size would dominate the runtime.
    Ok(Subspace::from_orthonormal_basis_unchecked(amb, basis))
}

/// Finds a unit state in the satisfying subspace, or `None` when the instance
/// is unsatisfiable at the configured tolerance.
///
/// Deterministic: orthonormalizes the embedded ranges, then takes the standard
/// basis vector with the largest component outside that span. The returned
/// state is verified against every projector before being handed back.
pub fn find_satisfying_state(
    inst: &QsatInstance,
    opts: &BruteForceOptions,
    tol: &ToleranceConfig,
) -> Result<Option<StateVector>> {
    guard(inst.n_qubits(), opts)?;
    let dim = inst.register_dim();
    if inst.is_empty() {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[0] = Complex64::new(1.0, 0.0);
        return Ok(Some(StateVector::new(inst.n_qubits(), amps)?));
    }
    let w = range_columns(inst);
    let q = orthonormalize_columns(&w);
    if q.ncols() == dim {
        return Ok(None);
    }

    // Residual of e_j against span(q) is 1 - |row_j|^2; try candidates from
    // the largest residual down until one survives re-orthogonalization.
    let mut order: Vec<usize> = (0..dim).collect();
    let row_norm_sq: Vec<f64> = (0..dim).map(|j| q.row(j).norm_squared()).collect();
    order.sort_by(|&a, &b| {
        row_norm_sq[a]
            .partial_cmp(&row_norm_sq[b])
            .expect("finite norms")
    });
    for &j in order.iter().take(8) {
        let mut v = DVector::zeros(dim);
        v[j] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            let coeffs = q.adjoint() * &v;
            v -= &q * coeffs;
        }
        let norm = v.norm();
        if norm < 1e-8 {
            continue;
        }
        v /= Complex64::new(norm, 0.0);
        let state = StateVector::new(inst.n_qubits(), v.iter().cloned().collect())?;
        let report = check_state(inst, &state, tol)?;
        if report.satisfied {
            return Ok(Some(state));
        }
    }
    Err(QsatError::StateConstruction(
        "kernel is nonzero but no candidate met the residual tolerance",
    ))
}

/// Residuals of a state against every projector of an instance.
pub fn check_state(
    inst: &QsatInstance,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<StateCheck> {
    if psi.n_qubits() != inst.n_qubits() {
        return Err(QsatError::RegisterMismatch {
            expected: inst.n_qubits(),
            n: psi.n_qubits(),
        });
    }
    let mut residuals = Vec::with_capacity(inst.len());
    for p in inst.projectors() {
        residuals.push(projector_residual(p, psi)?);
    }
    let max_residual = residuals.iter().cloned().fold(0.0_f64, f64::max);
    Ok(StateCheck {
        satisfied: max_residual <= tol.residual,
        residuals,
        max_residual,
    })
}

/// Modified Gram-Schmidt with re-orthogonalization; keeps columns whose
/// residual after projection exceeds a fixed floor far above round-off.
fn orthonormalize_columns(w: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    const ACCEPT: f64 = 1e-7;
    let (rows, cols) = w.shape();
    let mut q: Vec<DVector<Complex64>> = Vec::new();
    for c in 0..cols {
        let mut v: DVector<Complex64> = w.column(c).into();
        for _ in 0..2 {
            for u in &q {
                let coeff = u.dotc(&v);
                v.axpy(-coeff, u, Complex64::new(1.0, 0.0));
            }
        }
        let norm = v.norm();
        if norm > ACCEPT {
            v /= Complex64::new(norm, 0.0);
            q.push(v);
        }
        if q.len() == rows {
            break;
        }
    }
    let mut out = DMatrix::zeros(rows, q.len());
    for (i, u) in q.iter().enumerate() {
        out.set_column(i, u);
    }
    out
}
