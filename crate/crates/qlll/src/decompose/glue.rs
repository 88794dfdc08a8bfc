//! The decoupling transform and the desk-scale gluing verifier.
//!
//! A rank-1 constraint `|v><v|` that touches exactly one core qubit can be
//! split along that qubit: writing `|v> = a_0 |0>|v_0> + a_1 |1>|v_1>` (core
//! qubit first), any state on the remaining qubits that is orthogonal to
//! both branch states `|v_0>, |v_1>` satisfies the original constraint no
//! matter what the core qubit carries. Replacing each such constraint by the
//! rank-<=2 projector onto `span{v_0, v_1}` therefore decouples the
//! remainder from the core: a satisfying state for the core part tensored
//! with one for the decoupled remainder satisfies every original constraint.
//! [`glue_transform`] performs the replacement; [`glue_states`] verifies the
//! tensor claim numerically on every original constraint.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{DecomposeError, Result};
use crate::bits::{permute_local_amps, QubitEmbedding};
use crate::qsat::{check_state, Projector, QsatInstance, StateVector};
use crate::subspace::orthonormal_span;
use crate::tolerance::ToleranceConfig;

/// Bookkeeping for one remainder constraint through the transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueRecord {
    /// Index of the constraint in the original instance.
    pub original_index: usize,
    /// The core qubit it touched (original numbering), if any.
    pub glue_qubit: Option<usize>,
    /// Branches of the split whose norm fell below the rank tolerance.
    pub dropped_branches: usize,
    /// Rank of the transformed projector.
    pub rank: usize,
}

/// Output of [`glue_transform`]: the decoupled remainder instance and how it
/// maps back to the original.
#[derive(Debug, Clone)]
pub struct GluedInstance {
    /// Remainder instance on the outside register (qubits renumbered to
    /// `0..outside_qubits.len()`); nominal locality is inherited.
    pub instance: QsatInstance,
    /// `outside_qubits[i]` = original id of outside-register qubit `i`
    /// (ascending).
    pub outside_qubits: Vec<usize>,
    /// One record per remainder constraint, aligned with
    /// `instance.projectors()`.
    pub records: Vec<GlueRecord>,
    /// Original indices of the core constraints (all qubits in the core).
    pub h_indices: Vec<usize>,
}

fn core_mask(n: usize, v_h: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &v in v_h {
        if v >= n {
            return Err(DecomposeError::VertexOutOfRange { vertex: v, n });
        }
        mask[v] = true;
    }
    Ok(mask)
}

/// Decouples an instance from a core qubit set `v_h` (treated as a set).
///
/// Constraints acting only on core qubits are set aside (`h_indices`); every
/// other constraint must touch the core in at most one qubit — more is a
/// partition violation — and is either passed through (zero core qubits,
/// tuple renumbered) or split along its core qubit into the projector onto
/// the span of its two branch states (rank <= 2, locality reduced by one).
/// All input constraints must be rank 1.
pub fn glue_transform(
    inst: &QsatInstance,
    v_h: &[usize],
    tol: &ToleranceConfig,
) -> Result<GluedInstance> {
    for (index, p) in inst.projectors().iter().enumerate() {
        if p.rank() != 1 {
            return Err(DecomposeError::GlueRankNotOne {
                index,
                rank: p.rank(),
            });
        }
    }
    let n = inst.n_qubits();
    let mask = core_mask(n, v_h)?;
    let outside_qubits: Vec<usize> = (0..n).filter(|&q| !mask[q]).collect();
    let mut old_to_out = vec![None; n];
    for (i, &q) in outside_qubits.iter().enumerate() {
        old_to_out[q] = Some(i);
    }

    let mut projectors = Vec::new();
    let mut records = Vec::new();
    let mut h_indices = Vec::new();
    for (index, p) in inst.projectors().iter().enumerate() {
        let core_qubits: Vec<usize> = (0..p.locality())
            .filter(|&i| mask[p.qubits()[i]])
            .collect();
        if core_qubits.len() == p.locality() {
            h_indices.push(index);
            continue;
        }
        match core_qubits.len() {
            0 => {
                let tuple: Vec<usize> = p
                    .qubits()
                    .iter()
                    .map(|&q| old_to_out[q].expect("no core qubits in tuple"))
                    .collect();
                projectors.push(Projector::new(tuple, p.vectors().to_vec(), tol)?);
                records.push(GlueRecord {
                    original_index: index,
                    glue_qubit: None,
                    dropped_branches: 0,
                    rank: 1,
                });
            }
            1 => {
                let pos = core_qubits[0];
                let k_loc = p.locality();
                // Reorder the local register so the core qubit is the most
                // significant bit; the two halves of the amplitude vector
                // are then the branch states.
                let mut perm = Vec::with_capacity(k_loc);
                perm.push(pos);
                perm.extend((0..k_loc).filter(|&i| i != pos));
                let permuted = permute_local_amps(&p.vectors()[0], &perm);
                let half = 1usize << (k_loc - 1);
                let branches = [&permuted[..half], &permuted[half..]];
                let dropped_branches = branches
                    .iter()
                    .filter(|b| b.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt() <= tol.rank)
                    .count();
                let stacked =
                    DMatrix::from_fn(half, 2, |r, c| branches[c][r]);
                let basis = orthonormal_span(stacked, tol.rank)?;
                if basis.ncols() == 0 {
                    return Err(DecomposeError::NumericalFailure(
                        "both branches of a unit vector vanished",
                    ));
                }
                let vectors: Vec<Vec<Complex64>> = basis
                    .column_iter()
                    .map(|col| col.iter().copied().collect())
                    .collect();
                let tuple: Vec<usize> = p
                    .qubits()
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != pos)
                    .map(|(_, &q)| old_to_out[q].expect("outside qubit"))
                    .collect();
                let rank = vectors.len();
                projectors.push(Projector::new(tuple, vectors, tol)?);
                records.push(GlueRecord {
                    original_index: index,
                    glue_qubit: Some(p.qubits()[pos]),
                    dropped_branches,
                    rank,
                });
            }
            count => {
                return Err(DecomposeError::PartitionViolation { index, count });
            }
        }
    }
    let instance = QsatInstance::new(outside_qubits.len(), inst.k(), projectors)?;
    Ok(GluedInstance {
        instance,
        outside_qubits,
        records,
        h_indices,
    })
}

/// Restricts an instance to the constraints acting only on core qubits,
/// renumbered to the core register `0..v_h.len()` (core qubits ascending).
/// Returns the restricted instance and the original constraint indices.
pub fn core_restriction(
    inst: &QsatInstance,
    v_h: &[usize],
) -> Result<(QsatInstance, Vec<usize>)> {
    let n = inst.n_qubits();
    let mask = core_mask(n, v_h)?;
    let core_qubits: Vec<usize> = (0..n).filter(|&q| mask[q]).collect();
    let mut old_to_core = vec![None; n];
    for (i, &q) in core_qubits.iter().enumerate() {
        old_to_core[q] = Some(i);
    }
    let mut projectors = Vec::new();
    let mut indices = Vec::new();
    for (index, p) in inst.projectors().iter().enumerate() {
        if p.qubits().iter().all(|&q| mask[q]) {
            let tuple: Vec<usize> = p
                .qubits()
                .iter()
                .map(|&q| old_to_core[q].expect("core qubit"))
                .collect();
            // Re-validation is skipped: the vectors are those of an
            // already-validated projector.
            projectors.push(Projector::new(
                tuple,
                p.vectors().to_vec(),
                &ToleranceConfig::default(),
            )?);
            indices.push(index);
        }
    }
    let instance = QsatInstance::new(core_qubits.len(), inst.k(), projectors)?;
    Ok((instance, indices))
}

/// Result of [`glue_states`]: the stitched state and its residuals on every
/// original constraint.
#[derive(Debug, Clone)]
pub struct GluedStateReport {
    pub state: StateVector,
    /// Residual per original constraint, in instance order.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
}

/// Stitches a core state and a remainder state into a full-register state
/// and verifies every original constraint.
///
/// Preconditions (checked): `phi_core` is a unit state on the core register
/// (`v_h` ascending) satisfying the core restriction; `phi_out` is a unit
/// state on the outside register satisfying the decoupled remainder from
/// [`glue_transform`]. The output is the product state carrying `phi_core`
/// on the core qubits and `phi_out` on the rest; by the decoupling argument
/// it must satisfy every original constraint, and this is verified within
/// the residual tolerance before returning.
pub fn glue_states(
    inst: &QsatInstance,
    v_h: &[usize],
    phi_core: &StateVector,
    phi_out: &StateVector,
    tol: &ToleranceConfig,
) -> Result<GluedStateReport> {
    let n = inst.n_qubits();
    let mask = core_mask(n, v_h)?;
    let core_qubits: Vec<usize> = (0..n).filter(|&q| mask[q]).collect();
    let n_core = core_qubits.len();
    if phi_core.n_qubits() != n_core {
        return Err(DecomposeError::StateMismatch {
            role: "core",
            expected: n_core,
            got: phi_core.n_qubits(),
        });
    }
    if phi_out.n_qubits() != n - n_core {
        return Err(DecomposeError::StateMismatch {
            role: "remainder",
            expected: n - n_core,
            got: phi_out.n_qubits(),
        });
    }
    for (role, state) in [("core", phi_core), ("remainder", phi_out)] {
        let norm = state.norm();
        if (norm - 1.0).abs() > tol.ortho {
            return Err(DecomposeError::StateNotNormalized { role, norm });
        }
    }

    let glued = glue_transform(inst, v_h, tol)?;
    let out_check = check_state(&glued.instance, phi_out, tol)?;
    if !out_check.satisfied {
        let offender = out_check
            .residuals
            .iter()
            .position(|&r| r > tol.residual)
            .expect("some residual exceeded the tolerance");
        return Err(DecomposeError::ResidualTooLarge {
            stage: "remainder state against the decoupled instance",
            index: glued.records[offender].original_index,
            residual: out_check.residuals[offender],
        });
    }
    let (core_inst, core_indices) = core_restriction(inst, v_h)?;
    let core_check = check_state(&core_inst, phi_core, tol)?;
    if !core_check.satisfied {
        let offender = core_check
            .residuals
            .iter()
            .position(|&r| r > tol.residual)
            .expect("some residual exceeded the tolerance");
        return Err(DecomposeError::ResidualTooLarge {
            stage: "core state against the core restriction",
            index: core_indices[offender],
            residual: core_check.residuals[offender],
        });
    }

    // Product state across the core/outside cut.
    let state = if n == 0 {
        StateVector::new(0, vec![phi_core.amplitudes()[0] * phi_out.amplitudes()[0]])?
    } else {
        let emb = QubitEmbedding::new(n, &core_qubits)
            .expect("core qubits are distinct and in range");
        let amps: Vec<Complex64> = (0..1usize << n)
            .map(|g| {
                phi_core.amplitudes()[emb.gather_local(g)]
                    * phi_out.amplitudes()[emb.gather_rest(g)]
            })
            .collect();
        StateVector::new(n, amps)?
    };

    let full_check = check_state(inst, &state, tol)?;
    if !full_check.satisfied {
        let offender = full_check
            .residuals
            .iter()
            .position(|&r| r > tol.residual)
            .expect("some residual exceeded the tolerance");
        return Err(DecomposeError::ResidualTooLarge {
            stage: "stitched state against the original instance",
            index: offender,
            residual: full_check.residuals[offender],
        });
    }
    Ok(GluedStateReport {
        state,
        max_residual: full_check.max_residual,
        residuals: full_check.residuals,
    })
}
