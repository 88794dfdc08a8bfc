//! Versioned JSON formats for instances and states.
//!
//! Instance schema (version 1):
//!
//! ```json
//! {
//!   "version": 1,
//!   "n_qubits": 4,
//!   "projectors": [
//!     { "qubits": [0, 2], "vectors": [[[re, im], [re, im], [re, im], [re, im]]] }
//!   ]
//! }
//! ```
//!
//! Complex amplitudes are `[re, im]` pairs. Doubles round-trip bit-exactly
//! (shortest-representation printing), so writing and re-reading an instance
//! reproduces it identically; non-finite values are rejected before writing.
//!
//! States use the same conventions: `{"version", "n_qubits", "amplitudes"}`.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Projector, QsatError, QsatInstance, StateVector};
use crate::tolerance::ToleranceConfig;

pub const INSTANCE_FORMAT_VERSION: u32 = 1;

type Result<T> = std::result::Result<T, QsatError>;

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    version: u32,
    n_qubits: usize,
    projectors: Vec<ProjectorFile>,
}

#[derive(Serialize, Deserialize)]
struct ProjectorFile {
    qubits: Vec<usize>,
    vectors: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct StateFile {
    version: u32,
    n_qubits: usize,
    amplitudes: Vec<[f64; 2]>,
}

/// Serializes an instance to the canonical JSON text (deterministic bytes).
pub fn instance_to_json(inst: &QsatInstance) -> String {
    let file = InstanceFile {
        version: INSTANCE_FORMAT_VERSION,
        n_qubits: inst.n_qubits(),
        projectors: inst
            .projectors()
            .iter()
            .map(|p| ProjectorFile {
                qubits: p.qubits().to_vec(),
                vectors: p
                    .vectors()
                    .iter()
                    .map(|v| v.iter().map(|c| [c.re, c.im]).collect())
                    .collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("instance serialization is infallible");
    s.push('\n');
    s
}

/// Parses and fully validates an instance. The nominal locality is inferred
/// as the largest projector locality (1 for an empty instance).
pub fn instance_from_json(text: &str, tol: &ToleranceConfig) -> Result<QsatInstance> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| QsatError::Format(e.to_string()))?;
    if file.version != INSTANCE_FORMAT_VERSION {
        return Err(QsatError::Format(format!(
            "unsupported instance format version {} (expected {})",
            file.version, INSTANCE_FORMAT_VERSION
        )));
    }
    let mut projectors = Vec::with_capacity(file.projectors.len());
    for p in file.projectors {
        let vectors: Vec<Vec<Complex64>> = p
            .vectors
            .into_iter()
            .map(|v| v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        projectors.push(Projector::new(p.qubits, vectors, tol)?);
    }
    let k = projectors
        .iter()
        .map(Projector::locality)
        .max()
        .unwrap_or(1);
    QsatInstance::new(file.n_qubits, k, projectors)
}

pub fn write_instance(path: &Path, inst: &QsatInstance) -> Result<()> {
    std::fs::write(path, instance_to_json(inst))
        .map_err(|e| QsatError::Format(format!("writing {}: {e}", path.display())))
}

pub fn read_instance(path: &Path, tol: &ToleranceConfig) -> Result<QsatInstance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| QsatError::Format(format!("reading {}: {e}", path.display())))?;
    instance_from_json(&text, tol)
}

/// Serializes a state to canonical JSON text (deterministic bytes).
pub fn state_to_json(state: &StateVector) -> String {
    let file = StateFile {
        version: INSTANCE_FORMAT_VERSION,
        n_qubits: state.n_qubits(),
        amplitudes: state.amplitudes().iter().map(|c| [c.re, c.im]).collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("state serialization is infallible");
    s.push('\n');
    s
}

pub fn state_from_json(text: &str) -> Result<StateVector> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| QsatError::Format(e.to_string()))?;
    if file.version != INSTANCE_FORMAT_VERSION {
        return Err(QsatError::Format(format!(
            "unsupported state format version {} (expected {})",
            file.version, INSTANCE_FORMAT_VERSION
        )));
    }
    let amps = file
        .amplitudes
        .into_iter()
        .map(|[re, im]| Complex64::new(re, im))
        .collect();
    StateVector::new(file.n_qubits, amps)
}

pub fn write_state(path: &Path, state: &StateVector) -> Result<()> {
    std::fs::write(path, state_to_json(state))
        .map_err(|e| QsatError::Format(format!("writing {}: {e}", path.display())))
}

pub fn read_state(path: &Path) -> Result<StateVector> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| QsatError::Format(format!("reading {}: {e}", path.display())))?;
    state_from_json(&text)
}
