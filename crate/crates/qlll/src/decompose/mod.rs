//! Core/remainder decomposition of constraint hypergraphs.
//!
//! Degree-based satisfiability certificates fail on random instances because
//! a few vertices always exceed the average degree. The cure is surgical:
//! close off a small "core" around the high-degree vertices, certify it by
//! matching, certify the low-degree remainder by the degree bound, and glue
//! the two satisfying states together. This module provides the pieces:
//!
//! * [`build_vh`]: the layered closure that grows the core `V_H` from the
//!   over-degree vertices, pulling in every edge that meets it twice;
//! * [`hall_matching`] / [`matching_certificate`]: constraint-to-vertex
//!   matching with Hall-violator witnesses;
//! * [`glue_transform`] / [`glue_states`]: the decoupling transform that
//!   frees the remainder from the core, and the desk-scale verifier that
//!   stitches the two partial states and checks every original constraint;
//! * [`hybrid_certificate`]: matching on the core plus degree bound on the
//!   remainder, the whole-instance certificate.

mod glue;
mod hybrid;
mod matching;

pub use glue::{
    core_restriction, glue_states, glue_transform, GlueRecord, GluedInstance, GluedStateReport,
};
pub use hybrid::{
    default_cutoff, hybrid_certificate, hybrid_certificate_graph, l_degree_threshold,
    region_report, HybridReport, RegionReport,
};
pub use matching::{hall_matching, matching_certificate, Matching, MatchingOutcome};

use crate::ensembles::{EnsembleError, Hypergraph};
use crate::qsat::QsatError;

#[derive(Debug, thiserror::Error)]
pub enum DecomposeError {
    #[error("degree cutoff {0} must be positive and finite")]
    BadCutoff(f64),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("partition audit failed: {0}")]
    Audit(String),
    #[error("projector {index} has {count} qubits in the core; at most 1 is allowed outside the induced part")]
    PartitionViolation { index: usize, count: usize },
    #[error("projector {index} has rank {rank}; the gluing transform requires rank 1")]
    GlueRankNotOne { index: usize, rank: usize },
    #[error("{role} state acts on {got} qubits, expected {expected}")]
    StateMismatch {
        role: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{role} state has norm {norm}, expected 1 within tolerance")]
    StateNotNormalized { role: &'static str, norm: f64 },
    #[error("{stage}: constraint {index} has residual {residual:.3e}, above tolerance")]
    ResidualTooLarge {
        stage: &'static str,
        index: usize,
        residual: f64,
    },
    #[error("region parameters need arity k >= 3, got {0}")]
    ArityTooSmall(usize),
    #[error("bad region parameters: {0}")]
    BadRegion(String),
    #[error("numerical failure in {0}")]
    NumericalFailure(&'static str),
    #[error(transparent)]
    Qsat(#[from] QsatError),
    #[error(transparent)]
    Ensemble(#[from] EnsembleError),
    #[error(transparent)]
    Subspace(#[from] crate::subspace::SubspaceError),
}

type Result<T> = std::result::Result<T, DecomposeError>;

/// Partition of a hypergraph into core (`v_h`, `h_edges`) and remainder
/// (`l_edges`), with the layer trace of how the core grew.
///
/// Layer semantics: `v_layers[0]` is the set of vertices whose degree
/// exceeds the cutoff; `e_layers[i]` is the set of edges absorbed in round
/// `i + 1` (each had acquired a second core vertex), and `v_layers[i + 1]`
/// the vertices those edges newly contributed. Layers are pairwise disjoint
/// and their unions are exactly `v_h` and `h_edges`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    cutoff: f64,
    n_vertices: usize,
    n_edges: usize,
    v_h: Vec<usize>,
    h_edges: Vec<usize>,
    l_edges: Vec<usize>,
    v_layers: Vec<Vec<usize>>,
    e_layers: Vec<Vec<usize>>,
}

impl Partition {
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Core vertices, ascending.
    pub fn v_h(&self) -> &[usize] {
        &self.v_h
    }

    /// Indices of core edges (every vertex in the core), ascending.
    pub fn h_edges(&self) -> &[usize] {
        &self.h_edges
    }

    /// Indices of remainder edges (at most one core vertex), ascending.
    pub fn l_edges(&self) -> &[usize] {
        &self.l_edges
    }

    pub fn v_layers(&self) -> &[Vec<usize>] {
        &self.v_layers
    }

    pub fn e_layers(&self) -> &[Vec<usize>] {
        &self.e_layers
    }

    /// Number of absorption rounds (edge layers).
    pub fn rounds(&self) -> usize {
        self.e_layers.len()
    }

    /// Membership mask for the core vertex set.
    pub fn core_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n_vertices];
        for &v in &self.v_h {
            mask[v] = true;
        }
        mask
    }
}

/// Grows the high-degree core of `g` at degree cutoff `d`.
///
/// Round 0 seeds the core with every vertex of degree strictly above `d`.
/// Each later round absorbs every not-yet-absorbed edge that has two or more
/// vertices in the core, adding all its vertices, until no edge qualifies.
/// The result does not depend on processing order: an edge is absorbed in
/// the round at which it first sees its second core vertex, and the worklist
/// below visits each (vertex, incident edge) pair exactly once, counting
/// core vertices per edge as they appear.
///
/// Postconditions (checked by [`audit_partition`], asserted in tests): the
/// core edges are exactly the edges induced on `v_h`, and every remainder
/// edge has at most one vertex in `v_h`.
pub fn build_vh(g: &Hypergraph, d: f64) -> Result<Partition> {
    if !d.is_finite() || d <= 0.0 {
        return Err(DecomposeError::BadCutoff(d));
    }
    let n = g.n_vertices();
    let m = g.n_edges();
    let degrees = g.degrees();

    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, edge) in g.edges().iter().enumerate() {
        for &v in edge {
            incident[v].push(e);
        }
    }

    let mut in_core = vec![false; n];
    let mut in_h = vec![false; m];
    let mut core_count = vec![0usize; m];

    let seed: Vec<usize> = (0..n).filter(|&v| degrees[v] as f64 > d).collect();
    for &v in &seed {
        in_core[v] = true;
    }
    let mut v_layers = vec![seed.clone()];
    let mut e_layers: Vec<Vec<usize>> = Vec::new();
    let mut frontier = seed;

    while !frontier.is_empty() {
        let mut absorbed: Vec<usize> = Vec::new();
        for &v in &frontier {
            for &e in &incident[v] {
                if in_h[e] {
                    continue;
                }
                core_count[e] += 1;
                if core_count[e] >= 2 {
                    in_h[e] = true;
                    absorbed.push(e);
                }
            }
        }
        if absorbed.is_empty() {
            break;
        }
        absorbed.sort_unstable();
        let mut new_vertices: Vec<usize> = Vec::new();
        for &e in &absorbed {
            for &v in &g.edges()[e] {
                if !in_core[v] {
                    in_core[v] = true;
                    new_vertices.push(v);
                }
            }
        }
        new_vertices.sort_unstable();
        e_layers.push(absorbed);
        v_layers.push(new_vertices.clone());
        frontier = new_vertices;
    }

    let v_h: Vec<usize> = (0..n).filter(|&v| in_core[v]).collect();
    let h_edges: Vec<usize> = (0..m).filter(|&e| in_h[e]).collect();
    let l_edges: Vec<usize> = (0..m).filter(|&e| !in_h[e]).collect();
    Ok(Partition {
        cutoff: d,
        n_vertices: n,
        n_edges: m,
        v_h,
        h_edges,
        l_edges,
        v_layers,
        e_layers,
    })
}

/// Re-derives every partition invariant from scratch and reports the first
/// violation. Used as a postcondition in tests and inside the hybrid
/// certificate.
pub fn audit_partition(g: &Hypergraph, p: &Partition) -> Result<()> {
    let n = g.n_vertices();
    let m = g.n_edges();
    if p.n_vertices != n || p.n_edges != m {
        return Err(DecomposeError::Audit(format!(
            "partition recorded ({}, {}) vertices/edges, graph has ({n}, {m})",
            p.n_vertices, p.n_edges
        )));
    }

    // Layer disjointness and union identities.
    let mut seen_v = vec![false; n];
    for layer in &p.v_layers {
        for &v in layer {
            if v >= n {
                return Err(DecomposeError::VertexOutOfRange { vertex: v, n });
            }
            if seen_v[v] {
                return Err(DecomposeError::Audit(format!(
                    "vertex {v} appears in two layers"
                )));
            }
            seen_v[v] = true;
        }
    }
    let union_v: Vec<usize> = (0..n).filter(|&v| seen_v[v]).collect();
    if union_v != p.v_h {
        return Err(DecomposeError::Audit(
            "core vertex set differs from the union of vertex layers".into(),
        ));
    }
    let mut seen_e = vec![false; m];
    for layer in &p.e_layers {
        for &e in layer {
            if e >= m || seen_e[e] {
                return Err(DecomposeError::Audit(format!(
                    "edge {e} out of range or in two layers"
                )));
            }
            seen_e[e] = true;
        }
    }
    let union_e: Vec<usize> = (0..m).filter(|&e| seen_e[e]).collect();
    if union_e != p.h_edges {
        return Err(DecomposeError::Audit(
            "core edge set differs from the union of edge layers".into(),
        ));
    }

    // Seed layer is exactly the over-degree set.
    let degrees = g.degrees();
    let seed: Vec<usize> = (0..n).filter(|&v| degrees[v] as f64 > p.cutoff).collect();
    match p.v_layers.first() {
        Some(layer0) if *layer0 == seed => {}
        _ => {
            return Err(DecomposeError::Audit(
                "layer 0 is not the set of vertices above the cutoff".into(),
            ))
        }
    }

    // h and l complement each other.
    let mut in_h = vec![false; m];
    for &e in &p.h_edges {
        in_h[e] = true;
    }
    let l: Vec<usize> = (0..m).filter(|&e| !in_h[e]).collect();
    if l != p.l_edges {
        return Err(DecomposeError::Audit(
            "remainder edges are not the complement of the core edges".into(),
        ));
    }

    // Induced-edge characterization and the remainder bound.
    let mask = p.core_mask();
    for (e, edge) in g.edges().iter().enumerate() {
        let inside = edge.iter().filter(|&&v| mask[v]).count();
        if in_h[e] {
            if inside != edge.len() {
                return Err(DecomposeError::Audit(format!(
                    "core edge {e} has a vertex outside the core"
                )));
            }
        } else {
            if inside >= 2 {
                return Err(DecomposeError::Audit(format!(
                    "remainder edge {e} has {inside} core vertices"
                )));
            }
        }
    }
    // Every fully-inside edge is in the core (the fixpoint property).
    for (e, edge) in g.edges().iter().enumerate() {
        if !in_h[e] && edge.iter().all(|&v| mask[v]) {
            return Err(DecomposeError::Audit(format!(
                "edge {e} is induced on the core but was not absorbed"
            )));
        }
    }
    Ok(())
}
