//! The whole-instance hybrid certificate: matching on the high-degree core,
//! degree bound on the remainder.
//!
//! Operating purely on the constraint hypergraph, the pipeline is:
//! build the core at the degree cutoff, check that the core constraints
//! admit a private-vertex matching, and check that no vertex outside the
//! core carries more than `2^k / (4 e k)` remainder constraints. A pass
//! certifies satisfiability of generic rank-1 instances on the graph through
//! the decoupling argument — a satisfying state exists, though at large `n`
//! none is materialized.
//!
//! The remainder threshold `2^k / (4 e k)` is fixed: it is what the
//! decoupled rank-2 constraints need from the degree bound. The core cutoff
//! defaults to the same value — at that cutoff every vertex outside the core
//! meets the threshold automatically — but may be tuned; the threshold never
//! moves with it.

use super::matching::{hall_matching, Matching, MatchingOutcome};
use super::{audit_partition, build_vh, DecomposeError, Partition, Result};
use crate::certificate::{CertKind, Certificate, Verdict, Witness};
use crate::ensembles::Hypergraph;
use crate::qsat::QsatInstance;

/// Default core degree cutoff, `2^k / (4 e k)`.
pub fn default_cutoff(k: usize) -> f64 {
    (2f64).powi(k as i32) / (4.0 * std::f64::consts::E * k as f64)
}

/// Remainder degree threshold, `2^k / (4 e k)` — fixed regardless of the
/// cutoff the core was built with.
pub fn l_degree_threshold(k: usize) -> f64 {
    default_cutoff(k)
}

/// Everything the hybrid pipeline measured, plus the certificate.
#[derive(Debug, Clone)]
pub struct HybridReport {
    pub cutoff: f64,
    pub partition: Partition,
    /// Matching of core constraints to vertices; edge indices refer to the
    /// original edge list.
    pub matching: MatchingOutcome,
    pub matching_pass: bool,
    /// Largest number of remainder constraints on any vertex outside the
    /// core (0 when there are none).
    pub max_l_degree_outside: usize,
    pub l_degree_threshold: f64,
    pub l_degree_pass: bool,
    pub certificate: Certificate,
}

/// Runs the hybrid pipeline on a constraint hypergraph.
///
/// `cutoff` overrides the core degree cutoff (default `2^k / (4 e k)`).
/// The partition invariants — in particular that every remainder edge has at
/// most one core vertex, which the decoupling step requires — are re-audited
/// before certifying.
pub fn hybrid_certificate_graph(g: &Hypergraph, cutoff: Option<f64>) -> Result<HybridReport> {
    let k = g.k();
    let d = cutoff.unwrap_or_else(|| default_cutoff(k));
    let partition = build_vh(g, d)?;
    audit_partition(g, &partition)?;

    let core_edge_sets: Vec<Vec<usize>> = partition
        .h_edges()
        .iter()
        .map(|&e| g.edges()[e].clone())
        .collect();
    let matching = remap_outcome(
        hall_matching(&core_edge_sets, g.n_vertices())?,
        partition.h_edges(),
    );
    let matching_pass = matching.is_perfect();

    let mask = partition.core_mask();
    let mut l_degree = vec![0usize; g.n_vertices()];
    for &e in partition.l_edges() {
        for &v in &g.edges()[e] {
            if !mask[v] {
                l_degree[v] += 1;
            }
        }
    }
    let max_l_degree_outside = l_degree.iter().copied().max().unwrap_or(0);
    let threshold = l_degree_threshold(k);
    let l_degree_pass = (max_l_degree_outside as f64) <= threshold;

    let pass = matching_pass && l_degree_pass;
    let certificate = Certificate {
        kind: CertKind::Hybrid,
        verdict: Verdict::from_bool(pass),
        bound: None,
        witness: Witness::Hybrid {
            cutoff: d,
            vh_size: partition.v_h().len(),
            h_size: partition.h_edges().len(),
            l_size: partition.l_edges().len(),
            matching_pass,
            l_degree_pass,
            max_l_degree_outside,
            l_degree_threshold: threshold,
        },
    };
    Ok(HybridReport {
        cutoff: d,
        partition,
        matching,
        matching_pass,
        max_l_degree_outside,
        l_degree_threshold: threshold,
        l_degree_pass,
        certificate,
    })
}

/// Hybrid certificate for a constraint instance. All projectors must be
/// rank 1 (the decoupling argument is for rank-1 constraints) and act on
/// exactly `k` qubits.
pub fn hybrid_certificate(inst: &QsatInstance, cutoff: Option<f64>) -> Result<HybridReport> {
    for (index, p) in inst.projectors().iter().enumerate() {
        if p.rank() != 1 {
            return Err(DecomposeError::GlueRankNotOne {
                index,
                rank: p.rank(),
            });
        }
    }
    let g = Hypergraph::from_instance(inst)?;
    hybrid_certificate_graph(&g, cutoff)
}

fn remap_outcome(outcome: MatchingOutcome, edge_ids: &[usize]) -> MatchingOutcome {
    let remap_pairs = |m: Matching| Matching {
        pairs: m
            .pairs
            .into_iter()
            .map(|(e, v)| (edge_ids[e], v))
            .collect(),
    };
    match outcome {
        MatchingOutcome::Perfect(m) => MatchingOutcome::Perfect(remap_pairs(m)),
        MatchingOutcome::Deficient {
            matching,
            violator_edges,
            violator_vertices,
        } => MatchingOutcome::Deficient {
            matching: remap_pairs(matching),
            violator_edges: violator_edges.into_iter().map(|e| edge_ids[e]).collect(),
            violator_vertices,
        },
    }
}

/// Asymptotic regime parameters for a partitioned sample at density `alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionReport {
    /// Largest vertex fraction certain to admit a core matching,
    /// `1 / (e (e^2 alpha)^(1/(k-2)))`.
    pub gamma: f64,
    /// Expected core fraction scale, `alpha / (12 D^2 k)`.
    pub epsilon0: f64,
    /// Measured `|V_H| / n`.
    pub vh_fraction: f64,
    /// Whether the measured core stayed within twice `epsilon0`.
    pub vh_within_bound: bool,
    /// Whether `2 epsilon0 < gamma`, the regime the matching guarantee
    /// needs.
    pub regime_ok: bool,
}

/// Evaluates the regime parameters for a partition of `g` at density
/// `alpha`. Requires `k >= 3` (the exponent `1/(k-2)` must exist).
pub fn region_report(g: &Hypergraph, partition: &Partition, alpha: f64) -> Result<RegionReport> {
    let k = g.k();
    if k < 3 {
        return Err(DecomposeError::ArityTooSmall(k));
    }
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(DecomposeError::BadRegion(format!(
            "density alpha = {alpha} must be positive and finite"
        )));
    }
    let e = std::f64::consts::E;
    let gamma = 1.0 / (e * (e * e * alpha).powf(1.0 / (k as f64 - 2.0)));
    let d = partition.cutoff();
    let epsilon0 = alpha / (12.0 * d * d * k as f64);
    let n = g.n_vertices().max(1);
    let vh_fraction = partition.v_h().len() as f64 / n as f64;
    Ok(RegionReport {
        gamma,
        epsilon0,
        vh_fraction,
        vh_within_bound: vh_fraction <= 2.0 * epsilon0,
        regime_ok: 2.0 * epsilon0 < gamma,
    })
}
