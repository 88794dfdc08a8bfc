//! Lovasz-style satisfiability certificates.
//!
//! The subspace analogue of the local lemma replaces probabilities with
//! relative dimensions: if each "bad" subspace complement is small and the
//! dependency structure is sparse, the intersection of the good subspaces is
//! nonzero. The dependency graph connects projectors whose qubit tuples
//! share a qubit; projectors on disjoint tuples are mutually R-independent,
//! which is what licenses that conservative edge rule.
//!
//! Checks come in three strengths:
//! * [`symmetric_qlll_check`]: the scalar condition `p * e * (d+1) <= 1`.
//! * [`asymmetric_qlll_check`]: per-node weights `y_i`, fully rational.
//! * [`qsat_degree_certificate`]: the instance-level corollary; passes when
//!   no qubit is contained in more than `2^k / (e * r_max * k)` projectors,
//!   which certifies a nonzero satisfying subspace.

mod cnf;

pub use cnf::{classical_ksat_certificate, parse_dimacs, CnfError, CnfFormula};

use num::BigInt;

use crate::certificate::{BoundField, CertKind, Certificate, Verdict, Witness};
use crate::qsat::{brute_force_sat_dim, BruteForceOptions, QsatError, QsatInstance};
use crate::rational::{rational_approx, rational_pow, rational_to_string, ratio, Rational};
use crate::tolerance::ToleranceConfig;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum LllError {
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("y[{index}] = {value} is outside [0, 1)")]
    YOutOfRange { index: usize, value: String },
    #[error("r[{index}] = {value} is outside [0, 1]")]
    ROutOfRange { index: usize, value: String },
    #[error("projector {index} has rank {rank}, above the declared maximum {r_max}")]
    RankAboveLimit {
        index: usize,
        rank: usize,
        r_max: usize,
    },
    #[error("r_max must be at least 1")]
    RMaxZero,
    #[error("node index {0} out of range")]
    NodeOutOfRange(usize),
    #[error(transparent)]
    Qsat(#[from] QsatError),
}

type Result<T> = std::result::Result<T, LllError>;

/// Undirected dependency graph over constraint indices; adjacency lists are
/// sorted and self-loop free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyGraph {
    adj: Vec<Vec<usize>>,
}

impl DependencyGraph {
    pub fn new(n_nodes: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n_nodes],
        }
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        let n = self.adj.len();
        if i >= n {
            return Err(LllError::NodeOutOfRange(i));
        }
        if j >= n {
            return Err(LllError::NodeOutOfRange(j));
        }
        if i == j {
            return Ok(());
        }
        if let Err(pos) = self.adj[i].binary_search(&j) {
            self.adj[i].insert(pos, j);
        }
        if let Err(pos) = self.adj[j].binary_search(&i) {
            self.adj[j].insert(pos, i);
        }
        Ok(())
    }

    /// Conservative dependency rule for constraint systems: nodes are
    /// adjacent when their supports share an element. Constraints on
    /// disjoint supports are tensor-independent, so omitting those edges is
    /// sound.
    pub fn from_supports(supports: &[Vec<usize>]) -> Self {
        let mut g = Self::new(supports.len());
        let max_elem = supports
            .iter()
            .flat_map(|s| s.iter().copied())
            .max()
            .map_or(0, |m| m + 1);
        let mut by_elem: Vec<Vec<usize>> = vec![Vec::new(); max_elem];
        for (i, s) in supports.iter().enumerate() {
            for &q in s {
                by_elem[q].push(i);
            }
        }
        for nodes in &by_elem {
            for a in 0..nodes.len() {
                for b in a + 1..nodes.len() {
                    g.add_edge(nodes[a], nodes[b]).expect("indices in range");
                }
            }
        }
        g
    }

    pub fn n_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }
}

/// Dependency graph of an instance: projectors sharing a qubit are adjacent.
pub fn dependency_graph(inst: &QsatInstance) -> DependencyGraph {
    let supports: Vec<Vec<usize>> = inst
        .projectors()
        .iter()
        .map(|p| p.qubits().to_vec())
        .collect();
    DependencyGraph::from_supports(&supports)
}

/// Symmetric local-lemma condition: `p * e * (d + 1) <= 1`, where `p` bounds
/// every constraint's complement measure and `d` the dependency degree.
///
/// Evaluated in double precision with Euler's constant; a product that lands
/// exactly on 1.0 counts as a fail so rounding can only make the check more
/// conservative.
pub fn symmetric_qlll_check(p: &Rational, d: u64) -> bool {
    let product = rational_approx(p) * std::f64::consts::E * ((d + 1) as f64);
    product < 1.0
}

/// Default per-node weights for the asymmetric condition: `y_i = 1/(d_i + 1)`
/// from the node's own degree. Isolated nodes take `y = 1/2` (the weight must
/// stay below 1, and 1/2 leaves the largest slack in the bound).
pub fn default_y(g: &DependencyGraph) -> Vec<Rational> {
    (0..g.n_nodes())
        .map(|i| {
            let d = g.degree(i);
            if d == 0 {
                ratio(1, 2)
            } else {
                ratio(1, d as u64 + 1)
            }
        })
        .collect()
}

/// Asymmetric local-lemma check over exact rationals.
///
/// Passes when `R(X_i) >= 1 - y_i * prod_{j ~ i} (1 - y_j)` for every node,
/// in which case the intersection satisfies
/// `R(/\ X_i) >= prod_i (1 - y_i)` (the reported bound).
pub fn asymmetric_qlll_check(
    r_values: &[Rational],
    g: &DependencyGraph,
    y: &[Rational],
) -> Result<Certificate> {
    let n = g.n_nodes();
    if r_values.len() != n {
        return Err(LllError::LengthMismatch {
            expected: n,
            got: r_values.len(),
        });
    }
    if y.len() != n {
        return Err(LllError::LengthMismatch {
            expected: n,
            got: y.len(),
        });
    }
    let zero = Rational::from_integer(BigInt::from(0));
    let one = Rational::from_integer(BigInt::from(1));
    for (i, yi) in y.iter().enumerate() {
        if yi < &zero || yi >= &one {
            return Err(LllError::YOutOfRange {
                index: i,
                value: rational_to_string(yi),
            });
        }
    }
    for (i, ri) in r_values.iter().enumerate() {
        if ri < &zero || ri > &one {
            return Err(LllError::ROutOfRange {
                index: i,
                value: rational_to_string(ri),
            });
        }
    }

    for i in 0..n {
        let mut neighborhood = one.clone();
        for &j in g.neighbors(i) {
            neighborhood *= &one - &y[j];
        }
        let required = &one - &y[i] * neighborhood;
        if r_values[i] < required {
            return Ok(Certificate {
                kind: CertKind::AsymmetricQlll,
                verdict: Verdict::Fail,
                bound: None,
                witness: Witness::Asymmetric {
                    violating_node: Some(i),
                    r_value: Some(rational_to_string(&r_values[i])),
                    required: Some(rational_to_string(&required)),
                },
            });
        }
    }
    let mut bound = one.clone();
    for yi in y {
        bound *= &one - yi;
    }
    Ok(Certificate {
        kind: CertKind::AsymmetricQlll,
        verdict: Verdict::Pass,
        bound: Some(BoundField::from_rational(&bound)),
        witness: Witness::Asymmetric {
            violating_node: None,
            r_value: None,
            required: None,
        },
    })
}

/// Degree threshold `2^k / (e * r_max * k)` for the instance-level check.
pub fn degree_threshold(k: usize, r_max: usize) -> f64 {
    (2f64).powi(k as i32) / (std::f64::consts::E * r_max as f64 * k as f64)
}

/// Instance-level satisfiability certificate from qubit degrees.
///
/// Passes when every qubit is contained in at most `2^k / (e * r_max * k)`
/// projectors (`k` = nominal locality, `r_max` = declared rank cap). On pass
/// the satisfying subspace is nonzero with relative dimension at least the
/// reported bound:
/// * dependency degree 0 (all supports disjoint): exact product
///   `prod_i (1 - rank_i / 2^locality_i)`;
/// * otherwise `(1 - 1/(d+1))^m` with `d = k * (max qubit degree - 1)`,
///   which dominates the per-projector dependency count.
pub fn qsat_degree_certificate(inst: &QsatInstance, r_max: usize) -> Result<Certificate> {
    if r_max == 0 {
        return Err(LllError::RMaxZero);
    }
    for (i, p) in inst.projectors().iter().enumerate() {
        if p.rank() > r_max {
            return Err(LllError::RankAboveLimit {
                index: i,
                rank: p.rank(),
                r_max,
            });
        }
    }
    let k = inst.k();
    let threshold = degree_threshold(k, r_max);
    let degrees = inst.qubit_degrees();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let worst_qubit = degrees.iter().position(|&d| d == max_degree);

    if (max_degree as f64) <= threshold {
        let bound = degree_bound(inst, max_degree);
        Ok(Certificate {
            kind: CertKind::QsatDegree,
            verdict: Verdict::Pass,
            bound: Some(BoundField::from_rational(&bound)),
            witness: Witness::DegreeBound {
                k,
                r_max,
                max_degree,
                threshold,
                worst_qubit: None,
            },
        })
    } else {
        Ok(Certificate {
            kind: CertKind::QsatDegree,
            verdict: Verdict::Fail,
            bound: None,
            witness: Witness::DegreeBound {
                k,
                r_max,
                max_degree,
                threshold,
                worst_qubit,
            },
        })
    }
}

fn degree_bound(inst: &QsatInstance, max_degree: usize) -> Rational {
    let one = Rational::from_integer(BigInt::from(1));
    let g = dependency_graph(inst);
    if g.max_degree() == 0 {
        // Disjoint supports: kernel fractions multiply exactly.
        let mut bound = one.clone();
        for p in inst.projectors() {
            bound *= &one - ratio(p.rank() as u64, 1u64 << p.locality());
        }
        return bound;
    }
    let d = (inst.k() as u64) * (max_degree as u64 - 1);
    let per_node = &one - ratio(1, d + 1);
    rational_pow(&per_node, inst.len() as u32)
}

/// Desk-scale soundness report: runs the degree certificate and, when it
/// passes, confronts its claims with the brute-force oracle.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub certificate: Certificate,
    /// Kernel dimension from the oracle; `None` when the certificate failed
    /// (a failing certificate claims nothing).
    pub brute_dim: Option<usize>,
    /// Exact relative dimension of the satisfying subspace.
    pub exact_r: Option<Rational>,
    /// True when the kernel is nonzero and its relative dimension meets the
    /// certificate bound.
    pub claim_holds: Option<bool>,
}

/// Runs [`qsat_degree_certificate`] and verifies a passing verdict against
/// the brute-force kernel (`dim > 0` and exact R >= bound).
pub fn qlll_oracle_report(
    inst: &QsatInstance,
    r_max: usize,
    opts: &BruteForceOptions,
    tol: &ToleranceConfig,
) -> Result<OracleReport> {
    let certificate = qsat_degree_certificate(inst, r_max)?;
    if !certificate.verdict.passed() {
        return Ok(OracleReport {
            certificate,
            brute_dim: None,
            exact_r: None,
            claim_holds: None,
        });
    }
    let dim = brute_force_sat_dim(inst, opts, tol)?;
    let exact_r = Rational::new(BigInt::from(dim), BigInt::from(inst.register_dim()));
    let bound = certificate
        .bound
        .as_ref()
        .and_then(BoundField::to_rational)
        .expect("passing degree certificate always carries a bound");
    let claim_holds = dim > 0 && exact_r >= bound;
    Ok(OracleReport {
        certificate,
        brute_dim: Some(dim),
        exact_r: Some(exact_r),
        claim_holds: Some(claim_holds),
    })
}
