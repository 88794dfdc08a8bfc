//! Random k-uniform hypergraphs and random constraint instances.
//!
//! Three ensembles over `n` labeled vertices:
//! * [`sample_gknm`]: exactly `m` edges, each drawn uniformly and
//!   independently from all k-subsets (with replacement, so duplicate edges
//!   can occur);
//! * [`sample_gknp`]: every k-subset present independently with probability
//!   `p`, realized as a two-stage draw (edge count, then distinct subsets)
//!   so the subset family is never enumerated;
//! * [`sample_regular`]: every vertex in exactly `d` edges, via the
//!   configuration model with whole-graph rejection.
//!
//! [`random_instance`] decorates a `G_k(n, m)` draw with independent Haar
//! rank-1 projectors, one per edge, giving the standard random satisfiability
//! ensemble at density `alpha = m / n`.

use std::collections::HashSet;

use num::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Binomial, Distribution, Poisson};

use crate::qsat::{haar_random_state, Projector, QsatError, QsatInstance};
use crate::rational::Rational;
use crate::tolerance::ToleranceConfig;

/// Hard cap on edges any sampler will materialize.
const EDGE_CAP: u64 = 100_000_000;
/// Rejection budget multiplier for distinct-subset sampling.
const DISTINCT_DRAW_BUDGET_PER_EDGE: usize = 100;
/// Attempt budget for the regular configuration model.
const REGULAR_ATTEMPT_BUDGET: usize = 10_000;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum EnsembleError {
    #[error("bad ensemble parameters: {0}")]
    BadParameters(String),
    #[error("edge {index} is invalid: {msg}")]
    BadEdge { index: usize, msg: String },
    #[error("sampler exhausted its attempt budget of {attempts}")]
    AttemptsExhausted { attempts: usize },
    #[error("projector {index} acts on {got} qubits, but the hypergraph view needs uniform arity {expected}")]
    NonUniformLocality {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error(transparent)]
    Qsat(#[from] QsatError),
}

type Result<T> = std::result::Result<T, EnsembleError>;

/// k-uniform hypergraph on vertices `0..n_vertices`. Each edge is stored
/// sorted ascending; the edge list keeps generation order and may contain
/// duplicate edges (the ensembles are multigraph ensembles).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n_vertices: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n_vertices: usize, k: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if k < 2 {
            return Err(EnsembleError::BadParameters(format!(
                "edge arity k = {k} must be at least 2"
            )));
        }
        let mut sorted_edges = Vec::with_capacity(edges.len());
        for (index, edge) in edges.into_iter().enumerate() {
            if edge.len() != k {
                return Err(EnsembleError::BadEdge {
                    index,
                    msg: format!("has {} vertices, expected {k}", edge.len()),
                });
            }
            let mut e = edge;
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(EnsembleError::BadEdge {
                    index,
                    msg: "contains a repeated vertex".into(),
                });
            }
            if *e.last().unwrap() >= n_vertices {
                return Err(EnsembleError::BadEdge {
                    index,
                    msg: format!(
                        "vertex {} out of range for {n_vertices} vertices",
                        e.last().unwrap()
                    ),
                });
            }
            sorted_edges.push(e);
        }
        Ok(Self {
            n_vertices,
            k,
            edges: sorted_edges,
        })
    }

    /// Hypergraph of an instance's supports. Requires every projector to act
    /// on exactly the instance's nominal arity.
    pub fn from_instance(inst: &QsatInstance) -> Result<Self> {
        let k = inst.k();
        for (index, p) in inst.projectors().iter().enumerate() {
            if p.locality() != k {
                return Err(EnsembleError::NonUniformLocality {
                    index,
                    got: p.locality(),
                    expected: k,
                });
            }
        }
        let edges = inst
            .projectors()
            .iter()
            .map(|p| p.qubits().to_vec())
            .collect();
        Self::new(inst.n_qubits(), k, edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges containing each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n_vertices];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }
}

/// Degree summary of a hypergraph: the maximum, the exact mean `k m / n`,
/// and the histogram (`histogram[d]` = number of vertices of degree `d`).
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeStats {
    pub max_degree: usize,
    pub mean_degree: Rational,
    pub histogram: Vec<usize>,
}

pub fn degree_stats(g: &Hypergraph) -> DegreeStats {
    let degrees = g.degrees();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let mut histogram = vec![0usize; max_degree + 1];
    for &d in &degrees {
        histogram[d] += 1;
    }
    let mean_degree = Rational::new(
        BigInt::from(g.k() * g.n_edges()),
        BigInt::from(g.n_vertices().max(1)),
    );
    DegreeStats {
        max_degree,
        mean_degree,
        histogram,
    }
}

fn check_arity(n: usize, k: usize) -> Result<()> {
    if k < 2 {
        return Err(EnsembleError::BadParameters(format!(
            "edge arity k = {k} must be at least 2"
        )));
    }
    if n < k {
        return Err(EnsembleError::BadParameters(format!(
            "need at least k = {k} vertices, got {n}"
        )));
    }
    Ok(())
}

/// Uniform k-subset of `0..n` by Floyd's sampling algorithm; returned sorted.
fn floyd_subset(n: usize, k: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut s = std::collections::BTreeSet::new();
    for j in (n - k)..n {
        let t = rng.gen_range(0..=j);
        if !s.insert(t) {
            s.insert(j);
        }
    }
    s.into_iter().collect()
}

/// The `G_k(n, m)` ensemble: `m` edges drawn uniformly and independently
/// with replacement from all k-subsets of `0..n`.
pub fn sample_gknm(n: usize, m: usize, k: usize, rng: &mut impl Rng) -> Result<Hypergraph> {
    check_arity(n, k)?;
    if m as u64 > EDGE_CAP {
        return Err(EnsembleError::BadParameters(format!(
            "m = {m} exceeds the edge cap {EDGE_CAP}"
        )));
    }
    let edges = (0..m).map(|_| floyd_subset(n, k, rng)).collect();
    Ok(Hypergraph {
        n_vertices: n,
        k,
        edges,
    })
}

/// `C(n, k)` if it fits in a `u64`.
fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

fn ln_binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (1..=k)
        .map(|i| ((n - k + i) as f64).ln() - (i as f64).ln())
        .sum()
}

/// The `G_k(n, p)` ensemble: each of the `C(n, k)` possible edges appears
/// independently with probability `p`.
///
/// Drawn in two stages — first the edge count, then that many distinct
/// uniform k-subsets — so the subset family is never enumerated. When
/// `C(n, k)` overflows 64 bits the count is drawn from the Poisson limit of
/// the binomial, which at that scale is accurate to far below one part in
/// 10^9 per edge.
pub fn sample_gknp(n: usize, k: usize, p: f64, rng: &mut impl Rng) -> Result<Hypergraph> {
    check_arity(n, k)?;
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(EnsembleError::BadParameters(format!(
            "edge probability p = {p} must lie in [0, 1]"
        )));
    }
    let total = binomial_u64(n as u64, k as u64);
    let m = if p == 0.0 {
        0u64
    } else if let Some(total) = total {
        if p == 1.0 {
            total
        } else {
            Binomial::new(total, p)
                .expect("validated parameters")
                .sample(rng)
        }
    } else {
        let lambda = (ln_binomial(n as u64, k as u64) + p.ln()).exp();
        if !lambda.is_finite() || lambda > EDGE_CAP as f64 {
            return Err(EnsembleError::BadParameters(format!(
                "expected edge count {lambda:.3e} exceeds the edge cap {EDGE_CAP}"
            )));
        }
        if lambda == 0.0 {
            0
        } else {
            Poisson::new(lambda).expect("validated lambda").sample(rng) as u64
        }
    };
    if m > EDGE_CAP {
        return Err(EnsembleError::BadParameters(format!(
            "drawn edge count {m} exceeds the edge cap {EDGE_CAP}"
        )));
    }

    // Distinct subsets by rejection; insertion order is kept so the result
    // is a pure function of the RNG stream.
    let m = m as usize;
    let mut seen: HashSet<Vec<usize>> = HashSet::with_capacity(m * 2);
    let mut edges = Vec::with_capacity(m);
    let budget = m.saturating_mul(DISTINCT_DRAW_BUDGET_PER_EDGE) + 1_000;
    let mut draws = 0usize;
    while edges.len() < m {
        if draws >= budget {
            return Err(EnsembleError::AttemptsExhausted { attempts: budget });
        }
        draws += 1;
        let e = floyd_subset(n, k, rng);
        if seen.insert(e.clone()) {
            edges.push(e);
        }
    }
    Ok(Hypergraph {
        n_vertices: n,
        k,
        edges,
    })
}

/// The d-regular ensemble: every vertex lies in exactly `d` edges.
///
/// Configuration model: `n * d` vertex stubs are shuffled and cut into
/// groups of `k`; the whole configuration is rejected and redrawn if any
/// group repeats a vertex. Duplicate edges may remain (multigraph), matching
/// the other ensembles. Requires `k | n * d`.
pub fn sample_regular(n: usize, d: usize, k: usize, rng: &mut impl Rng) -> Result<Hypergraph> {
    check_arity(n, k)?;
    if d == 0 {
        return Ok(Hypergraph {
            n_vertices: n,
            k,
            edges: Vec::new(),
        });
    }
    let stubs_total = n
        .checked_mul(d)
        .ok_or_else(|| EnsembleError::BadParameters("n * d overflows".into()))?;
    if stubs_total % k != 0 {
        return Err(EnsembleError::BadParameters(format!(
            "k = {k} must divide n * d = {stubs_total}"
        )));
    }
    if (stubs_total / k) as u64 > EDGE_CAP {
        return Err(EnsembleError::BadParameters(format!(
            "m = {} exceeds the edge cap {EDGE_CAP}",
            stubs_total / k
        )));
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    for _ in 0..REGULAR_ATTEMPT_BUDGET {
        stubs.shuffle(rng);
        let mut edges = Vec::with_capacity(stubs_total / k);
        let mut clean = true;
        'groups: for group in stubs.chunks_exact(k) {
            let mut e = group.to_vec();
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                clean = false;
                break 'groups;
            }
            edges.push(e);
        }
        if clean {
            return Ok(Hypergraph {
                n_vertices: n,
                k,
                edges,
            });
        }
    }
    Err(EnsembleError::AttemptsExhausted {
        attempts: REGULAR_ATTEMPT_BUDGET,
    })
}

/// Random satisfiability instance at density `alpha`: a `G_k(n, m)` draw
/// with `m = round(alpha * n)`, one independent Haar-random rank-1 projector
/// per edge (qubit tuple = the edge, ascending).
pub fn random_instance(
    n: usize,
    k: usize,
    alpha: f64,
    rng: &mut impl Rng,
    tol: &ToleranceConfig,
) -> Result<(QsatInstance, Hypergraph)> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(EnsembleError::BadParameters(format!(
            "density alpha = {alpha} must be finite and nonnegative"
        )));
    }
    let m = (alpha * n as f64).round() as usize;
    let graph = sample_gknm(n, m, k, rng)?;
    let inst = instance_on_graph(&graph, rng, tol)?;
    Ok((inst, graph))
}

/// Haar rank-1 instance on a fixed hypergraph: one random projector per
/// edge, in edge order.
pub fn instance_on_graph(
    g: &Hypergraph,
    rng: &mut impl Rng,
    tol: &ToleranceConfig,
) -> Result<QsatInstance> {
    let mut projectors = Vec::with_capacity(g.n_edges());
    for e in g.edges() {
        let v = haar_random_state(g.k(), rng);
        projectors.push(Projector::new(
            e.clone(),
            vec![v.amplitudes().to_vec()],
            tol,
        )?);
    }
    Ok(QsatInstance::new(g.n_vertices(), g.k(), projectors)?)
}

/// Plain-text hypergraph format: header line `k n m`, then `m` lines of `k`
/// ascending vertex indices. Deterministic for a given graph.
pub fn hypergraph_to_text(g: &Hypergraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {} {}\n", g.k(), g.n_vertices(), g.n_edges()));
    for e in g.edges() {
        let line: Vec<String> = e.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the plain-text hypergraph format; errors carry 1-based line
/// numbers.
pub fn hypergraph_from_text(text: &str) -> Result<Hypergraph> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or(EnsembleError::Format {
            line: 1,
            msg: "empty input; expected header `k n m`".into(),
        })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(EnsembleError::Format {
            line: 1,
            msg: format!("malformed header {header:?}; expected `k n m`"),
        });
    }
    let parse_field = |s: &str, what: &str| {
        s.parse::<usize>().map_err(|_| EnsembleError::Format {
            line: 1,
            msg: format!("{what} {s:?} is not a nonnegative integer"),
        })
    };
    let k = parse_field(fields[0], "arity")?;
    let n = parse_field(fields[1], "vertex count")?;
    let m = parse_field(fields[2], "edge count")?;

    let mut edges = Vec::with_capacity(m);
    for (line_idx, raw) in lines {
        let line = line_idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut edge = Vec::with_capacity(k);
        for tok in trimmed.split_whitespace() {
            edge.push(tok.parse::<usize>().map_err(|_| EnsembleError::Format {
                line,
                msg: format!("vertex {tok:?} is not a nonnegative integer"),
            })?);
        }
        if edge.len() != k {
            return Err(EnsembleError::Format {
                line,
                msg: format!("edge has {} vertices, expected {k}", edge.len()),
            });
        }
        edges.push(edge);
    }
    if edges.len() != m {
        return Err(EnsembleError::Format {
            line: text.lines().count(),
            msg: format!("header declares {m} edges but {} were read", edges.len()),
        });
    }
    Hypergraph::new(n, k, edges)
}

/// Verdict of a Monte Carlo tail check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailVerdict {
    Pass,
    Fail,
    /// Too few tail samples to form a confidence bound.
    Inconclusive,
}

/// Report of [`poisson_conditional_mean_check`].
#[derive(Debug, Clone)]
pub struct TailCheckReport {
    pub lambda: f64,
    pub c: f64,
    /// Smallest integer value counted as "in the tail" (`x > c * lambda`).
    pub cutoff: u64,
    /// The bound under test: `(c + 1) * lambda`.
    pub claimed_bound: f64,
    pub n_samples: usize,
    pub n_tail: usize,
    pub conditional_mean: Option<f64>,
    /// 99% upper confidence bound on the conditional mean.
    pub upper_confidence: Option<f64>,
    pub verdict: TailVerdict,
}

/// Monte Carlo check of the Poisson tail mean bound
/// `E[X | X > c * lambda] <= (c + 1) * lambda` for `X ~ Poisson(lambda)`.
///
/// This is the moment bound behind treating high-degree vertices as rare but
/// not pathological: conditioned on exceeding `c` times its mean, a Poisson
/// degree still has mean at most `(c + 1)` times it. Draws `n_samples`
/// variates, conditions on the tail, and compares a 99% upper confidence
/// bound (z = 2.576) of the conditional mean against the claim. Fewer than
/// two tail samples yield `Inconclusive`.
pub fn poisson_conditional_mean_check(
    lambda: f64,
    c: f64,
    n_samples: usize,
    rng: &mut impl Rng,
) -> Result<TailCheckReport> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(EnsembleError::BadParameters(format!(
            "lambda = {lambda} must be positive and finite"
        )));
    }
    if !c.is_finite() || c < 0.0 {
        return Err(EnsembleError::BadParameters(format!(
            "c = {c} must be nonnegative and finite"
        )));
    }
    if n_samples == 0 {
        return Err(EnsembleError::BadParameters(
            "n_samples must be positive".into(),
        ));
    }
    let threshold = c * lambda;
    let cutoff = (threshold.floor() as u64) + 1;
    let claimed_bound = (c + 1.0) * lambda;
    let dist = Poisson::new(lambda).expect("validated lambda");

    let mut n_tail = 0usize;
    let mut sum = 0f64;
    let mut sum_sq = 0f64;
    for _ in 0..n_samples {
        let x: f64 = dist.sample(rng);
        if x > threshold {
            n_tail += 1;
            sum += x;
            sum_sq += x * x;
        }
    }
    if n_tail < 2 {
        return Ok(TailCheckReport {
            lambda,
            c,
            cutoff,
            claimed_bound,
            n_samples,
            n_tail,
            conditional_mean: None,
            upper_confidence: None,
            verdict: TailVerdict::Inconclusive,
        });
    }
    let mean = sum / n_tail as f64;
    let var = (sum_sq - sum * sum / n_tail as f64) / (n_tail as f64 - 1.0);
    let sd = var.max(0.0).sqrt();
    let z = 2.576;
    let ucb = mean + z * sd / (n_tail as f64).sqrt();
    let verdict = if ucb <= claimed_bound {
        TailVerdict::Pass
    } else {
        TailVerdict::Fail
    };
    Ok(TailCheckReport {
        lambda,
        c,
        cutoff,
        claimed_bound,
        n_samples,
        n_tail,
        conditional_mean: Some(mean),
        upper_confidence: Some(ucb),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::master_rng;
    use crate::rational::ratio;
    use std::collections::HashMap;

    #[test]
    fn gknm_counts_and_validity() {
        let mut rng = master_rng(1);
        let g = sample_gknm(10, 25, 3, &mut rng).unwrap();
        assert_eq!(g.n_edges(), 25);
        assert_eq!(g.k(), 3);
        for e in g.edges() {
            assert_eq!(e.len(), 3);
            assert!(e.windows(2).all(|w| w[0] < w[1]));
            assert!(*e.last().unwrap() < 10);
        }
    }

    #[test]
    fn gknm_is_deterministic_per_seed() {
        let a = sample_gknm(12, 30, 4, &mut master_rng(7)).unwrap();
        let b = sample_gknm(12, 30, 4, &mut master_rng(7)).unwrap();
        let c = sample_gknm(12, 30, 4, &mut master_rng(8)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn floyd_subsets_cover_uniformly() {
        // n = 5, k = 2: 10 subsets; 20_000 draws puts every count within
        // +-25% of 2_000 with overwhelming probability.
        let mut rng = master_rng(3);
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for _ in 0..20_000 {
            *counts.entry(floyd_subset(5, 2, &mut rng)).or_default() += 1;
        }
        assert_eq!(counts.len(), 10);
        for (&ref subset, &count) in &counts {
            assert!(
                (1_500..=2_500).contains(&count),
                "subset {subset:?} drawn {count} times"
            );
        }
    }

    #[test]
    fn gknp_degenerate_probabilities() {
        let g = sample_gknp(6, 3, 0.0, &mut master_rng(2)).unwrap();
        assert_eq!(g.n_edges(), 0);
        let g = sample_gknp(6, 3, 1.0, &mut master_rng(2)).unwrap();
        assert_eq!(g.n_edges(), 20); // C(6,3)
        let mut sorted = g.edges().to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 20, "edges must be distinct");
    }

    #[test]
    fn gknp_edges_are_distinct_and_count_is_plausible() {
        let mut rng = master_rng(5);
        // C(8,3) = 56, p = 0.25: mean 14, sd ~ 3.2.
        let mut total = 0usize;
        for _ in 0..50 {
            let g = sample_gknp(8, 3, 0.25, &mut rng).unwrap();
            let mut sorted = g.edges().to_vec();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), g.n_edges());
            total += g.n_edges();
        }
        let mean = total as f64 / 50.0;
        assert!((11.0..=17.0).contains(&mean), "mean edge count {mean}");
    }

    #[test]
    fn gknp_rejects_bad_probability() {
        assert!(matches!(
            sample_gknp(6, 3, 1.5, &mut master_rng(0)),
            Err(EnsembleError::BadParameters(_))
        ));
    }

    #[test]
    fn regular_sampler_hits_exact_degrees() {
        let mut rng = master_rng(11);
        let g = sample_regular(12, 3, 4, &mut rng).unwrap();
        assert_eq!(g.n_edges(), 9); // 12 * 3 / 4
        assert!(g.degrees().iter().all(|&d| d == 3));
        for e in g.edges() {
            assert!(e.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn regular_sampler_divisibility_gate() {
        assert!(matches!(
            sample_regular(10, 3, 4, &mut master_rng(0)),
            Err(EnsembleError::BadParameters(_))
        ));
        let g = sample_regular(10, 0, 4, &mut master_rng(0)).unwrap();
        assert_eq!(g.n_edges(), 0);
    }

    #[test]
    fn degree_stats_mean_is_exact() {
        let mut rng = master_rng(13);
        let g = sample_gknm(10, 25, 3, &mut rng).unwrap();
        let stats = degree_stats(&g);
        assert_eq!(stats.mean_degree, ratio(75, 10));
        assert_eq!(stats.histogram.iter().sum::<usize>(), 10);
        let degs = g.degrees();
        assert_eq!(stats.max_degree, degs.into_iter().max().unwrap());
    }

    #[test]
    fn random_instance_density_and_shape() {
        let tol = ToleranceConfig::default();
        let mut rng = master_rng(17);
        let (inst, graph) = random_instance(10, 3, 1.5, &mut rng, &tol).unwrap();
        assert_eq!(inst.len(), 15);
        assert_eq!(graph.n_edges(), 15);
        assert_eq!(inst.n_qubits(), 10);
        assert!(inst.all_rank_one());
        for (p, e) in inst.projectors().iter().zip(graph.edges()) {
            assert_eq!(p.qubits(), e.as_slice());
        }
    }

    #[test]
    fn text_round_trip_is_exact() {
        let mut rng = master_rng(19);
        let g = sample_gknm(9, 12, 3, &mut rng).unwrap();
        let text = hypergraph_to_text(&g);
        let g2 = hypergraph_from_text(&text).unwrap();
        assert_eq!(g, g2);
        assert_eq!(hypergraph_to_text(&g2), text);
    }

    #[test]
    fn text_parser_diagnostics() {
        assert!(matches!(
            hypergraph_from_text(""),
            Err(EnsembleError::Format { line: 1, .. })
        ));
        assert!(matches!(
            hypergraph_from_text("3 9\n"),
            Err(EnsembleError::Format { line: 1, .. })
        ));
        // wrong arity on line 2
        assert!(matches!(
            hypergraph_from_text("3 9 1\n0 1\n"),
            Err(EnsembleError::Format { line: 2, .. })
        ));
        // count mismatch
        assert!(matches!(
            hypergraph_from_text("3 9 2\n0 1 2\n"),
            Err(EnsembleError::Format { .. })
        ));
        // invalid vertex flows through Hypergraph::new
        assert!(matches!(
            hypergraph_from_text("3 9 1\n0 1 9\n"),
            Err(EnsembleError::BadEdge { .. })
        ));
    }

    #[test]
    fn hypergraph_constructor_validation() {
        assert!(matches!(
            Hypergraph::new(5, 1, vec![]),
            Err(EnsembleError::BadParameters(_))
        ));
        assert!(matches!(
            Hypergraph::new(5, 2, vec![vec![1, 1]]),
            Err(EnsembleError::BadEdge { index: 0, .. })
        ));
        // edges are canonicalized to ascending order
        let g = Hypergraph::new(5, 2, vec![vec![3, 1]]).unwrap();
        assert_eq!(g.edges(), &[vec![1, 3]]);
    }

    #[test]
    fn tail_check_passes_at_moderate_scale() {
        let mut rng = master_rng(23);
        let report = poisson_conditional_mean_check(10.0, 2.0, 20_000, &mut rng).unwrap();
        assert_eq!(report.cutoff, 21);
        assert_eq!(report.claimed_bound, 30.0);
        assert!(report.n_tail > 5, "tail had {} samples", report.n_tail);
        assert_eq!(report.verdict, TailVerdict::Pass);
        assert!(report.upper_confidence.unwrap() < 30.0);
    }

    #[test]
    fn tail_check_inconclusive_when_tail_unreachable() {
        let mut rng = master_rng(29);
        let report = poisson_conditional_mean_check(10.0, 20.0, 1_000, &mut rng).unwrap();
        assert_eq!(report.verdict, TailVerdict::Inconclusive);
        assert_eq!(report.n_tail, 0);
    }

    #[test]
    fn tail_check_rejects_bad_parameters() {
        let mut rng = master_rng(31);
        assert!(poisson_conditional_mean_check(0.0, 2.0, 10, &mut rng).is_err());
        assert!(poisson_conditional_mean_check(10.0, -1.0, 10, &mut rng).is_err());
        assert!(poisson_conditional_mean_check(10.0, 2.0, 0, &mut rng).is_err());
    }
}
