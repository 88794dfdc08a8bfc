//! Named certificate strategies behind one interface.
//!
//! Every satisfiability certificate in this crate — the degree-count
//! criterion, the constraint-to-vertex matching, and the hybrid
//! decomposition pipeline — answers the same question: "is this instance
//! certified satisfiable?". The [`StrategyRegistry`] keeps the checkers
//! behind a common [`CertStrategy`] trait and dispatches on a string name,
//! so a caller (the CLI, a test harness) can select one at runtime without
//! knowing its concrete type, and new strategies can be registered without
//! touching the dispatch site.
//!
//! Some strategies need the full projector instance (the degree criterion
//! reads projector ranks), while others only look at the interaction
//! hypergraph (a matching never inspects amplitudes). [`CheckInput`] carries
//! either; a strategy that is handed less than it needs reports that rather
//! than guessing.

use std::collections::BTreeMap;
use std::fmt;

use crate::certificate::Certificate;
use crate::decompose::{hybrid_certificate, hybrid_certificate_graph, matching_certificate};
use crate::ensembles::Hypergraph;
use crate::lll::qsat_degree_certificate;
use crate::qsat::QsatInstance;
use crate::{Error, Result};

/// What a strategy is asked to certify: a full projector instance, or just
/// its interaction hypergraph.
///
/// Graph-only input is how the pipeline stays tractable at scale — at large
/// qubit counts the projector amplitudes are never materialized — but it is
/// only sufficient for structural certificates. Rank-sensitive strategies
/// require [`CheckInput::Instance`].
#[derive(Clone, Copy)]
pub enum CheckInput<'a> {
    /// A concrete k-QSAT instance with projector data.
    Instance(&'a QsatInstance),
    /// The interaction hypergraph alone; every constraint is assumed rank 1.
    Graph(&'a Hypergraph),
}

impl fmt::Debug for CheckInput<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckInput::Instance(inst) => f
                .debug_struct("Instance")
                .field("n_qubits", &inst.n_qubits())
                .field("n_projectors", &inst.projectors().len())
                .finish(),
            CheckInput::Graph(g) => f
                .debug_struct("Graph")
                .field("n_vertices", &g.n_vertices())
                .field("n_edges", &g.n_edges())
                .finish(),
        }
    }
}

/// Tunables shared by the certificate strategies.
#[derive(Debug, Clone)]
pub struct StrategyOptions {
    /// Rank ceiling for the degree criterion; instances with a projector of
    /// larger rank are rejected rather than silently certified.
    pub r_max: usize,
    /// Core degree cutoff override for the hybrid pipeline (`None` uses the
    /// built-in `2^k / (4 e k)`).
    pub cutoff: Option<f64>,
}

impl Default for StrategyOptions {
    fn default() -> Self {
        StrategyOptions {
            r_max: 1,
            cutoff: None,
        }
    }
}

/// A satisfiability certificate checker selectable by name.
pub trait CertStrategy: Send + Sync {
    /// Registry key; stable, lowercase.
    fn name(&self) -> &'static str;

    /// One-line human description for listings.
    fn summary(&self) -> &'static str;

    /// Runs the checker. A failed certificate is a successful run with
    /// verdict `Fail`; `Err` means the strategy could not evaluate the input
    /// at all (wrong input kind, malformed instance, rank above the ceiling).
    fn run(&self, input: CheckInput<'_>, opts: &StrategyOptions) -> Result<Certificate>;
}

struct DegreeStrategy;

impl CertStrategy for DegreeStrategy {
    fn name(&self) -> &'static str {
        "qlll"
    }

    fn summary(&self) -> &'static str {
        "degree-count criterion: passes when every constraint overlaps at most 2^k/(e r k) others"
    }

    fn run(&self, input: CheckInput<'_>, opts: &StrategyOptions) -> Result<Certificate> {
        match input {
            CheckInput::Instance(inst) => Ok(qsat_degree_certificate(inst, opts.r_max)?),
            CheckInput::Graph(_) => Err(Error::Unsupported(
                "mode `qlll` reads projector ranks and needs a full instance, \
                 not a bare hypergraph"
                    .to_string(),
            )),
        }
    }
}

struct MatchingStrategy;

impl CertStrategy for MatchingStrategy {
    fn name(&self) -> &'static str {
        "matching"
    }

    fn summary(&self) -> &'static str {
        "constraint-to-vertex matching: passes when every constraint gets its own vertex"
    }

    fn run(&self, input: CheckInput<'_>, _opts: &StrategyOptions) -> Result<Certificate> {
        match input {
            CheckInput::Instance(inst) => {
                let g = Hypergraph::from_instance(inst)?;
                Ok(matching_certificate(&g)?)
            }
            CheckInput::Graph(g) => Ok(matching_certificate(g)?),
        }
    }
}

struct HybridStrategy;

impl CertStrategy for HybridStrategy {
    fn name(&self) -> &'static str {
        "hybrid"
    }

    fn summary(&self) -> &'static str {
        "core/remainder split: matching on the dense core, degree criterion on the rest"
    }

    fn run(&self, input: CheckInput<'_>, opts: &StrategyOptions) -> Result<Certificate> {
        let report = match input {
            CheckInput::Instance(inst) => hybrid_certificate(inst, opts.cutoff)?,
            CheckInput::Graph(g) => hybrid_certificate_graph(g, opts.cutoff)?,
        };
        Ok(report.certificate)
    }
}

/// Name-indexed collection of certificate strategies.
///
/// Iteration and listing order is the lexicographic order of the names, so
/// output built from the registry is stable.
pub struct StrategyRegistry {
    strategies: BTreeMap<&'static str, Box<dyn CertStrategy>>,
}

impl StrategyRegistry {
    /// An empty registry.
    pub fn new() -> Self {
        StrategyRegistry {
            strategies: BTreeMap::new(),
        }
    }

    /// The registry with the built-in strategies `qlll`, `matching`, and
    /// `hybrid`.
    pub fn builtin() -> Self {
        let mut reg = StrategyRegistry::new();
        reg.register(Box::new(DegreeStrategy));
        reg.register(Box::new(MatchingStrategy));
        reg.register(Box::new(HybridStrategy));
        reg
    }

    /// Adds a strategy under its own name, returning the one it displaced
    /// (if any).
    pub fn register(&mut self, strategy: Box<dyn CertStrategy>) -> Option<Box<dyn CertStrategy>> {
        self.strategies.insert(strategy.name(), strategy)
    }

    /// Looks a strategy up by name.
    pub fn get(&self, name: &str) -> Option<&dyn CertStrategy> {
        self.strategies.get(name).map(|b| b.as_ref())
    }

    /// Runs the named strategy, failing with [`Error::UnknownMode`] when the
    /// name is not registered.
    pub fn run(
        &self,
        name: &str,
        input: CheckInput<'_>,
        opts: &StrategyOptions,
    ) -> Result<Certificate> {
        match self.get(name) {
            Some(strategy) => strategy.run(input, opts),
            None => Err(Error::UnknownMode(name.to_string())),
        }
    }

    /// Registered names in listing order.
    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.keys().copied().collect()
    }

    /// Strategies in listing order.
    pub fn iter(&self) -> impl Iterator<Item = &dyn CertStrategy> {
        self.strategies.values().map(|b| b.as_ref())
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        StrategyRegistry::builtin()
    }
}

impl fmt::Debug for StrategyRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StrategyRegistry")
            .field("names", &self.names())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{CertKind, Verdict};
    use crate::qsat::Projector;
    use crate::tolerance::ToleranceConfig;
    use num_complex::Complex64;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn zero() -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    /// Two disjoint 4-local constraints on 8 qubits, each pinning |0000> on
    /// its tuple. Every qubit sits in one constraint, below the k = 4 degree
    /// threshold 2^4/(4e) ~ 1.47; the matching is perfect; the hybrid split
    /// sends everything to the core and matches it. Every built-in strategy
    /// passes it.
    fn disjoint_instance() -> QsatInstance {
        let tol = ToleranceConfig::default();
        let mut v0000 = vec![zero(); 16];
        v0000[0] = one();
        let p0 = Projector::new(vec![0, 1, 2, 3], vec![v0000.clone()], &tol).unwrap();
        let p1 = Projector::new(vec![4, 5, 6, 7], vec![v0000], &tol).unwrap();
        QsatInstance::new(8, 4, vec![p0, p1]).unwrap()
    }

    #[test]
    fn builtin_names_are_sorted_and_complete() {
        let reg = StrategyRegistry::builtin();
        assert_eq!(reg.names(), vec!["hybrid", "matching", "qlll"]);
        for s in reg.iter() {
            assert!(!s.summary().is_empty());
        }
    }

    #[test]
    fn unknown_mode_is_reported_by_name() {
        let reg = StrategyRegistry::builtin();
        let inst = disjoint_instance();
        let err = reg
            .run("typo", CheckInput::Instance(&inst), &StrategyOptions::default())
            .unwrap_err();
        match err {
            Error::UnknownMode(name) => assert_eq!(name, "typo"),
            other => panic!("expected UnknownMode, got {other:?}"),
        }
    }

    #[test]
    fn all_builtins_certify_the_disjoint_instance() {
        let reg = StrategyRegistry::builtin();
        let inst = disjoint_instance();
        let opts = StrategyOptions::default();
        for (name, kind) in [
            ("qlll", CertKind::QsatDegree),
            ("matching", CertKind::Matching),
            ("hybrid", CertKind::Hybrid),
        ] {
            let cert = reg.run(name, CheckInput::Instance(&inst), &opts).unwrap();
            assert_eq!(cert.kind, kind, "strategy {name}");
            assert_eq!(cert.verdict, Verdict::Pass, "strategy {name}");
        }
    }

    #[test]
    fn graph_input_serves_structural_strategies_only() {
        let inst = disjoint_instance();
        let g = Hypergraph::from_instance(&inst).unwrap();
        let reg = StrategyRegistry::builtin();
        let opts = StrategyOptions::default();

        let cert = reg.run("matching", CheckInput::Graph(&g), &opts).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass);
        let cert = reg.run("hybrid", CheckInput::Graph(&g), &opts).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass);

        let err = reg.run("qlll", CheckInput::Graph(&g), &opts).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn registration_replaces_by_name() {
        struct Stub;
        impl CertStrategy for Stub {
            fn name(&self) -> &'static str {
                "matching"
            }
            fn summary(&self) -> &'static str {
                "stub"
            }
            fn run(&self, _: CheckInput<'_>, _: &StrategyOptions) -> Result<Certificate> {
                Err(Error::Unsupported("stub".to_string()))
            }
        }
        let mut reg = StrategyRegistry::builtin();
        let displaced = reg.register(Box::new(Stub));
        assert!(displaced.is_some());
        assert_eq!(reg.names(), vec!["hybrid", "matching", "qlll"]);
        assert_eq!(reg.get("matching").unwrap().summary(), "stub");
    }
}
