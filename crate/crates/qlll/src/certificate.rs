//! Shared certificate document produced by every checker.
//!
//! A certificate records which check ran, its verdict, the witness data that
//! makes the verdict auditable (the overloaded qubit, the Hall violator, the
//! partition sizes, ...), and, for passing satisfiability checks, an exact
//! rational lower bound on the relative dimension of the satisfying subspace.
//!
//! Certificates are self-validating: re-running the named checker on the
//! original instance reproduces the verdict recorded here.

use serde::{Deserialize, Serialize};

use crate::rational::{rational_approx, rational_to_string, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertKind {
    SymmetricQlll,
    AsymmetricQlll,
    QsatDegree,
    ClassicalKsat,
    Matching,
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    pub fn from_bool(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Exact rational bound with a float approximation for human readers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundField {
    /// Canonical `"p/q"` rendering of the exact value.
    pub rational: String,
    /// Nearest double, informational only.
    pub approx: f64,
}

impl BoundField {
    pub fn from_rational(r: &Rational) -> Self {
        Self {
            rational: rational_to_string(r),
            approx: rational_approx(r),
        }
    }

    pub fn to_rational(&self) -> Option<Rational> {
        crate::rational::rational_from_string(&self.rational)
    }
}

/// Kind-specific witness payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// Symmetric local-lemma arithmetic: `p * e * (d + 1)` vs 1.
    Symmetric { p: String, d: u64, product: f64 },
    /// Degree-based satisfiability check: per-qubit load against the
    /// threshold `2^k / (e * r_max * k)`.
    DegreeBound {
        k: usize,
        r_max: usize,
        max_degree: usize,
        threshold: f64,
        /// A maximally loaded qubit when the check fails.
        worst_qubit: Option<usize>,
    },
    /// Asymmetric local-lemma condition: first violated node, if any.
    Asymmetric {
        violating_node: Option<usize>,
        r_value: Option<String>,
        required: Option<String>,
    },
    /// Classical bounded-occurrence check for k-CNF.
    ClassicalOccurrence {
        width: usize,
        max_occurrences: usize,
        threshold: f64,
        /// A variable exceeding the threshold when the check fails.
        worst_variable: Option<usize>,
    },
    /// Constraint-to-qubit matching: the matching itself on pass, a Hall
    /// violator (edge set smaller than its neighborhood is) on fail.
    Matching {
        /// `pairs[i] = (edge index, matched qubit)` on pass.
        pairs: Option<Vec<(usize, usize)>>,
        violator_edges: Option<Vec<usize>>,
        violator_vertex_count: Option<usize>,
    },
    /// Decomposition pipeline summary.
    Hybrid {
        cutoff: f64,
        vh_size: usize,
        h_size: usize,
        l_size: usize,
        matching_pass: bool,
        l_degree_pass: bool,
        max_l_degree_outside: usize,
        l_degree_threshold: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertKind,
    pub verdict: Verdict,
    /// Exact lower bound on the relative dimension of the satisfying
    /// subspace, present only on passing satisfiability certificates.
    pub bound: Option<BoundField>,
    pub witness: Witness,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(self).expect("certificate serialization is infallible");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Option<Self> {
        serde_json::from_str(text).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn json_round_trip() {
        let cert = Certificate {
            kind: CertKind::QsatDegree,
            verdict: Verdict::Pass,
            bound: Some(BoundField::from_rational(&ratio(27, 64))),
            witness: Witness::DegreeBound {
                k: 5,
                r_max: 1,
                max_degree: 2,
                threshold: 2.354,
                worst_qubit: None,
            },
        };
        let text = cert.to_json();
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.bound.unwrap().to_rational().unwrap(), ratio(27, 64));
    }

    #[test]
    fn kind_serializes_kebab_case() {
        let text = serde_json::to_string(&CertKind::QsatDegree).unwrap();
        assert_eq!(text, "\"qsat-degree\"");
    }
}
