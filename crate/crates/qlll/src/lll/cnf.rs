//! Classical CNF formulas: strict DIMACS parsing and the occurrence-count
//! satisfiability certificate for uniform-width k-SAT.
//!
//! A k-CNF formula in which every variable occurs in at most
//! `2^k / (e * k)` clauses is satisfiable — the boolean shadow of the
//! subspace degree certificate, with clause violation measure `2^-k` in the
//! uniform distribution over assignments.

use std::collections::BTreeSet;

use crate::certificate::{CertKind, Certificate, Verdict, Witness};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("clause {index} is empty")]
    EmptyClause { index: usize },
    #[error("clause {index} repeats variable {var}")]
    RepeatedVariable { index: usize, var: usize },
    #[error("clauses have mixed widths {widths:?}; the certificate needs uniform width")]
    MixedWidths { widths: Vec<usize> },
    #[error("literal {lit} in clause {index} is out of range for {n_vars} variables")]
    LiteralOutOfRange {
        index: usize,
        lit: i64,
        n_vars: usize,
    },
}

/// CNF formula over variables `1..=n_vars`; literals are signed variable
/// indices, DIMACS style.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    n_vars: usize,
    clauses: Vec<Vec<i64>>,
}

impl CnfFormula {
    /// Validates literal ranges, nonempty clauses, and that no clause
    /// mentions a variable twice (in either polarity).
    pub fn new(n_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self, CnfError> {
        for (index, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(CnfError::EmptyClause { index });
            }
            let mut seen = BTreeSet::new();
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() > n_vars as u64 {
                    return Err(CnfError::LiteralOutOfRange {
                        index,
                        lit,
                        n_vars,
                    });
                }
                if !seen.insert(lit.unsigned_abs()) {
                    return Err(CnfError::RepeatedVariable {
                        index,
                        var: lit.unsigned_abs() as usize,
                    });
                }
            }
        }
        Ok(Self { n_vars, clauses })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn clauses(&self) -> &[Vec<i64>] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Uniform clause width, or `MixedWidths` if the formula is not
    /// k-uniform. An empty formula has width 0.
    pub fn uniform_width(&self) -> Result<usize, CnfError> {
        let widths: BTreeSet<usize> = self.clauses.iter().map(Vec::len).collect();
        match widths.len() {
            0 => Ok(0),
            1 => Ok(*widths.iter().next().unwrap()),
            _ => Err(CnfError::MixedWidths {
                widths: widths.into_iter().collect(),
            }),
        }
    }

    /// Number of clauses containing each variable (either polarity); index 0
    /// corresponds to variable 1.
    pub fn occurrence_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n_vars];
        for clause in &self.clauses {
            for &lit in clause {
                counts[lit.unsigned_abs() as usize - 1] += 1;
            }
        }
        counts
    }

    /// Evaluates the formula under the assignment `vals[v-1]` for variable v.
    pub fn evaluate(&self, vals: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let v = vals[lit.unsigned_abs() as usize - 1];
                if lit > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }
}

/// Strict DIMACS CNF parser.
///
/// Requires a `p cnf <vars> <clauses>` header before any clause, allows `c`
/// comment lines anywhere, terminates every clause with `0`, and insists the
/// clause count matches the header. Errors carry 1-based line numbers.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut current: Vec<i64> = Vec::new();

    for (line_idx, raw_line) in text.lines().enumerate() {
        let line = line_idx + 1;
        let trimmed = raw_line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(CnfError::Parse {
                    line,
                    msg: "duplicate problem header".into(),
                });
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(CnfError::Parse {
                    line,
                    msg: format!("malformed header {trimmed:?}; expected `p cnf <vars> <clauses>`"),
                });
            }
            let n_vars = fields[2].parse::<usize>().map_err(|_| CnfError::Parse {
                line,
                msg: format!("variable count {:?} is not a nonnegative integer", fields[2]),
            })?;
            let n_clauses = fields[3].parse::<usize>().map_err(|_| CnfError::Parse {
                line,
                msg: format!("clause count {:?} is not a nonnegative integer", fields[3]),
            })?;
            header = Some((n_vars, n_clauses));
            continue;
        }
        if header.is_none() {
            return Err(CnfError::Parse {
                line,
                msg: "clause data before `p cnf` header".into(),
            });
        }
        for tok in trimmed.split_whitespace() {
            let lit = tok.parse::<i64>().map_err(|_| CnfError::Parse {
                line,
                msg: format!("token {tok:?} is not an integer literal"),
            })?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(CnfError::Parse {
                        line,
                        msg: format!("clause {} is empty", clauses.len()),
                    });
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }

    let (n_vars, n_clauses) = header.ok_or(CnfError::Parse {
        line: text.lines().count().max(1),
        msg: "missing `p cnf` header".into(),
    })?;
    if !current.is_empty() {
        return Err(CnfError::Parse {
            line: text.lines().count(),
            msg: "last clause is not terminated by 0".into(),
        });
    }
    if clauses.len() != n_clauses {
        return Err(CnfError::Parse {
            line: text.lines().count(),
            msg: format!(
                "header declares {n_clauses} clauses but {} were read",
                clauses.len()
            ),
        });
    }
    CnfFormula::new(n_vars, clauses)
}

/// Occurrence threshold `2^k / (e * k)` for uniform width k.
pub fn occurrence_threshold(k: usize) -> f64 {
    (2f64).powi(k as i32) / (std::f64::consts::E * k as f64)
}

/// Occurrence-count satisfiability certificate for uniform-width CNF.
///
/// Passes — certifying the formula satisfiable — when every variable occurs
/// in at most `2^k / (e * k)` clauses. No numeric bound accompanies the
/// verdict; the classical statement is bare satisfiability. An empty formula
/// passes vacuously.
pub fn classical_ksat_certificate(f: &CnfFormula) -> Result<Certificate, CnfError> {
    let width = f.uniform_width()?;
    if f.is_empty() {
        return Ok(Certificate {
            kind: CertKind::ClassicalKsat,
            verdict: Verdict::Pass,
            bound: None,
            witness: Witness::ClassicalOccurrence {
                width: 0,
                max_occurrences: 0,
                threshold: f64::INFINITY,
                worst_variable: None,
            },
        });
    }
    let threshold = occurrence_threshold(width);
    let counts = f.occurrence_counts();
    let max_occurrences = counts.iter().copied().max().unwrap_or(0);
    let worst_variable = counts
        .iter()
        .position(|&c| c == max_occurrences)
        .map(|i| i + 1);
    let pass = (max_occurrences as f64) <= threshold;
    Ok(Certificate {
        kind: CertKind::ClassicalKsat,
        verdict: Verdict::from_bool(pass),
        bound: None,
        witness: Witness::ClassicalOccurrence {
            width,
            max_occurrences,
            threshold,
            worst_variable: if pass { None } else { worst_variable },
        },
    })
}
