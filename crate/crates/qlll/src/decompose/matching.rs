//! Constraint-to-vertex matching and Hall-violator witnesses.
//!
//! A system of distinct representatives — each constraint assigned a private
//! vertex from its own support — certifies satisfiability of generic rank-1
//! instances: each constraint can be satisfied "inside" its private vertex
//! without disturbing the others. By Hall's theorem such an assignment
//! exists iff every set of `t` constraints touches at least `t` vertices,
//! and when it does not, maximum-matching search exposes a violating set.

use std::collections::VecDeque;

use super::{DecomposeError, Result};
use crate::certificate::{CertKind, Certificate, Verdict, Witness};
use crate::ensembles::Hypergraph;

const NIL: usize = usize::MAX;

/// An assignment of constraints to distinct vertices of their own supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// `(constraint index, assigned vertex)`, ascending in the constraint
    /// index, covering every constraint exactly once; vertices are distinct
    /// and each lies in its constraint's support.
    pub pairs: Vec<(usize, usize)>,
}

/// Result of maximum matching between constraints and vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingOutcome {
    /// Every constraint got a private vertex.
    Perfect(Matching),
    /// Some constraints are unmatchable; `violator_edges` is a Hall
    /// violator: it touches only `violator_vertices`, and there are fewer of
    /// those than violating constraints.
    Deficient {
        matching: Matching,
        violator_edges: Vec<usize>,
        violator_vertices: Vec<usize>,
    },
}

impl MatchingOutcome {
    pub fn is_perfect(&self) -> bool {
        matches!(self, MatchingOutcome::Perfect(_))
    }
}

/// Maximum matching of constraints (vertex sets) into `0..n_vertices`, by
/// Hopcroft-Karp (shortest augmenting paths in batches, `O(E sqrt(V))`).
///
/// Returns either a matching covering every constraint or, via the final
/// alternating-layer reachability set, a Hall violator: the constraints
/// reachable from an unmatched one by alternating paths collectively touch
/// fewer vertices than there are constraints in the set.
pub fn hall_matching(edges: &[Vec<usize>], n_vertices: usize) -> Result<MatchingOutcome> {
    for e in edges {
        for &v in e {
            if v >= n_vertices {
                return Err(DecomposeError::VertexOutOfRange {
                    vertex: v,
                    n: n_vertices,
                });
            }
        }
    }
    let m = edges.len();
    let mut match_l = vec![NIL; m];
    let mut match_r = vec![NIL; n_vertices];
    let mut dist = vec![NIL; m];

    loop {
        // BFS phase: layer the left side by alternating distance from the
        // unmatched constraints.
        let mut queue: VecDeque<usize> = VecDeque::new();
        for u in 0..m {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NIL;
            }
        }
        let mut reachable_free_vertex = false;
        while let Some(u) = queue.pop_front() {
            for &v in &edges[u] {
                let w = match_r[v];
                if w == NIL {
                    reachable_free_vertex = true;
                } else if dist[w] == NIL {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !reachable_free_vertex {
            break;
        }
        // DFS phase: flip a maximal set of disjoint shortest augmenting paths.
        for u in 0..m {
            if match_l[u] == NIL {
                augment(u, edges, &mut match_l, &mut match_r, &mut dist);
            }
        }
    }

    if match_l.iter().all(|&v| v != NIL) {
        let pairs = match_l.iter().copied().enumerate().collect();
        return Ok(MatchingOutcome::Perfect(Matching { pairs }));
    }

    // Alternating reachability from the unmatched constraints: every
    // reachable vertex is matched (else an augmenting path would remain) and
    // its partner is reachable, so the reachable constraints outnumber the
    // vertices they touch.
    let mut vis_l = vec![false; m];
    let mut vis_r = vec![false; n_vertices];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for u in 0..m {
        if match_l[u] == NIL {
            vis_l[u] = true;
            queue.push_back(u);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in &edges[u] {
            if !vis_r[v] {
                vis_r[v] = true;
                let w = match_r[v];
                if w != NIL && !vis_l[w] {
                    vis_l[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let violator_edges: Vec<usize> = (0..m).filter(|&u| vis_l[u]).collect();
    let violator_vertices: Vec<usize> = (0..n_vertices).filter(|&v| vis_r[v]).collect();
    debug_assert!(violator_vertices.len() < violator_edges.len());
    let pairs = match_l
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, v)| v != NIL)
        .collect();
    Ok(MatchingOutcome::Deficient {
        matching: Matching { pairs },
        violator_edges,
        violator_vertices,
    })
}

fn augment(
    u: usize,
    edges: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for i in 0..edges[u].len() {
        let v = edges[u][i];
        let w = match_r[v];
        if w == NIL || (dist[w] == dist[u] + 1 && augment(w, edges, match_l, match_r, dist)) {
            match_l[u] = v;
            match_r[v] = u;
            return true;
        }
    }
    dist[u] = NIL;
    false
}

/// Matching certificate over a whole hypergraph: passes iff every edge can
/// be assigned a private vertex, which certifies satisfiability of generic
/// rank-1 instances on that graph.
pub fn matching_certificate(g: &Hypergraph) -> Result<Certificate> {
    let outcome = hall_matching(g.edges(), g.n_vertices())?;
    Ok(match outcome {
        MatchingOutcome::Perfect(matching) => Certificate {
            kind: CertKind::Matching,
            verdict: Verdict::Pass,
            bound: None,
            witness: Witness::Matching {
                pairs: Some(matching.pairs),
                violator_edges: None,
                violator_vertex_count: None,
            },
        },
        MatchingOutcome::Deficient {
            violator_edges,
            violator_vertices,
            ..
        } => Certificate {
            kind: CertKind::Matching,
            verdict: Verdict::Fail,
            bound: None,
            witness: Witness::Matching {
                pairs: None,
                violator_edges: Some(violator_edges),
                violator_vertex_count: Some(violator_vertices.len()),
            },
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::sample_gknm;
    use crate::rng::master_rng;
    use std::collections::BTreeSet;

    fn assert_valid_matching(edges: &[Vec<usize>], matching: &Matching, expect_cover: bool) {
        let mut used = BTreeSet::new();
        for &(e, v) in &matching.pairs {
            assert!(edges[e].contains(&v), "edge {e} does not contain {v}");
            assert!(used.insert(v), "vertex {v} used twice");
        }
        if expect_cover {
            let covered: BTreeSet<usize> = matching.pairs.iter().map(|&(e, _)| e).collect();
            assert_eq!(covered.len(), edges.len());
        }
    }

    /// Hall's condition by brute force over all edge subsets.
    fn exhaustive_hall(edges: &[Vec<usize>]) -> bool {
        let m = edges.len();
        assert!(m <= 20);
        for mask in 1u32..(1 << m) {
            let size = mask.count_ones() as usize;
            let mut touched = BTreeSet::new();
            for (e, edge) in edges.iter().enumerate() {
                if mask >> e & 1 == 1 {
                    touched.extend(edge.iter().copied());
                }
            }
            if touched.len() < size {
                return false;
            }
        }
        true
    }

    #[test]
    fn triangle_has_a_perfect_matching() {
        let edges = vec![vec![1, 2], vec![2, 0], vec![1, 0]];
        match hall_matching(&edges, 3).unwrap() {
            MatchingOutcome::Perfect(m) => assert_valid_matching(&edges, &m, true),
            other => panic!("expected perfect matching, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_edges_produce_a_hall_violator() {
        let edges = vec![vec![0, 1], vec![0, 1], vec![0, 1]];
        match hall_matching(&edges, 4).unwrap() {
            MatchingOutcome::Deficient {
                matching,
                violator_edges,
                violator_vertices,
            } => {
                assert_valid_matching(&edges, &matching, false);
                assert_eq!(violator_edges, vec![0, 1, 2]);
                assert_eq!(violator_vertices, vec![0, 1]);
            }
            other => panic!("expected deficiency, got {other:?}"),
        }
    }

    #[test]
    fn empty_constraint_set_is_vacuously_matched() {
        match hall_matching(&[], 5).unwrap() {
            MatchingOutcome::Perfect(m) => assert!(m.pairs.is_empty()),
            other => panic!("expected empty perfect matching, got {other:?}"),
        }
    }

    #[test]
    fn out_of_range_vertex_is_rejected() {
        assert!(matches!(
            hall_matching(&[vec![0, 5]], 5),
            Err(DecomposeError::VertexOutOfRange { vertex: 5, n: 5 })
        ));
    }

    #[test]
    fn agrees_with_exhaustive_hall_on_random_instances() {
        let mut rng = master_rng(53);
        for trial in 0..300 {
            // Small, dense-ish graphs so both verdicts occur.
            let g = sample_gknm(7, 9, 2, &mut rng).unwrap();
            let outcome = hall_matching(g.edges(), g.n_vertices()).unwrap();
            let hall = exhaustive_hall(g.edges());
            assert_eq!(
                outcome.is_perfect(),
                hall,
                "trial {trial} disagreed on {:?}",
                g.edges()
            );
            if let MatchingOutcome::Deficient {
                violator_edges,
                violator_vertices,
                ..
            } = &outcome
            {
                // The witness is a genuine violator.
                let mut touched = BTreeSet::new();
                for &e in violator_edges {
                    touched.extend(g.edges()[e].iter().copied());
                }
                assert_eq!(
                    touched,
                    violator_vertices.iter().copied().collect::<BTreeSet<_>>()
                );
                assert!(touched.len() < violator_edges.len());
            }
        }
    }

    #[test]
    fn saturates_tight_instances() {
        // m = n with a unique-ish assignment: a cycle.
        let n = 50;
        let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        match hall_matching(&edges, n).unwrap() {
            MatchingOutcome::Perfect(m) => assert_valid_matching(&edges, &m, true),
            other => panic!("expected perfect matching, got {other:?}"),
        }
    }

    #[test]
    fn certificate_carries_the_witness() {
        let g = Hypergraph::new(4, 2, vec![vec![0, 1], vec![0, 1], vec![0, 1]]).unwrap();
        let cert = matching_certificate(&g).unwrap();
        assert_eq!(cert.verdict, Verdict::Fail);
        match cert.witness {
            Witness::Matching {
                pairs: None,
                violator_edges: Some(edges),
                violator_vertex_count: Some(2),
            } => assert_eq!(edges, vec![0, 1, 2]),
            w => panic!("unexpected witness {w:?}"),
        }

        let g = Hypergraph::new(6, 3, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let cert = matching_certificate(&g).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass);
        match cert.witness {
            Witness::Matching {
                pairs: Some(pairs), ..
            } => assert_eq!(pairs.len(), 2),
            w => panic!("unexpected witness {w:?}"),
        }
    }
}
