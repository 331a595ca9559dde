//! Inner-edge classification and minimal inner spanning trees.
//!
//! A candidate edge between two terminals is *inner* for a region when it
//! never properly crosses a region boundary edge and a fixed set of sample
//! points along it all belong to the region. The minimal inner spanning tree
//! (MIST) is the minimum spanning tree of the complete terminal graph
//! restricted to inner edges. Infeasibility (a disconnected inner-edge
//! graph) is a value, not an error: deformation sweeps record it as data.

use alloc::vec::Vec;

use crate::area::{Region, EDGE_SAMPLES};
use crate::geom::{segments_properly_cross, Point, Segment, Tolerance};

/// A (possibly infeasible) minimal inner spanning tree. When `feasible` is
/// false, `edges` is empty and `length` is infinite.
#[derive(Clone, Debug, PartialEq)]
pub struct MistResult {
    pub feasible: bool,
    pub edges: Vec<(usize, usize)>,
    pub length: f64,
    pub inner_edge_count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanningError {
    /// Brute-force enumeration is capped at 8 terminals.
    TooLarge { terminals: usize },
}

impl core::fmt::Display for SpanningError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SpanningError::TooLarge { terminals } => {
                write!(f, "brute force capped at 8 terminals, got {terminals}")
            }
        }
    }
}

/// True iff segment `[a, b]` does not properly cross any region boundary
/// edge and all of its evenly spaced sample points (endpoints included) are
/// region members.
pub fn edge_is_inner(a: Point, b: Point, region: &Region, tol: &Tolerance) -> bool {
    let seg = Segment { a, b };
    for (ba, bb) in region.boundary_edges() {
        if segments_properly_cross(&seg, &Segment { a: ba, b: bb }, tol) {
            return false;
        }
    }
    for k in 0..EDGE_SAMPLES {
        let p = a.lerp(b, k as f64 / (EDGE_SAMPLES - 1) as f64);
        if !region.contains_point(p, tol) {
            return false;
        }
    }
    true
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn unite(&mut self, x: usize, y: usize) -> bool {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return false;
        }
        self.parent[rx] = ry;
        true
    }
}

#[derive(Clone, Copy, Debug)]
struct CandidateEdge {
    i: usize,
    j: usize,
    length: f64,
}

/// Candidate edges in the canonical order used everywhere: ascending by
/// (length, smaller index, larger index).
fn candidate_edges(terminals: &[Point]) -> Vec<CandidateEdge> {
    let n = terminals.len();
    let mut edges = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push(CandidateEdge {
                i,
                j,
                length: terminals[i].dist(terminals[j]),
            });
        }
    }
    edges.sort_by(|a, b| {
        a.length
            .total_cmp(&b.length)
            .then(a.i.cmp(&b.i))
            .then(a.j.cmp(&b.j))
    });
    edges
}

fn kruskal(terminals: &[Point], admissible: Vec<CandidateEdge>, inner_count: usize) -> MistResult {
    let n = terminals.len();
    let mut uf = UnionFind::new(n);
    let mut chosen = Vec::with_capacity(n.saturating_sub(1));
    let mut length = 0.0;
    for e in admissible {
        if uf.unite(e.i, e.j) {
            chosen.push((e.i, e.j));
            length += e.length;
            if chosen.len() + 1 == n {
                break;
            }
        }
    }
    let feasible = chosen.len() + 1 == n.max(1);
    chosen.sort_unstable();
    MistResult {
        feasible,
        edges: if feasible { chosen } else { Vec::new() },
        length: if feasible { length } else { f64::INFINITY },
        inner_edge_count: inner_count,
    }
}

/// Minimal inner spanning tree: Kruskal over the inner edges of the complete
/// terminal graph, deterministic under the canonical tie-break.
pub fn mist(terminals: &[Point], region: &Region, tol: &Tolerance) -> MistResult {
    let admissible: Vec<CandidateEdge> = candidate_edges(terminals)
        .into_iter()
        .filter(|e| edge_is_inner(terminals[e.i], terminals[e.j], region, tol))
        .collect();
    let count = admissible.len();
    kruskal(terminals, admissible, count)
}

/// Minimum spanning tree with every edge admissible; the unrestricted
/// baseline the Steiner ratio compares against.
pub fn mst_unrestricted(terminals: &[Point]) -> MistResult {
    let admissible = candidate_edges(terminals);
    let count = admissible.len();
    kruskal(terminals, admissible, count)
}

/// Exhaustive oracle: enumerates every spanning tree over the inner edges
/// and keeps the minimum-length one (ties broken toward the earliest edge
/// set in the canonical order). Capped at 8 terminals.
pub fn brute_force_mist(
    terminals: &[Point],
    region: &Region,
    tol: &Tolerance,
) -> Result<MistResult, SpanningError> {
    let n = terminals.len();
    if n > 8 {
        return Err(SpanningError::TooLarge { terminals: n });
    }
    let admissible: Vec<CandidateEdge> = candidate_edges(terminals)
        .into_iter()
        .filter(|e| edge_is_inner(terminals[e.i], terminals[e.j], region, tol))
        .collect();
    let inner_count = admissible.len();
    if n <= 1 {
        return Ok(MistResult {
            feasible: true,
            edges: Vec::new(),
            length: 0.0,
            inner_edge_count: inner_count,
        });
    }

    struct Search<'a> {
        edges: &'a [CandidateEdge],
        need: usize,
        best: Option<(f64, Vec<usize>)>,
    }

    impl Search<'_> {
        fn recurse(&mut self, idx: usize, chosen: &mut Vec<usize>, length: f64, uf: &UnionFind) {
            if chosen.len() == self.need {
                let better = match &self.best {
                    None => true,
                    Some((best_len, best_set)) => {
                        length < *best_len
                            || (length == *best_len && chosen.as_slice() < best_set.as_slice())
                    }
                };
                if better {
                    self.best = Some((length, chosen.clone()));
                }
                return;
            }
            if idx >= self.edges.len() || self.edges.len() - idx < self.need - chosen.len() {
                return;
            }
            // take edges[idx] when it does not close a cycle
            let e = self.edges[idx];
            let mut uf_take = UnionFind {
                parent: uf.parent.clone(),
            };
            if uf_take.unite(e.i, e.j) {
                chosen.push(idx);
                self.recurse(idx + 1, chosen, length + e.length, &uf_take);
                chosen.pop();
            }
            self.recurse(idx + 1, chosen, length, uf);
        }
    }

    let mut search = Search {
        edges: &admissible,
        need: n - 1,
        best: None,
    };
    search.recurse(0, &mut Vec::new(), 0.0, &UnionFind::new(n));

    Ok(match search.best {
        Some((length, chosen)) => {
            let mut edges: Vec<(usize, usize)> =
                chosen.iter().map(|&k| (admissible[k].i, admissible[k].j)).collect();
            edges.sort_unstable();
            MistResult {
                feasible: true,
                edges,
                length,
                inner_edge_count: inner_count,
            }
        }
        None => MistResult {
            feasible: false,
            edges: Vec::new(),
            length: f64::INFINITY,
            inner_edge_count: inner_count,
        },
    })
}
