//! Steiner-tree data model, validity checking and full-component
//! decomposition.
//!
//! A tree is valid when it is a tree on all its vertices, every Steiner
//! point has degree 3, vertices of degree 1 or 2 are terminals, incident
//! edges meet at angles of at least 120°, and no two edges cross. A tree is
//! *full* when additionally no vertex has degree 2 and every terminal is a
//! leaf; a general tree splits at its degree-≥2 terminals into full
//! components.

use alloc::vec;
use alloc::vec::Vec;

use crate::geom::{
    angle_at, bbox_diagonal, segments_properly_cross, Point, Segment, Tolerance,
};

/// Planar tree on `terminals ++ steiner_points`; edge endpoints index that
/// concatenation (terminals first).
#[derive(Clone, Debug, PartialEq)]
pub struct SteinerTree {
    pub terminals: Vec<Point>,
    pub steiner_points: Vec<Point>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TreeError {
    /// Edge endpoint out of range, self-loop, or duplicate edge.
    MalformedInput { edge: usize },
    /// Edge contraction would produce a vertex the model cannot represent.
    UnsupportedContraction { edge: (usize, usize) },
}

impl core::fmt::Display for TreeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TreeError::MalformedInput { edge } => write!(f, "malformed edge at index {edge}"),
            TreeError::UnsupportedContraction { edge } => {
                write!(f, "cannot contract edge ({}, {})", edge.0, edge.1)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    AngleBelow120,
    BadDegree,
    NotTree,
    CrossingEdges,
}

/// One failed validity check: the vertex it is anchored to, what failed, and
/// the measured quantity (angle in radians, degree, component count, or the
/// other edge's index for crossings).
#[derive(Clone, Copy, Debug)]
pub struct Violation {
    pub vertex: usize,
    pub kind: ViolationKind,
    pub measured: f64,
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A maximal full subtree of a parent tree. Component vertex `i` of the
/// subtree maps back to the parent through `parent_terminals` /
/// `parent_steiner`.
#[derive(Clone, Debug)]
pub struct FullComponent {
    pub subtree: SteinerTree,
    pub parent_terminals: Vec<usize>,
    pub parent_steiner: Vec<usize>,
}

impl SteinerTree {
    pub fn new(
        terminals: Vec<Point>,
        steiner_points: Vec<Point>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, TreeError> {
        let tree = SteinerTree {
            terminals,
            steiner_points,
            edges,
        };
        tree.check_edges()?;
        Ok(tree)
    }

    fn check_edges(&self) -> Result<(), TreeError> {
        let n = self.vertex_count();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u >= n || v >= n || u == v {
                return Err(TreeError::MalformedInput { edge: i });
            }
            for &(p, q) in &self.edges[..i] {
                if (p, q) == (u, v) || (p, q) == (v, u) {
                    return Err(TreeError::MalformedInput { edge: i });
                }
            }
        }
        Ok(())
    }

    pub fn terminal_count(&self) -> usize {
        self.terminals.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.terminals.len() + self.steiner_points.len()
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        v < self.terminals.len()
    }

    pub fn vertex(&self, v: usize) -> Point {
        if v < self.terminals.len() {
            self.terminals[v]
        } else {
            self.steiner_points[v - self.terminals.len()]
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count()];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// All vertex positions, terminals first.
    pub fn positions(&self) -> Vec<Point> {
        let mut out = self.terminals.clone();
        out.extend_from_slice(&self.steiner_points);
        out
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        let (u, v) = self.edges[e];
        self.vertex(u).dist(self.vertex(v))
    }

    /// Sum of the Euclidean edge lengths.
    pub fn total_length(&self) -> f64 {
        (0..self.edges.len()).map(|e| self.edge_length(e)).sum()
    }

    fn connected_component_count(&self) -> usize {
        let n = self.vertex_count();
        if n == 0 {
            return 0;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        components
    }

    /// True iff no vertex has degree 2 and every terminal is a leaf (a
    /// single-terminal tree counts as full).
    pub fn is_full(&self) -> bool {
        if self.vertex_count() == 1 {
            return true;
        }
        let deg = self.degrees();
        for (v, &d) in deg.iter().enumerate() {
            if d == 2 {
                return false;
            }
            if self.is_terminal(v) && d != 1 {
                return false;
            }
        }
        true
    }
}

/// Checks tree-ness, degree rules, the 120° angle condition at every vertex
/// and planarity of the embedding. Returns `MalformedInput` for out-of-range
/// indices; every other defect is reported as a violation.
pub fn validate(tree: &SteinerTree, tol: &Tolerance) -> Result<ValidationReport, TreeError> {
    tree.check_edges()?;
    let mut report = ValidationReport::default();
    let n = tree.vertex_count();

    let components = tree.connected_component_count();
    if tree.edges.len() + 1 != n || components != 1 {
        report.violations.push(Violation {
            vertex: 0,
            kind: ViolationKind::NotTree,
            measured: components as f64,
        });
    }

    let deg = tree.degrees();
    for (v, &d) in deg.iter().enumerate() {
        let ok = if tree.is_terminal(v) {
            (1..=3).contains(&d) || (d == 0 && n == 1)
        } else {
            d == 3
        };
        if !ok {
            report.violations.push(Violation {
                vertex: v,
                kind: ViolationKind::BadDegree,
                measured: d as f64,
            });
        }
    }

    let adj = tree.adjacency();
    let min_angle = 2.0 * core::f64::consts::PI / 3.0 - tol.eps_ang;
    for (v, nbrs) in adj.iter().enumerate() {
        for i in 0..nbrs.len() {
            for j in (i + 1)..nbrs.len() {
                // a collapsed ray counts as a zero angle
                let measured =
                    angle_at(tree.vertex(v), tree.vertex(nbrs[i]), tree.vertex(nbrs[j]), tol)
                        .unwrap_or(0.0);
                if measured < min_angle {
                    report.violations.push(Violation {
                        vertex: v,
                        kind: ViolationKind::AngleBelow120,
                        measured,
                    });
                }
            }
        }
    }

    for i in 0..tree.edges.len() {
        let (a, b) = tree.edges[i];
        let s1 = Segment {
            a: tree.vertex(a),
            b: tree.vertex(b),
        };
        for j in (i + 1)..tree.edges.len() {
            let (c, d) = tree.edges[j];
            let s2 = Segment {
                a: tree.vertex(c),
                b: tree.vertex(d),
            };
            if segments_properly_cross(&s1, &s2, tol) {
                report.violations.push(Violation {
                    vertex: a.min(b),
                    kind: ViolationKind::CrossingEdges,
                    measured: j as f64,
                });
            }
        }
    }

    Ok(report)
}

/// Splits the tree at every terminal of degree ≥ 2. Split terminals are
/// replicated into each incident component; the components partition the
/// edge set and each satisfies `is_full`.
pub fn full_components(tree: &SteinerTree) -> Vec<FullComponent> {
    if tree.edges.is_empty() {
        return vec![FullComponent {
            subtree: tree.clone(),
            parent_terminals: (0..tree.terminal_count()).collect(),
            parent_steiner: (0..tree.steiner_points.len())
                .map(|i| i + tree.terminal_count())
                .collect(),
        }];
    }

    let deg = tree.degrees();
    let is_cut = |v: usize| tree.is_terminal(v) && deg[v] >= 2;

    // Flood-fill over edges; traversal never continues through a cut
    // terminal, so each edge lands in exactly one component.
    let mut edge_component = vec![usize::MAX; tree.edges.len()];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); tree.vertex_count()];
    for (e, &(u, v)) in tree.edges.iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }

    let mut n_components = 0;
    for e0 in 0..tree.edges.len() {
        if edge_component[e0] != usize::MAX {
            continue;
        }
        let id = n_components;
        n_components += 1;
        let mut stack = vec![e0];
        edge_component[e0] = id;
        while let Some(e) = stack.pop() {
            let (u, v) = tree.edges[e];
            for &w in &[u, v] {
                if is_cut(w) {
                    continue;
                }
                for &f in &incident[w] {
                    if edge_component[f] == usize::MAX {
                        edge_component[f] = id;
                        stack.push(f);
                    }
                }
            }
        }
    }

    let mut out = Vec::with_capacity(n_components);
    for id in 0..n_components {
        let mut parent_terminals = Vec::new();
        let mut parent_steiner = Vec::new();
        let mut local = alloc::collections::BTreeMap::new();
        let comp_edges: Vec<(usize, usize)> = tree
            .edges
            .iter()
            .enumerate()
            .filter(|(e, _)| edge_component[*e] == id)
            .map(|(_, &uv)| uv)
            .collect();
        // terminals first so the subtree keeps the terminals-then-steiner layout
        for &(u, v) in &comp_edges {
            for &w in &[u, v] {
                if tree.is_terminal(w) && !local.contains_key(&w) {
                    local.insert(w, parent_terminals.len());
                    parent_terminals.push(w);
                }
            }
        }
        let n_term = parent_terminals.len();
        for &(u, v) in &comp_edges {
            for &w in &[u, v] {
                if !tree.is_terminal(w) && !local.contains_key(&w) {
                    local.insert(w, n_term + parent_steiner.len());
                    parent_steiner.push(w);
                }
            }
        }
        let subtree = SteinerTree {
            terminals: parent_terminals.iter().map(|&v| tree.vertex(v)).collect(),
            steiner_points: parent_steiner.iter().map(|&v| tree.vertex(v)).collect(),
            edges: comp_edges.iter().map(|&(u, v)| (local[&u], local[&v])).collect(),
        };
        out.push(FullComponent {
            subtree,
            parent_terminals,
            parent_steiner,
        });
    }
    out
}

/// Contracts every zero-length terminal–Steiner edge, merging the Steiner
/// point into the terminal (the landed terminal inherits the Steiner point's
/// other edges). Terminal–terminal zero edges are kept — the boundary set
/// never shrinks. Zero-length Steiner–Steiner edges are unsupported.
pub fn contract_collapsed_edges(
    tree: &SteinerTree,
    tol: &Tolerance,
) -> Result<SteinerTree, TreeError> {
    let scale = bbox_diagonal(&tree.positions());
    let eps = tol.len_eps(scale);
    let mut current = tree.clone();
    loop {
        let mut collapsed = None;
        for (e, &(u, v)) in current.edges.iter().enumerate() {
            if current.vertex(u).dist(current.vertex(v)) > eps {
                continue;
            }
            match (current.is_terminal(u), current.is_terminal(v)) {
                (true, false) => collapsed = Some((e, u, v)),
                (false, true) => collapsed = Some((e, v, u)),
                (true, true) => continue,
                (false, false) => {
                    return Err(TreeError::UnsupportedContraction { edge: (u, v) })
                }
            }
            if collapsed.is_some() {
                break;
            }
        }
        let Some((e, term, steiner)) = collapsed else {
            return Ok(current);
        };
        let mut edges = current.edges.clone();
        edges.remove(e);
        let steiner_local = steiner - current.terminal_count();
        let remap = |w: usize| {
            if w == steiner {
                term
            } else if w > steiner {
                w - 1
            } else {
                w
            }
        };
        let edges = edges.iter().map(|&(u, v)| (remap(u), remap(v))).collect();
        let mut steiner_points = current.steiner_points.clone();
        steiner_points.remove(steiner_local);
        current = SteinerTree {
            terminals: current.terminals.clone(),
            steiner_points,
            edges,
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    const SQRT3: f64 = 1.7320508075688772;

    /// Unit equilateral triangle with its Steiner point at the centroid.
    fn fermat_tree() -> SteinerTree {
        SteinerTree::new(
            vec![p(0.0, 0.0), p(1.0, 0.0), p(0.5, SQRT3 / 2.0)],
            vec![p(0.5, SQRT3 / 6.0)],
            vec![(0, 3), (1, 3), (2, 3)],
        )
        .unwrap()
    }

    #[test]
    fn validate_fermat_tree() {
        let tol = Tolerance::default();
        let report = validate(&fermat_tree(), &tol).unwrap();
        assert!(report.is_valid(), "violations: {:?}", report.violations);
    }

    #[test]
    fn validate_flags_bad_angle() {
        // Steiner point pushed off the Fermat point: at least one incident
        // pair meets below 120°. Oracle: the three angles computed directly.
        let tol = Tolerance::default();
        let tree = SteinerTree::new(
            vec![p(0.0, 0.0), p(1.0, 0.0), p(0.5, SQRT3 / 2.0)],
            vec![p(0.5, 0.5)],
            vec![(0, 3), (1, 3), (2, 3)],
        )
        .unwrap();
        let s = tree.vertex(3);
        let mut below = 0;
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let ang = angle_at(s, tree.vertex(a), tree.vertex(b), &tol).unwrap();
            if ang < 2.0 * core::f64::consts::PI / 3.0 - tol.eps_ang {
                below += 1;
            }
        }
        assert!(below >= 1);
        let report = validate(&tree, &tol).unwrap();
        let flagged = report
            .violations
            .iter()
            .filter(|v| v.kind == ViolationKind::AngleBelow120 && v.vertex == 3)
            .count();
        assert_eq!(flagged, below);
    }

    #[test]
    fn validate_two_terminal_segment() {
        let tol = Tolerance::default();
        let tree =
            SteinerTree::new(vec![p(0.0, 0.0), p(1.0, 0.0)], vec![], vec![(0, 1)]).unwrap();
        assert!(validate(&tree, &tol).unwrap().is_valid());
    }

    #[test]
    fn validate_rejects_out_of_range() {
        let tree = SteinerTree {
            terminals: vec![p(0.0, 0.0), p(1.0, 0.0)],
            steiner_points: vec![],
            edges: vec![(0, 5)],
        };
        assert!(matches!(
            validate(&tree, &Tolerance::default()),
            Err(TreeError::MalformedInput { .. })
        ));
    }

    #[test]
    fn validate_flags_disconnected() {
        let tree = SteinerTree::new(
            vec![p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0), p(3.0, 0.0)],
            vec![],
            vec![(0, 1), (2, 3)],
        )
        .unwrap();
        let report = validate(&tree, &Tolerance::default()).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::NotTree));
    }

    #[test]
    fn validate_flags_crossing_edges() {
        let tree = SteinerTree::new(
            vec![p(0.0, 0.0), p(1.0, 1.0), p(0.0, 1.0), p(1.0, 0.0)],
            vec![],
            vec![(0, 1), (2, 3), (1, 2)],
        )
        .unwrap();
        let report = validate(&tree, &Tolerance::default()).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::CrossingEdges));
    }

    #[test]
    fn is_full_cases() {
        assert!(fermat_tree().is_full());
        let path = SteinerTree::new(
            vec![p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)],
            vec![],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        assert!(!path.is_full());
        // degree-3 terminal
        let star = SteinerTree::new(
            vec![p(0.0, 0.0), p(1.0, 0.0), p(-0.5, 0.9), p(-0.5, -0.9)],
            vec![],
            vec![(0, 1), (0, 2), (0, 3)],
        )
        .unwrap();
        assert!(!star.is_full());
    }

    #[test]
    fn full_components_of_full_tree_is_identity() {
        let tree = fermat_tree();
        let comps = full_components(&tree);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].subtree.edges.len(), tree.edges.len());
        assert!(comps[0].subtree.is_full());
    }

    #[test]
    fn full_components_splits_path() {
        let path = SteinerTree::new(
            vec![p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)],
            vec![],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        let comps = full_components(&path);
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert!(c.subtree.is_full());
            assert_eq!(c.subtree.edges.len(), 1);
            assert!(c.parent_terminals.contains(&1));
        }
        let total: usize = comps.iter().map(|c| c.subtree.edges.len()).sum();
        assert_eq!(total, path.edges.len());
    }

    #[test]
    fn full_components_splits_degree_three_terminal() {
        // terminal 0 joins three segments at 120°: one component per edge
        let star = SteinerTree::new(
            vec![
                p(0.0, 0.0),
                p(1.0, 0.0),
                p(-0.5, 0.8660254037844386),
                p(-0.5, -0.8660254037844386),
            ],
            vec![],
            vec![(0, 1), (0, 2), (0, 3)],
        )
        .unwrap();
        assert!(validate(&star, &Tolerance::default()).unwrap().is_valid());
        let comps = full_components(&star);
        assert_eq!(comps.len(), 3);
        for c in &comps {
            assert!(c.subtree.is_full());
            assert!(c.parent_terminals.contains(&0));
        }
    }

    #[test]
    fn total_length_cases() {
        let seg =
            SteinerTree::new(vec![p(0.0, 0.0), p(1.0, 0.0)], vec![], vec![(0, 1)]).unwrap();
        assert_eq!(seg.total_length(), 1.0);
        assert!((fermat_tree().total_length() - SQRT3).abs() < 1e-12);
        let lone = SteinerTree::new(vec![p(4.0, 2.0)], vec![], vec![]).unwrap();
        assert_eq!(lone.total_length(), 0.0);
    }

    #[test]
    fn contract_merges_terminal_onto_steiner() {
        // terminal 0 placed exactly on the steiner point
        let tree = SteinerTree::new(
            vec![p(0.5, SQRT3 / 6.0), p(1.0, 0.0), p(0.5, SQRT3 / 2.0), p(0.0, 0.0)],
            vec![p(0.5, SQRT3 / 6.0)],
            vec![(0, 4), (1, 4), (2, 4), (3, 4)],
        );
        // degree-4 steiner is fine for contraction input; validity is the
        // caller's concern
        let tree = tree.unwrap();
        let contracted = contract_collapsed_edges(&tree, &Tolerance::default()).unwrap();
        assert_eq!(contracted.steiner_points.len(), 0);
        assert_eq!(contracted.edges.len(), 3);
        let deg = contracted.degrees();
        assert_eq!(deg[0], 3);
    }

    #[test]
    fn contract_keeps_terminal_terminal_zero_edge() {
        let tree = SteinerTree::new(
            vec![p(0.0, 0.0), p(0.0, 0.0)],
            vec![],
            vec![(0, 1)],
        )
        .unwrap();
        let contracted = contract_collapsed_edges(&tree, &Tolerance::default()).unwrap();
        assert_eq!(contracted.terminals.len(), 2);
        assert_eq!(contracted.edges.len(), 1);
    }
}
