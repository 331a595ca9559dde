//! Numeric construction of full Steiner trees for a prescribed topology, and
//! one-parameter deformations of the boundary set.
//!
//! The builder runs coordinate sweeps, moving each Steiner point to the
//! Fermat point of its three current neighbors; every sweep decreases the
//! total length. The Fermat point itself is closed-form: the corner when
//! some angle of the neighbor triangle reaches 120°, otherwise the first
//! isogonic point from the classical equilateral-apex construction.

use alloc::vec;
use alloc::vec::Vec;

use crate::geom::{angle_at, bbox_diagonal, Point, Tolerance};
use crate::tree::{self, SteinerTree, TreeError};

use libm::{cos, sin, sqrt};

const TWO_THIRDS_PI: f64 = 2.0 * core::f64::consts::PI / 3.0;

/// Combinatorial structure of a full Steiner tree: terminals are leaves,
/// Steiner vertices have degree 3. Vertex indices run over terminals first.
#[derive(Clone, Debug, PartialEq)]
pub struct Topology {
    pub n_terminals: usize,
    pub n_steiner: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConstructError {
    BadTopology { reason: &'static str },
    TerminalCountMismatch { expected: usize, got: usize },
    /// A Steiner point collapsed onto a neighbor. Callers running limit
    /// constructions rebuild with `allow_degenerate` instead.
    DegenerateTopology { edge: (usize, usize) },
    NoConvergence { sweeps: usize },
    BadDegree { terminal: usize, degree: usize },
    /// A rebuilt sample failed validation at parameter `t`.
    InvalidSample { t: f64 },
    Tree(TreeError),
}

impl From<TreeError> for ConstructError {
    fn from(e: TreeError) -> Self {
        ConstructError::Tree(e)
    }
}

impl core::fmt::Display for ConstructError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ConstructError::BadTopology { reason } => write!(f, "bad topology: {reason}"),
            ConstructError::TerminalCountMismatch { expected, got } => {
                write!(f, "topology expects {expected} terminals, got {got}")
            }
            ConstructError::DegenerateTopology { edge } => {
                write!(f, "edge ({}, {}) collapsed during construction", edge.0, edge.1)
            }
            ConstructError::NoConvergence { sweeps } => {
                write!(f, "no convergence after {sweeps} sweeps")
            }
            ConstructError::BadDegree { terminal, degree } => {
                write!(f, "terminal {terminal} has degree {degree}, expected 1")
            }
            ConstructError::InvalidSample { t } => {
                write!(f, "rebuilt tree failed validation at t = {t}")
            }
            ConstructError::Tree(e) => write!(f, "{e}"),
        }
    }
}

impl Topology {
    pub fn new(
        n_terminals: usize,
        n_steiner: usize,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, ConstructError> {
        let top = Topology {
            n_terminals,
            n_steiner,
            edges,
        };
        top.check()?;
        Ok(top)
    }

    /// Extracts the topology of a full tree for rebuilding it on deformed
    /// terminal positions.
    pub fn of_tree(tree: &SteinerTree) -> Result<Self, ConstructError> {
        Topology::new(
            tree.terminal_count(),
            tree.steiner_points.len(),
            tree.edges.clone(),
        )
    }

    fn check(&self) -> Result<(), ConstructError> {
        let n = self.n_terminals + self.n_steiner;
        if self.n_terminals == 0 {
            return Err(ConstructError::BadTopology {
                reason: "no terminals",
            });
        }
        if self.edges.len() + 1 != n {
            return Err(ConstructError::BadTopology {
                reason: "edge count is not vertex count minus one",
            });
        }
        let mut deg = vec![0usize; n];
        for &(u, v) in &self.edges {
            if u >= n || v >= n || u == v {
                return Err(ConstructError::BadTopology {
                    reason: "edge endpoint out of range",
                });
            }
            deg[u] += 1;
            deg[v] += 1;
        }
        for (v, &d) in deg.iter().enumerate() {
            if v < self.n_terminals {
                if d != 1 && !(n == 1 && d == 0) {
                    return Err(ConstructError::BadTopology {
                        reason: "terminal degree is not 1",
                    });
                }
            } else if d != 3 {
                return Err(ConstructError::BadTopology {
                    reason: "steiner degree is not 3",
                });
            }
        }
        // connectivity
        if n > 1 {
            let mut adj = vec![Vec::new(); n];
            for &(u, v) in &self.edges {
                adj[u].push(v);
                adj[v].push(u);
            }
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            if count != n {
                return Err(ConstructError::BadTopology {
                    reason: "topology is disconnected",
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Keep collapsed edges in the result instead of erroring; limit
    /// constructions need the degenerate endpoint.
    pub allow_degenerate: bool,
    pub max_sweeps: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            allow_degenerate: false,
            max_sweeps: 100_000,
        }
    }
}

/// Fermat point of three points: minimizes the summed distance to `a`, `b`,
/// `c`. Sits at a corner when the angle there is ≥ 120° (or when two inputs
/// coincide); otherwise it is the interior isogonic point.
pub fn fermat_point(a: Point, b: Point, c: Point) -> Point {
    let scale = bbox_diagonal(&[a, b, c]).max(1.0);
    let near = 1e-14 * scale;
    if a.dist(b) <= near {
        return a;
    }
    if a.dist(c) <= near {
        return a;
    }
    if b.dist(c) <= near {
        return b;
    }
    let tol = Tolerance::default();
    // corner rule
    let ang_a = angle_at(a, b, c, &tol).unwrap_or(0.0);
    if ang_a >= TWO_THIRDS_PI {
        return a;
    }
    let ang_b = angle_at(b, a, c, &tol).unwrap_or(0.0);
    if ang_b >= TWO_THIRDS_PI {
        return b;
    }
    let ang_c = angle_at(c, a, b, &tol).unwrap_or(0.0);
    if ang_c >= TWO_THIRDS_PI {
        return c;
    }
    // isogonic point: intersect the lines from a and b to the equilateral
    // apexes erected outward on the opposite sides
    let apex_a = equilateral_apex(b, c, a);
    let apex_b = equilateral_apex(a, c, b);
    match line_intersection(a, apex_a, b, apex_b) {
        Some(p) => p,
        // nearly-degenerate triangle slipped past the corner rule
        None => a,
    }
}

/// Apex of the equilateral triangle erected on `[u, v]` on the side opposite
/// `away`.
fn equilateral_apex(u: Point, v: Point, away: Point) -> Point {
    let mx = 0.5 * (u.x + v.x);
    let my = 0.5 * (u.y + v.y);
    let dx = v.x - u.x;
    let dy = v.y - u.y;
    let h = sqrt(3.0) / 2.0;
    let cand = Point::new(mx - h * dy, my + h * dx);
    let side_cand = (v.x - u.x) * (cand.y - u.y) - (v.y - u.y) * (cand.x - u.x);
    let side_away = (v.x - u.x) * (away.y - u.y) - (v.y - u.y) * (away.x - u.x);
    if side_cand * side_away < 0.0 {
        cand
    } else {
        Point::new(mx + h * dy, my - h * dx)
    }
}

fn line_intersection(p1: Point, p2: Point, q1: Point, q2: Point) -> Option<Point> {
    let rx = p2.x - p1.x;
    let ry = p2.y - p1.y;
    let sx = q2.x - q1.x;
    let sy = q2.y - q1.y;
    let denom = rx * sy - ry * sx;
    if denom == 0.0 {
        return None;
    }
    let t = ((q1.x - p1.x) * sy - (q1.y - p1.y) * sx) / denom;
    Some(Point::new(p1.x + t * rx, p1.y + t * ry))
}

/// Builds a full Steiner tree for the topology on the given terminals,
/// erroring on collapsed edges.
pub fn build_full_tree(
    topology: &Topology,
    terminal_positions: &[Point],
    tol: &Tolerance,
) -> Result<SteinerTree, ConstructError> {
    build_full_tree_with(topology, terminal_positions, tol, &BuildOptions::default())
}

/// Same as [`build_full_tree`] with explicit options.
pub fn build_full_tree_with(
    topology: &Topology,
    terminal_positions: &[Point],
    tol: &Tolerance,
    opts: &BuildOptions,
) -> Result<SteinerTree, ConstructError> {
    topology.check()?;
    if terminal_positions.len() != topology.n_terminals {
        return Err(ConstructError::TerminalCountMismatch {
            expected: topology.n_terminals,
            got: terminal_positions.len(),
        });
    }
    let n_term = topology.n_terminals;
    let n = n_term + topology.n_steiner;

    let mut positions: Vec<Point> = Vec::with_capacity(n);
    positions.extend_from_slice(terminal_positions);
    // deterministic init: centroid plus index-scaled jitter in distinct
    // directions, so repeated builds are bit-identical
    let cx = terminal_positions.iter().map(|p| p.x).sum::<f64>() / n_term as f64;
    let cy = terminal_positions.iter().map(|p| p.y).sum::<f64>() / n_term as f64;
    const GOLDEN_ANGLE: f64 = 2.399963229728653;
    for k in 0..topology.n_steiner {
        let r = 1e-3 * (k as f64 + 1.0);
        let theta = GOLDEN_ANGLE * k as f64;
        positions.push(Point::new(cx + r * cos(theta), cy + r * sin(theta)));
    }

    let mut neighbors = vec![Vec::new(); n];
    for &(u, v) in &topology.edges {
        neighbors[u].push(v);
        neighbors[v].push(u);
    }

    if topology.n_steiner > 0 {
        let mut converged = false;
        for _sweep in 0..opts.max_sweeps {
            let mut max_disp: f64 = 0.0;
            for s in n_term..n {
                let nb = &neighbors[s];
                debug_assert_eq!(nb.len(), 3);
                let next = fermat_point(positions[nb[0]], positions[nb[1]], positions[nb[2]]);
                max_disp = max_disp.max(positions[s].dist(next));
                positions[s] = next;
            }
            if max_disp < tol.eps_len {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(ConstructError::NoConvergence {
                sweeps: opts.max_sweeps,
            });
        }
    }

    let tree = SteinerTree {
        terminals: terminal_positions.to_vec(),
        steiner_points: positions[n_term..].to_vec(),
        edges: topology.edges.clone(),
    };

    if !opts.allow_degenerate {
        for (e, &(u, v)) in tree.edges.iter().enumerate() {
            let touches_steiner = !tree.is_terminal(u) || !tree.is_terminal(v);
            if touches_steiner && tree.edge_length(e) < tol.eps_len {
                return Err(ConstructError::DegenerateTopology { edge: (u, v) });
            }
        }
    }
    Ok(tree)
}

/// One-parameter family of boundary sets: one terminal slides linearly from
/// its base position to `target`; at every `t` the tree is rebuilt with the
/// base topology.
#[derive(Clone, Debug)]
pub struct DeformationPath {
    pub base: SteinerTree,
    pub topology: Topology,
    pub moving_terminal: usize,
    pub target: Point,
}

impl DeformationPath {
    pub fn start(&self) -> Point {
        self.base.terminals[self.moving_terminal]
    }

    /// Distance covered by the moving terminal over t ∈ [0, 1].
    pub fn speed(&self) -> f64 {
        self.start().dist(self.target)
    }

    pub fn terminals_at(&self, t: f64) -> Vec<Point> {
        let mut out = self.base.terminals.clone();
        out[self.moving_terminal] = self.start().lerp(self.target, t);
        out
    }

    /// Rebuilds the tree at `t`, permitting collapsed edges and contracting
    /// them away, so the `t = 1` endpoint comes back as a proper (generally
    /// non-full) tree.
    pub fn tree_at(&self, t: f64, tol: &Tolerance) -> Result<SteinerTree, ConstructError> {
        let opts = BuildOptions {
            allow_degenerate: true,
            ..BuildOptions::default()
        };
        let built = build_full_tree_with(&self.topology, &self.terminals_at(t), tol, &opts)?;
        Ok(tree::contract_collapsed_edges(&built, tol)?)
    }

    /// Rebuilds at `t` without contraction (collapsed edges kept).
    pub fn raw_tree_at(&self, t: f64, tol: &Tolerance) -> Result<SteinerTree, ConstructError> {
        let opts = BuildOptions {
            allow_degenerate: true,
            ..BuildOptions::default()
        };
        build_full_tree_with(&self.topology, &self.terminals_at(t), tol, &opts)
    }
}

/// Path sliding a degree-1 terminal along its incident edge onto its
/// neighbor vertex.
pub fn slide_terminal_path(
    tree: &SteinerTree,
    terminal: usize,
) -> Result<DeformationPath, ConstructError> {
    let deg = tree.degrees();
    if terminal >= tree.terminal_count() || deg[terminal] != 1 {
        return Err(ConstructError::BadDegree {
            terminal,
            degree: if terminal < tree.vertex_count() {
                deg[terminal]
            } else {
                0
            },
        });
    }
    let neighbor = tree
        .edges
        .iter()
        .find_map(|&(u, v)| {
            if u == terminal {
                Some(v)
            } else if v == terminal {
                Some(u)
            } else {
                None
            }
        })
        .expect("degree-1 terminal has an incident edge");
    Ok(DeformationPath {
        base: tree.clone(),
        topology: Topology::of_tree(tree)?,
        moving_terminal: terminal,
        target: tree.vertex(neighbor),
    })
}

/// Rebuilds the tree at `steps` evenly spaced parameters, re-validating each
/// sample. Interior samples hold the topology fixed; the endpoint may come
/// back contracted (non-full).
pub fn sample_path(
    path: &DeformationPath,
    steps: usize,
    tol: &Tolerance,
) -> Result<Vec<(f64, SteinerTree)>, ConstructError> {
    if steps < 2 {
        return Err(ConstructError::BadTopology {
            reason: "sample_path needs at least 2 steps",
        });
    }
    let mut out = Vec::with_capacity(steps);
    for k in 0..steps {
        let t = k as f64 / (steps - 1) as f64;
        let tree = path.tree_at(t, tol)?;
        let report = tree::validate(&tree, tol)?;
        if !report.is_valid() {
            return Err(ConstructError::InvalidSample { t });
        }
        out.push((t, tree));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    const SQRT3: f64 = 1.7320508075688772;

    #[test]
    fn fermat_point_equilateral_is_center() {
        let f = fermat_point(p(0.0, 0.0), p(1.0, 0.0), p(0.5, SQRT3 / 2.0));
        assert!(f.dist(p(0.5, SQRT3 / 6.0)) < 1e-12);
    }

    #[test]
    fn fermat_point_obtuse_corner_rule() {
        // 150° at the origin: the minimizer is that corner
        let f = fermat_point(p(0.0, 0.0), p(1.0, 0.0), p(-0.9, 0.5));
        assert_eq!(f, p(0.0, 0.0));
    }

    #[test]
    fn fermat_point_collinear() {
        let f = fermat_point(p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0));
        assert_eq!(f, p(1.0, 0.0));
    }

    #[test]
    fn fermat_point_sees_corners_at_120() {
        let tol = Tolerance::default();
        let (a, b, c) = (p(0.1, -0.2), p(2.0, 0.3), p(0.7, 1.9));
        let f = fermat_point(a, b, c);
        for (u, v) in [(a, b), (b, c), (a, c)] {
            let ang = angle_at(f, u, v, &tol).unwrap();
            assert!((ang - TWO_THIRDS_PI).abs() < 1e-9, "angle {ang}");
        }
    }

    fn tripod_topology() -> Topology {
        Topology::new(3, 1, vec![(0, 3), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn build_equilateral_tripod() {
        let tol = Tolerance::default();
        let terminals = [p(0.0, 0.0), p(1.0, 0.0), p(0.5, SQRT3 / 2.0)];
        let tree = build_full_tree(&tripod_topology(), &terminals, &tol).unwrap();
        assert!(tree.steiner_points[0].dist(p(0.5, SQRT3 / 6.0)) < 1e-8);
        assert!((tree.total_length() - SQRT3).abs() < 1e-8);
        assert!(tree::validate(&tree, &tol).unwrap().is_valid());
    }

    #[test]
    fn build_two_terminal_segment() {
        let tol = Tolerance::default();
        let top = Topology::new(2, 0, vec![(0, 1)]).unwrap();
        let tree = build_full_tree(&top, &[p(0.0, 0.0), p(3.0, 4.0)], &tol).unwrap();
        assert_eq!(tree.total_length(), 5.0);
    }

    #[test]
    fn build_rejects_terminal_mismatch() {
        let tol = Tolerance::default();
        assert!(matches!(
            build_full_tree(&tripod_topology(), &[p(0.0, 0.0)], &tol),
            Err(ConstructError::TerminalCountMismatch { .. })
        ));
    }

    #[test]
    fn build_reports_degenerate_topology() {
        // obtuse corner ≥ 120°: the steiner point snaps onto terminal 0
        let tol = Tolerance::default();
        let terminals = [p(0.0, 0.0), p(1.0, 0.0), p(-0.9, 0.5)];
        match build_full_tree(&tripod_topology(), &terminals, &tol) {
            Err(ConstructError::DegenerateTopology { .. }) => {}
            other => panic!("expected DegenerateTopology, got {other:?}"),
        }
        let opts = BuildOptions {
            allow_degenerate: true,
            ..BuildOptions::default()
        };
        let tree = build_full_tree_with(&tripod_topology(), &terminals, &tol, &opts).unwrap();
        assert!(tree.steiner_points[0].dist(p(0.0, 0.0)) < 1e-9);
    }

    #[test]
    fn slide_and_sample_two_terminal_shrink() {
        let tol = Tolerance::default();
        let top = Topology::new(2, 0, vec![(0, 1)]).unwrap();
        let tree = build_full_tree(&top, &[p(0.0, 0.0), p(1.0, 0.0)], &tol).unwrap();
        let path = slide_terminal_path(&tree, 0).unwrap();
        assert_eq!(path.target, p(1.0, 0.0));
        let samples = sample_path(&path, 3, &tol).unwrap();
        let lengths: Vec<f64> = samples.iter().map(|(_, t)| t.total_length()).collect();
        assert!((lengths[0] - 1.0).abs() < 1e-12);
        assert!((lengths[1] - 0.5).abs() < 1e-12);
        assert!(lengths[2].abs() < 1e-12);
    }

    #[test]
    fn slide_rejects_high_degree_terminal() {
        let path_tree = SteinerTree::new(
            vec![p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)],
            vec![],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        assert!(matches!(
            slide_terminal_path(&path_tree, 1),
            Err(ConstructError::BadDegree { .. })
        ));
    }

    #[test]
    fn slide_equilateral_terminal_onto_steiner_splits() {
        let tol = Tolerance::default();
        let terminals = [p(0.0, 0.0), p(1.0, 0.0), p(0.5, SQRT3 / 2.0)];
        let tree = build_full_tree(&tripod_topology(), &terminals, &tol).unwrap();
        let path = slide_terminal_path(&tree, 2).unwrap();
        let end = path.tree_at(1.0, &tol).unwrap();
        assert!(!end.is_full());
        let deg = end.degrees();
        assert_eq!(deg[2], 2);
        assert_eq!(tree::full_components(&end).len(), 2);
    }
}
