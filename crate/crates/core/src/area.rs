//! Characteristic areas.
//!
//! Walking around a tree and joining consecutive terminals by segments
//! yields a closed polygon on the boundary set; for a full tree with few
//! terminals it is embedded and contains the tree. The region is carried as
//! a triangle decomposition so that self-overlapping (immersed) walks still
//! have well-defined membership: a point belongs to the area when it lies in
//! some triangle or within tolerance of the walk boundary (closed-region
//! convention).
//!
//! Non-full trees get an area per full component (the union rule), or the
//! limit of the areas of nearby full trees along a degenerating deformation
//! (the limit rule). The two rules genuinely disagree; quantifying how is
//! the point of the `scenario` module.

use alloc::vec;
use alloc::vec::Vec;

use crate::construct::{ConstructError, DeformationPath};
use crate::geom::{
    bbox_diagonal, cross, point_segment_distance, segments_properly_cross, Point, Segment,
    Tolerance,
};
use crate::tree::{self, SteinerTree, TreeError};

/// How often boundary edges are sampled by containment probes.
pub const EDGE_SAMPLES: usize = 17;
/// Interior probe grid resolution for region-in-region tests.
pub const PROBE_GRID: usize = 32;
/// Parameter offset used to read the pre-degeneration combinatorics of a
/// limit area.
const LIMIT_PROBE_DELTA: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AreaSource {
    Full,
    Union,
    Limit,
}

/// Characteristic area: closed terminal walk plus a triangle decomposition.
/// `triangles` index into `walk`; `walk_terminals` maps walk positions back
/// to terminal indices of the generating tree.
#[derive(Clone, Debug)]
pub struct CharArea {
    pub walk: Vec<Point>,
    pub walk_terminals: Vec<usize>,
    pub triangles: Vec<[usize; 3]>,
    pub source: AreaSource,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AreaError {
    NotFull,
    /// The path's endpoint tree is still full; there is no limit to take.
    NotDegenerate,
    /// No triangle decomposition was found for an immersed walk.
    ImmersedUnresolved,
    /// A full tree with n ≤ 5 escaped its walk polygon; the input is bad.
    TreeNotContained { vertex: usize },
    Construct(ConstructError),
    Tree(TreeError),
}

impl From<ConstructError> for AreaError {
    fn from(e: ConstructError) -> Self {
        AreaError::Construct(e)
    }
}

impl From<TreeError> for AreaError {
    fn from(e: TreeError) -> Self {
        AreaError::Tree(e)
    }
}

impl core::fmt::Display for AreaError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AreaError::NotFull => write!(f, "tree is not full"),
            AreaError::NotDegenerate => write!(f, "path endpoint is still a full tree"),
            AreaError::ImmersedUnresolved => write!(f, "no triangle decomposition found"),
            AreaError::TreeNotContained { vertex } => {
                write!(f, "walk polygon does not contain tree vertex {vertex}")
            }
            AreaError::Construct(e) => write!(f, "{e}"),
            AreaError::Tree(e) => write!(f, "{e}"),
        }
    }
}

/// Closed walk around the tree: Euler tour of the doubled tree under the
/// counterclockwise rotation system induced by the edge coordinates, started
/// at terminal 0. Terminals are recorded at every visit, so leaves appear
/// once and degree-2/3 terminals appear at each pass. Returns terminal
/// indices.
pub fn terminal_walk(tree: &SteinerTree) -> Vec<usize> {
    if tree.edges.is_empty() {
        return vec![0];
    }
    let n = tree.vertex_count();
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &tree.edges {
        rotation[u].push(v);
        rotation[v].push(u);
    }
    for (v, rot) in rotation.iter_mut().enumerate() {
        let origin = tree.vertex(v);
        rot.sort_by(|&a, &b| {
            let pa = tree.vertex(a);
            let pb = tree.vertex(b);
            let ta = libm::atan2(pa.y - origin.y, pa.x - origin.x);
            let tb = libm::atan2(pb.y - origin.y, pb.x - origin.x);
            ta.partial_cmp(&tb).unwrap().then(a.cmp(&b))
        });
    }

    let start = 0usize;
    let start_dart = (start, rotation[start][0]);
    let mut walk = vec![start];
    let mut dart = start_dart;
    loop {
        let (u, v) = dart;
        let rot = &rotation[v];
        let pos = rot.iter().position(|&w| w == u).expect("reverse dart");
        let next = (v, rot[(pos + 1) % rot.len()]);
        if next == start_dart {
            break;
        }
        if tree.is_terminal(v) {
            walk.push(v);
        }
        dart = next;
    }
    walk
}

/// Characteristic area of a full tree: the walk polygon, triangulated by ear
/// clipping when embedded and by the tree-dual triangle gluing when
/// immersed. For n ≤ 5 the region is checked to contain the whole tree.
pub fn char_area_full(tree: &SteinerTree, tol: &Tolerance) -> Result<CharArea, AreaError> {
    if !tree.is_full() {
        return Err(AreaError::NotFull);
    }
    let walk_terminals = terminal_walk(tree);
    let walk: Vec<Point> = walk_terminals.iter().map(|&i| tree.vertex(i)).collect();

    let triangles = if walk.len() < 3 {
        Vec::new()
    } else if walk_is_embedded(&walk, tol) {
        match ear_clip(&walk, tol) {
            Some(t) => t,
            None => dual_triangulation(tree, &walk_terminals)?,
        }
    } else {
        dual_triangulation(tree, &walk_terminals)?
    };

    let area = CharArea {
        walk,
        walk_terminals,
        triangles,
        source: AreaSource::Full,
    };

    if tree.terminal_count() <= 5 {
        for v in 0..tree.vertex_count() {
            if !area.contains_point(tree.vertex(v), tol) {
                return Err(AreaError::TreeNotContained { vertex: v });
            }
        }
        for &(u, v) in &tree.edges {
            let mid = tree.vertex(u).lerp(tree.vertex(v), 0.5);
            if !area.contains_point(mid, tol) {
                return Err(AreaError::TreeNotContained { vertex: u });
            }
        }
    }
    Ok(area)
}

/// One characteristic area per full component (the union rule).
/// `walk_terminals` of each member refer to the parent tree's terminals.
pub fn char_area_union(tree: &SteinerTree, tol: &Tolerance) -> Result<Vec<CharArea>, AreaError> {
    let mut out = Vec::new();
    for comp in tree::full_components(tree) {
        let mut area = char_area_full(&comp.subtree, tol)?;
        for t in area.walk_terminals.iter_mut() {
            *t = comp.parent_terminals[*t];
        }
        area.source = AreaSource::Union;
        out.push(area);
    }
    Ok(out)
}

/// Characteristic area of the degenerate endpoint of a path, defined by
/// continuity: the walk and triangle combinatorics of the full trees just
/// before degeneration, evaluated at the t = 1 terminal positions. Collapsed
/// triangles are dropped.
pub fn char_area_limit(path: &DeformationPath, tol: &Tolerance) -> Result<CharArea, AreaError> {
    let end = path.raw_tree_at(1.0, tol)?;
    let collapsed = (0..end.edges.len()).any(|e| end.edge_length(e) < tol.eps_len);
    if !collapsed {
        return Err(AreaError::NotDegenerate);
    }

    let probe = path.raw_tree_at(1.0 - LIMIT_PROBE_DELTA, tol)?;
    let before = char_area_full(&probe, tol)?;

    let terminals_end = path.terminals_at(1.0);
    let walk: Vec<Point> = before
        .walk_terminals
        .iter()
        .map(|&i| terminals_end[i])
        .collect();
    let scale = bbox_diagonal(&walk);
    let min_area = {
        let e = tol.len_eps(scale);
        e * e
    };
    let triangles = before
        .triangles
        .iter()
        .copied()
        .filter(|&[a, b, c]| {
            0.5 * libm::fabs(cross(walk[a], walk[b], walk[c])) >= min_area
        })
        .collect();

    Ok(CharArea {
        walk,
        walk_terminals: before.walk_terminals,
        triangles,
        source: AreaSource::Limit,
    })
}

impl CharArea {
    pub fn scale(&self) -> f64 {
        bbox_diagonal(&self.walk)
    }

    pub fn triangle_points(&self, i: usize) -> [Point; 3] {
        let [a, b, c] = self.triangles[i];
        [self.walk[a], self.walk[b], self.walk[c]]
    }

    /// Closed walk edges, including the wrap-around edge.
    pub fn boundary_edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.walk.len();
        (0..n).map(move |i| (self.walk[i], self.walk[(i + 1) % n]))
    }

    /// Closed-region membership: inside some triangle, or within the scaled
    /// tolerance of the walk boundary.
    pub fn contains_point(&self, p: Point, tol: &Tolerance) -> bool {
        let scale = self.scale();
        let eps = tol.len_eps(scale);
        for i in 0..self.triangles.len() {
            let [a, b, c] = self.triangle_points(i);
            if point_in_triangle(p, a, b, c, eps) {
                return true;
            }
        }
        if self.walk.len() == 1 {
            return p.dist(self.walk[0]) <= eps;
        }
        self.boundary_edges()
            .any(|(a, b)| point_segment_distance(p, a, b) <= eps)
    }
}

/// Spec-named alias for [`CharArea::contains_point`].
pub fn region_contains_point(area: &CharArea, p: Point, tol: &Tolerance) -> bool {
    area.contains_point(p, tol)
}

/// A characteristic area or a union of them; membership is membership in any
/// member.
#[derive(Clone, Debug)]
pub struct Region {
    pub areas: Vec<CharArea>,
}

impl Region {
    pub fn single(area: CharArea) -> Self {
        Region { areas: vec![area] }
    }

    pub fn union(areas: Vec<CharArea>) -> Self {
        Region { areas }
    }

    pub fn contains_point(&self, p: Point, tol: &Tolerance) -> bool {
        self.areas.iter().any(|a| a.contains_point(p, tol))
    }

    pub fn boundary_edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.areas.iter().flat_map(|a| a.boundary_edges())
    }
}

/// Outcome of a probe-based region containment test; on failure `witness` is
/// a point of `b` (the tested subset) that fell outside `a`.
#[derive(Clone, Copy, Debug)]
pub struct ContainmentReport {
    pub contained: bool,
    pub witness: Option<Point>,
}

/// Probe-based test that `a` contains `b`: walk vertices, triangle
/// centroids, sampled boundary points and a rejection-sampled interior grid
/// of every member of `b` must all belong to `a`.
pub fn region_contains_region(a: &Region, b: &Region, tol: &Tolerance) -> ContainmentReport {
    for member in &b.areas {
        for &p in &member.walk {
            if !a.contains_point(p, tol) {
                return ContainmentReport {
                    contained: false,
                    witness: Some(p),
                };
            }
        }
        for i in 0..member.triangles.len() {
            let [ta, tb, tc] = member.triangle_points(i);
            let centroid = Point::new(
                (ta.x + tb.x + tc.x) / 3.0,
                (ta.y + tb.y + tc.y) / 3.0,
            );
            if !a.contains_point(centroid, tol) {
                return ContainmentReport {
                    contained: false,
                    witness: Some(centroid),
                };
            }
        }
        for (ea, eb) in member.boundary_edges() {
            for k in 0..EDGE_SAMPLES {
                let p = ea.lerp(eb, k as f64 / (EDGE_SAMPLES - 1) as f64);
                if !a.contains_point(p, tol) {
                    return ContainmentReport {
                        contained: false,
                        witness: Some(p),
                    };
                }
            }
        }
        // interior grid over the member's bounding box, rejection-sampled
        // through its own membership test
        let (min_x, min_y, max_x, max_y) = walk_bbox(&member.walk);
        for i in 0..PROBE_GRID {
            for j in 0..PROBE_GRID {
                let p = Point::new(
                    min_x + (max_x - min_x) * (i as f64 + 0.5) / PROBE_GRID as f64,
                    min_y + (max_y - min_y) * (j as f64 + 0.5) / PROBE_GRID as f64,
                );
                if member.contains_point(p, tol) && !a.contains_point(p, tol) {
                    return ContainmentReport {
                        contained: false,
                        witness: Some(p),
                    };
                }
            }
        }
    }
    ContainmentReport {
        contained: true,
        witness: None,
    }
}

fn walk_bbox(walk: &[Point]) -> (f64, f64, f64, f64) {
    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for p in walk {
        min_x = min_x.min(p.x);
        min_y = min_y.min(p.y);
        max_x = max_x.max(p.x);
        max_y = max_y.max(p.y);
    }
    (min_x, min_y, max_x, max_y)
}

fn point_in_triangle(p: Point, a: Point, b: Point, c: Point, eps: f64) -> bool {
    // bbox gate keeps degenerate (collinear) triangles from accepting the
    // whole line through them
    let min_x = a.x.min(b.x).min(c.x) - eps;
    let max_x = a.x.max(b.x).max(c.x) + eps;
    let min_y = a.y.min(b.y).min(c.y) - eps;
    let max_y = a.y.max(b.y).max(c.y) + eps;
    if p.x < min_x || p.x > max_x || p.y < min_y || p.y > max_y {
        return false;
    }
    let longest = a.dist(b).max(b.dist(c)).max(a.dist(c)).max(1.0);
    let slack = eps * longest;
    let d1 = cross(a, b, p);
    let d2 = cross(b, c, p);
    let d3 = cross(c, a, p);
    let has_neg = d1 < -slack || d2 < -slack || d3 < -slack;
    let has_pos = d1 > slack || d2 > slack || d3 > slack;
    !(has_neg && has_pos)
}

/// True when the closed walk is a simple polygon: no proper edge crossings
/// and no vertex in the interior of a non-incident edge.
pub fn walk_is_embedded(walk: &[Point], tol: &Tolerance) -> bool {
    let n = walk.len();
    let eps = tol.len_eps(bbox_diagonal(walk));
    for i in 0..n {
        let si = Segment {
            a: walk[i],
            b: walk[(i + 1) % n],
        };
        for j in (i + 1)..n {
            let sj = Segment {
                a: walk[j],
                b: walk[(j + 1) % n],
            };
            if segments_properly_cross(&si, &sj, tol) {
                return false;
            }
        }
        for (v, &p) in walk.iter().enumerate() {
            if v == i || v == (i + 1) % n {
                continue;
            }
            if point_segment_distance(p, si.a, si.b) <= eps {
                return false;
            }
        }
    }
    true
}

/// Ear-clipping triangulation of a simple polygon, returning walk-index
/// triples. `None` when clipping stalls (the caller falls back to the dual
/// gluing).
fn ear_clip(walk: &[Point], tol: &Tolerance) -> Option<Vec<[usize; 3]>> {
    let n = walk.len();
    let eps_cross = {
        let scale = bbox_diagonal(walk).max(1.0);
        tol.len_eps(scale) * scale
    };
    let signed_area2: f64 = (0..n)
        .map(|i| {
            let p = walk[i];
            let q = walk[(i + 1) % n];
            p.x * q.y - q.x * p.y
        })
        .sum();
    let ccw = signed_area2 >= 0.0;

    let mut ring: Vec<usize> = (0..n).collect();
    if !ccw {
        ring.reverse();
    }
    let mut triangles = Vec::with_capacity(n - 2);
    while ring.len() > 3 {
        let m = ring.len();
        let mut clipped = false;
        for k in 0..m {
            let prev = ring[(k + m - 1) % m];
            let cur = ring[k];
            let next = ring[(k + 1) % m];
            let c = cross(walk[prev], walk[cur], walk[next]);
            if c <= eps_cross {
                continue; // reflex or flat corner
            }
            let mut blocked = false;
            for &other in &ring {
                if other == prev || other == cur || other == next {
                    continue;
                }
                if point_in_triangle(walk[other], walk[prev], walk[cur], walk[next], 0.0) {
                    blocked = true;
                    break;
                }
            }
            if !blocked {
                triangles.push([prev, cur, next]);
                ring.remove(k);
                clipped = true;
                break;
            }
        }
        if !clipped {
            return None;
        }
    }
    triangles.push([ring[0], ring[1], ring[2]]);
    Some(triangles)
}

/// Triangle gluing dual to the tree structure: one triangle per Steiner
/// point, with vertices at the ends of the three contiguous walk arcs its
/// branches span. Adjacent Steiner points share a triangle side, so the
/// family glues into the immersed polygon bounded by the walk.
fn dual_triangulation(
    tree: &SteinerTree,
    walk_terminals: &[usize],
) -> Result<Vec<[usize; 3]>, AreaError> {
    let n = walk_terminals.len();
    let mut pos_of_terminal = vec![usize::MAX; tree.terminal_count()];
    for (pos, &t) in walk_terminals.iter().enumerate() {
        if pos_of_terminal[t] != usize::MAX {
            // repeated terminal: the walk is not a full-tree walk
            return Err(AreaError::ImmersedUnresolved);
        }
        pos_of_terminal[t] = pos;
    }

    let adj = tree.adjacency();
    let n_term = tree.terminal_count();
    let mut triangles = Vec::new();
    for s in n_term..tree.vertex_count() {
        let mut ends = Vec::with_capacity(3);
        for &branch in &adj[s] {
            // terminals reachable from `branch` without passing through `s`
            let mut in_branch = vec![false; n];
            let mut stack = vec![branch];
            let mut seen = vec![false; tree.vertex_count()];
            seen[s] = true;
            seen[branch] = true;
            while let Some(v) = stack.pop() {
                if tree.is_terminal(v) {
                    in_branch[pos_of_terminal[v]] = true;
                }
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            // the branch must span a contiguous cyclic arc of walk positions;
            // its end is the position whose successor leaves the branch
            let count = in_branch.iter().filter(|&&b| b).count();
            if count == 0 {
                return Err(AreaError::ImmersedUnresolved);
            }
            let mut end = None;
            let mut boundary_count = 0;
            for p in 0..n {
                if in_branch[p] && !in_branch[(p + 1) % n] {
                    end = Some(p);
                    boundary_count += 1;
                }
            }
            if boundary_count != 1 {
                return Err(AreaError::ImmersedUnresolved);
            }
            ends.push(end.unwrap());
        }
        ends.sort_unstable();
        triangles.push([ends[0], ends[1], ends[2]]);
    }
    Ok(triangles)
}
