//! The two frozen counterexample scenes and their detectors.
//!
//! Scene 1: a full Steiner tree on five terminals whose upper terminal
//! slides along its incident edge onto the neighboring Steiner point. Under
//! the union rule the characteristic area switches abruptly to the two
//! component triangles at the endpoint, a former MIST edge stops being
//! inner, and the MIST length jumps. Under the limit rule nothing jumps.
//!
//! Scene 2: a full Steiner tree on seven terminals whose long Steiner chain
//! wraps over a short two-terminal branch; the collapsing bottom edge splits
//! it into a small triangle component nested inside a large pentagon
//! component. The limit area keeps the bite the short branch carved out of
//! the walk polygon, so it fails to contain the large component's own area —
//! the union rule trivially satisfies that containment. Neither rule passes
//! both checks; that conjunction is the point.
//!
//! The scene coordinates were found by guided search against the builders
//! and detectors in this crate and are frozen here so every run is
//! deterministic.

use alloc::vec;
use alloc::vec::Vec;

use crate::area::{char_area_full, char_area_limit, char_area_union, AreaError, CharArea, Region};
use crate::construct::{
    build_full_tree, slide_terminal_path, ConstructError, DeformationPath, Topology,
};
use crate::geom::{Point, Tolerance};
use crate::spanning::{mist, MistResult};
use crate::tree::{self, SteinerTree, TreeError};

/// Refinement levels used by the frozen scenario runs.
pub const JUMP_LEVELS: [usize; 3] = [51, 201, 801];
/// Jump threshold as a fraction of the t = 0 MIST length.
pub const JUMP_THRESHOLD_FRACTION: f64 = 0.01;

/// Which characteristic-area definition a sweep uses for non-full samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AreaRule {
    Union,
    Limit,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScenarioError {
    /// Levels must be ascending and at least three.
    BadLevels,
    /// Threshold must be positive.
    BadThreshold,
    /// The path endpoint is a full tree; there is nothing to check.
    PathNotDegenerate,
    Area(AreaError),
    Construct(ConstructError),
    Tree(TreeError),
}

impl From<AreaError> for ScenarioError {
    fn from(e: AreaError) -> Self {
        ScenarioError::Area(e)
    }
}

impl From<ConstructError> for ScenarioError {
    fn from(e: ConstructError) -> Self {
        ScenarioError::Construct(e)
    }
}

impl From<TreeError> for ScenarioError {
    fn from(e: TreeError) -> Self {
        ScenarioError::Tree(e)
    }
}

impl core::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ScenarioError::BadLevels => write!(f, "levels must be ascending, at least 3"),
            ScenarioError::BadThreshold => write!(f, "threshold must be positive"),
            ScenarioError::PathNotDegenerate => {
                write!(f, "path endpoint is still a full tree")
            }
            ScenarioError::Area(e) => write!(f, "{e}"),
            ScenarioError::Construct(e) => write!(f, "{e}"),
            ScenarioError::Tree(e) => write!(f, "{e}"),
        }
    }
}

/// A frozen counterexample scene: the built tree plus the designated moving
/// terminal.
#[derive(Clone, Debug)]
pub struct ScenarioScene {
    pub name: &'static str,
    pub description: &'static str,
    pub tree: SteinerTree,
    pub moving_terminal: usize,
}

/// Terminal layout of scene 1: upper point, outer left, inner left, inner
/// right, outer right.
pub const FIG1_TERMINALS: [(f64, f64); 5] = [
    (0.0, 3.2),
    (-2.0, 2.2),
    (-0.6, 0.0),
    (0.6, 0.0),
    (2.0, 2.2),
];

/// Steiner chain: left pair – center (upper terminal) – right pair.
pub fn fig1_topology() -> Topology {
    Topology::new(
        5,
        3,
        vec![(1, 5), (2, 5), (5, 6), (0, 6), (6, 7), (3, 7), (4, 7)],
    )
    .expect("frozen fig1 topology is well-formed")
}

pub const FIG1_MOVING_TERMINAL: usize = 0;

/// Terminal layout of scene 2: the sliding bottom terminal, the four
/// terminals of the long chain (right, upper right, top, far left — the
/// chain turns 180° so its component wraps over the short branch), and the
/// two short-branch terminals nested under the wrap.
pub const FIG2_TERMINALS: [(f64, f64); 7] = [
    (0.0, -0.4),
    (1.9, -0.1),
    (1.75, 2.0),
    (0.0, 2.8),
    (-3.45, 0.0),
    (-0.6, 0.95),
    (-0.95, 0.15),
];

/// Bottom Steiner point carries the sliding terminal, the two-terminal
/// branch, and a three-Steiner chain serving the other four terminals.
pub fn fig2_topology() -> Topology {
    Topology::new(
        7,
        5,
        vec![
            (0, 7),
            (7, 8),
            (5, 8),
            (6, 8),
            (7, 9),
            (1, 9),
            (9, 10),
            (2, 10),
            (10, 11),
            (3, 11),
            (4, 11),
        ],
    )
    .expect("frozen fig2 topology is well-formed")
}

pub const FIG2_MOVING_TERMINAL: usize = 0;

fn build_scene(
    name: &'static str,
    description: &'static str,
    terminals: &[(f64, f64)],
    topology: &Topology,
    moving_terminal: usize,
) -> (ScenarioScene, DeformationPath) {
    let tol = Tolerance::default();
    let points: Vec<Point> = terminals.iter().map(|&(x, y)| Point::new(x, y)).collect();
    let tree = build_full_tree(topology, &points, &tol)
        .expect("frozen scene builds to a full tree");
    debug_assert!(tree::validate(&tree, &tol)
        .expect("frozen scene is well-formed")
        .is_valid());
    let path = slide_terminal_path(&tree, moving_terminal)
        .expect("frozen scene moving terminal is a leaf");
    (
        ScenarioScene {
            name,
            description,
            tree,
            moving_terminal,
        },
        path,
    )
}

/// Scene demonstrating the MIST-length jump of the union rule.
pub fn scenario_fig1() -> (ScenarioScene, DeformationPath) {
    build_scene(
        "fig1",
        "five-terminal full tree; sliding the upper terminal onto its Steiner \
         point makes the union-rule area drop the bottom MIST edge",
        &FIG1_TERMINALS,
        &fig1_topology(),
        FIG1_MOVING_TERMINAL,
    )
}

/// Scene demonstrating the monotonicity failure of the limit rule.
pub fn scenario_fig2() -> (ScenarioScene, DeformationPath) {
    build_scene(
        "fig2",
        "seven-terminal full tree whose chain wraps over a short branch; \
         collapsing the bottom edge yields a small triangle component inside \
         a pentagon component whose area escapes the limit area",
        &FIG2_TERMINALS,
        &fig2_topology(),
        FIG2_MOVING_TERMINAL,
    )
}

/// Characteristic-area region of one tree sample under the chosen rule.
/// Full samples always use the full-tree area; the rule only matters at a
/// degenerate endpoint.
pub fn region_for_sample(
    path: &DeformationPath,
    tree: &SteinerTree,
    rule: AreaRule,
    tol: &Tolerance,
) -> Result<Region, ScenarioError> {
    if tree.is_full() {
        return Ok(Region::single(char_area_full(tree, tol)?));
    }
    match rule {
        AreaRule::Union => Ok(Region::union(char_area_union(tree, tol)?)),
        AreaRule::Limit => Ok(Region::single(char_area_limit(path, tol)?)),
    }
}

/// MIST sampled at one refinement level.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpLevel {
    pub steps: usize,
    /// Largest |ΔL| between adjacent feasible samples.
    pub max_jump: f64,
    /// Midpoint of the adjacent pair realizing `max_jump`.
    pub t_star: f64,
    pub infeasible_samples: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JumpReport {
    pub levels: Vec<JumpLevel>,
    pub jump_persists: bool,
    /// Max adjacent difference at the finest level.
    pub jump_size: f64,
    pub threshold: f64,
}

/// Per-sample MIST lengths along a path at one step count. Each row is
/// `(t, mist)`; every rebuilt tree is re-validated by `sample_path`.
pub fn sweep_mist(
    path: &DeformationPath,
    rule: AreaRule,
    steps: usize,
    tol: &Tolerance,
) -> Result<Vec<(f64, MistResult)>, ScenarioError> {
    let samples = crate::construct::sample_path(path, steps, tol)?;
    let mut rows = Vec::with_capacity(steps);
    for (t, tree) in samples {
        let region = region_for_sample(path, &tree, rule, tol)?;
        let m = mist(&tree.terminals, &region, tol);
        rows.push((t, m));
    }
    Ok(rows)
}

/// Default threshold: 1% of the MIST length at t = 0.
pub fn default_jump_threshold(
    path: &DeformationPath,
    tol: &Tolerance,
) -> Result<f64, ScenarioError> {
    let region = region_for_sample(path, &path.base, AreaRule::Union, tol)?;
    let m = mist(&path.base.terminals, &region, tol);
    Ok(JUMP_THRESHOLD_FRACTION * m.length)
}

/// Sweeps the path at every refinement level and decides whether the largest
/// adjacent MIST-length difference survives refinement: a genuine jump keeps
/// its size as steps shrink, a steep slope halves away. Infeasible samples
/// are excluded from differences and counted separately.
pub fn detect_jump(
    path: &DeformationPath,
    rule: AreaRule,
    levels: &[usize],
    threshold: f64,
    tol: &Tolerance,
) -> Result<JumpReport, ScenarioError> {
    if levels.len() < 3 || levels.windows(2).any(|w| w[0] >= w[1]) || levels[0] < 2 {
        return Err(ScenarioError::BadLevels);
    }
    if !threshold.is_finite() || threshold <= 0.0 {
        return Err(ScenarioError::BadThreshold);
    }
    let mut out = Vec::with_capacity(levels.len());
    for &steps in levels {
        let rows = sweep_mist(path, rule, steps, tol)?;
        let mut max_jump: f64 = 0.0;
        let mut t_star = 0.0;
        let infeasible = rows.iter().filter(|(_, m)| !m.feasible).count();
        for pair in rows.windows(2) {
            let (t0, ref m0) = pair[0];
            let (t1, ref m1) = pair[1];
            if !m0.feasible || !m1.feasible {
                continue;
            }
            let d = libm::fabs(m1.length - m0.length);
            if d > max_jump {
                max_jump = d;
                t_star = 0.5 * (t0 + t1);
            }
        }
        out.push(JumpLevel {
            steps,
            max_jump,
            t_star,
            infeasible_samples: infeasible,
        });
    }
    let coarsest = out.first().expect("at least three levels").max_jump;
    let finest = out.last().expect("at least three levels");
    let jump_size = finest.max_jump;
    let jump_persists = jump_size >= 0.5 * coarsest && jump_size >= threshold;
    Ok(JumpReport {
        levels: out,
        jump_persists,
        jump_size,
        threshold,
    })
}

/// Containment check of every component area against the total area at the
/// degenerate endpoint.
#[derive(Clone, Debug)]
pub struct MonotonicityReport {
    pub total_area: Region,
    pub component_areas: Vec<CharArea>,
    /// Components whose area is not contained in the total area, with a
    /// witness point inside the component and outside the total.
    pub violations: Vec<(usize, Point)>,
}

pub fn check_monotonicity(
    path: &DeformationPath,
    rule: AreaRule,
    tol: &Tolerance,
) -> Result<MonotonicityReport, ScenarioError> {
    let end = path.tree_at(1.0, tol)?;
    if end.is_full() {
        return Err(ScenarioError::PathNotDegenerate);
    }
    let component_areas = char_area_union(&end, tol)?;
    let total_area = match rule {
        AreaRule::Union => Region::union(component_areas.clone()),
        AreaRule::Limit => Region::single(char_area_limit(path, tol)?),
    };
    let mut violations = Vec::new();
    for (i, comp) in component_areas.iter().enumerate() {
        let report = crate::area::region_contains_region(
            &total_area,
            &Region::single(comp.clone()),
            tol,
        );
        if !report.contained {
            violations.push((i, report.witness.expect("failed containment has a witness")));
        }
    }
    Ok(MonotonicityReport {
        total_area,
        component_areas,
        violations,
    })
}

/// One full run of both frozen scenes under both rules.
#[derive(Clone, Debug)]
pub struct Catch22Report {
    pub fig1_union: JumpReport,
    pub fig1_limit: JumpReport,
    pub fig2_union: MonotonicityReport,
    pub fig2_limit: MonotonicityReport,
}

impl Catch22Report {
    /// The headline conjunction: the union rule jumps on scene 1 while
    /// staying monotone, the limit rule is continuous on scene 1 but loses
    /// monotonicity on scene 2 — so neither rule passes both checks.
    pub fn holds(&self) -> bool {
        self.fig1_union.jump_persists
            && !self.fig1_limit.jump_persists
            && self.fig2_union.violations.is_empty()
            && !self.fig2_limit.violations.is_empty()
    }
}

pub fn run_catch22(tol: &Tolerance) -> Result<Catch22Report, ScenarioError> {
    let (_, path1) = scenario_fig1();
    let threshold = default_jump_threshold(&path1, tol)?;
    let fig1_union = detect_jump(&path1, AreaRule::Union, &JUMP_LEVELS, threshold, tol)?;
    let fig1_limit = detect_jump(&path1, AreaRule::Limit, &JUMP_LEVELS, threshold, tol)?;
    let (_, path2) = scenario_fig2();
    let fig2_union = check_monotonicity(&path2, AreaRule::Union, tol)?;
    let fig2_limit = check_monotonicity(&path2, AreaRule::Limit, tol)?;
    Ok(Catch22Report {
        fig1_union,
        fig1_limit,
        fig2_union,
        fig2_limit,
    })
}
