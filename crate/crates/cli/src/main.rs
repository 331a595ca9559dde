//! Command-line front end: scene I/O, validity reports, characteristic
//! areas, minimal inner spanning trees, deformation sweeps with jump
//! detection, monotonicity checks, the two frozen counterexample scenes,
//! and SVG rendering.
//!
//! Exit codes: 0 success; 1 detected property violation under
//! `--expect-pass` (or a failed frozen-scene reproduction); 2 input errors.

use chardom_cli::{render, scene};

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chardom_core::area::{char_area_full, char_area_limit, char_area_union, Region};
use chardom_core::construct::{slide_terminal_path, DeformationPath};
use chardom_core::geom::Tolerance;
use chardom_core::scenario::{
    check_monotonicity, default_jump_threshold, detect_jump, scenario_fig1, scenario_fig2,
    sweep_mist, AreaRule, JumpReport, MonotonicityReport, ScenarioScene, JUMP_LEVELS,
};
use chardom_core::spanning::mist;
use chardom_core::tree::{full_components, validate, SteinerTree};

use scene::{load_scene, save_scene, Scene, SceneError};

enum CliError {
    /// Bad arguments or unreadable/ill-formed input: exit 2.
    Input(String),
    /// A checked property failed under --expect-pass: exit 1.
    Violation(String),
}

impl From<SceneError> for CliError {
    fn from(e: SceneError) -> Self {
        CliError::Input(e.to_string())
    }
}

type CmdResult = Result<(), CliError>;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            eprintln!();
            eprintln!("{USAGE}");
            ExitCode::from(2)
        }
    }
}

const USAGE: &str = "\
usage: chardom <command> [args]

commands:
  validate <scene> [--expect-pass]
      check tree-ness, degrees, 120-degree angles and planarity
  components <scene>
      decompose into full components
  chardom <scene> --rule full|union|limit [--terminal K]
      print the characteristic area(s) under the chosen rule
  mist <scene> --rule full|union|limit [--terminal K]
      minimal inner spanning tree for the chosen area rule
  sweep <scene> --terminal K [--levels 51,201,801] [--rule union|limit]
        [--threshold X]
      per-t MIST lengths at every refinement level plus a jump report
  monotone <scene> --rule union|limit [--terminal K] [--expect-pass]
      containment of component areas in the total area at t = 1
  fig1 [--emit-scene <path>] [--out <svg>]
  fig2 [--emit-scene <path>] [--out <svg>]
      run a frozen counterexample scene end to end
  render <scene> --out <file> [--rule full|union|limit] [--terminal K]
      draw tree, area walk and MIST as SVG

environment:
  CHARDOM_EPS   overrides the length tolerance (default 1e-9)";

fn run(args: &[String]) -> CmdResult {
    let Some(command) = args.first() else {
        return Err(CliError::Input("missing command".into()));
    };
    let rest = &args[1..];
    match command.as_str() {
        "validate" => cmd_validate(rest),
        "components" => cmd_components(rest),
        "chardom" => cmd_chardom(rest),
        "mist" => cmd_mist(rest),
        "sweep" => cmd_sweep(rest),
        "monotone" => cmd_monotone(rest),
        "fig1" => cmd_fig(rest, scenario_fig1()),
        "fig2" => cmd_fig(rest, scenario_fig2()),
        "render" => cmd_render(rest),
        "help" | "--help" | "-h" => {
            println!("{USAGE}");
            Ok(())
        }
        other => Err(CliError::Input(format!("unknown command '{other}'"))),
    }
}

fn tolerance() -> Result<Tolerance, CliError> {
    let mut tol = Tolerance::default();
    if let Ok(raw) = std::env::var("CHARDOM_EPS") {
        let eps: f64 = raw
            .parse()
            .map_err(|_| CliError::Input(format!("CHARDOM_EPS is not a number: '{raw}'")))?;
        if eps <= 0.0 || !eps.is_finite() {
            return Err(CliError::Input(format!(
                "CHARDOM_EPS must be positive and finite, got {eps}"
            )));
        }
        tol.eps_len = eps;
    }
    Ok(tol)
}

/// Minimal flag parser: positional scene path plus `--flag value` /
/// `--flag` pairs from a fixed whitelist.
struct Parsed {
    positional: Vec<String>,
    terminal: Option<usize>,
    rule: Option<String>,
    levels: Option<Vec<usize>>,
    threshold: Option<f64>,
    out: Option<PathBuf>,
    emit_scene: Option<PathBuf>,
    expect_pass: bool,
}

fn parse_args(args: &[String]) -> Result<Parsed, CliError> {
    let mut p = Parsed {
        positional: Vec::new(),
        terminal: None,
        rule: None,
        levels: None,
        threshold: None,
        out: None,
        emit_scene: None,
        expect_pass: false,
    };
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut value = |name: &str| -> Result<String, CliError> {
            it.next()
                .cloned()
                .ok_or_else(|| CliError::Input(format!("{name} needs a value")))
        };
        match arg.as_str() {
            "--terminal" => {
                p.terminal = Some(value("--terminal")?.parse().map_err(|_| {
                    CliError::Input("--terminal expects a terminal index".into())
                })?)
            }
            "--rule" => p.rule = Some(value("--rule")?),
            "--levels" => {
                let raw = value("--levels")?;
                let mut levels = Vec::new();
                for tok in raw.split(',') {
                    levels.push(tok.trim().parse().map_err(|_| {
                        CliError::Input(format!("bad level '{tok}' in --levels"))
                    })?);
                }
                p.levels = Some(levels);
            }
            "--threshold" => {
                p.threshold = Some(value("--threshold")?.parse().map_err(|_| {
                    CliError::Input("--threshold expects a number".into())
                })?)
            }
            "--out" => p.out = Some(PathBuf::from(value("--out")?)),
            "--emit-scene" => p.emit_scene = Some(PathBuf::from(value("--emit-scene")?)),
            "--expect-pass" => p.expect_pass = true,
            other if other.starts_with("--") => {
                return Err(CliError::Input(format!("unknown flag '{other}'")));
            }
            other => p.positional.push(other.to_string()),
        }
    }
    Ok(p)
}

fn single_scene(p: &Parsed) -> Result<Scene, CliError> {
    match p.positional.as_slice() {
        [path] => Ok(load_scene(Path::new(path))?),
        [] => Err(CliError::Input("missing scene path".into())),
        more => Err(CliError::Input(format!(
            "expected one scene path, got {}",
            more.len()
        ))),
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Rule {
    Full,
    Union,
    Limit,
}

fn parse_rule(p: &Parsed, default: Rule) -> Result<Rule, CliError> {
    match p.rule.as_deref() {
        None => Ok(default),
        Some("full") => Ok(Rule::Full),
        Some("union") => Ok(Rule::Union),
        Some("limit") => Ok(Rule::Limit),
        Some(other) => Err(CliError::Input(format!(
            "--rule must be full, union or limit, got '{other}'"
        ))),
    }
}

fn scene_path(scene: &Scene, p: &Parsed) -> Result<DeformationPath, CliError> {
    let terminal = p
        .terminal
        .or(scene.moving_terminal)
        .ok_or_else(|| CliError::Input("no --terminal given and scene has no 'moving' field".into()))?;
    let mut path = slide_terminal_path(&scene.tree(), terminal)
        .map_err(|e| CliError::Input(format!("cannot slide terminal {terminal}: {e}")))?;
    // a contracted scene may carry its pre-collapse rebuild topology
    if let Some(top) = &scene.topology {
        path.topology = top.clone();
    }
    Ok(path)
}

/// Terminals and region under a rule: `full`/`union` describe the scene tree
/// as-is; `limit` describes the degenerate endpoint of the slide.
fn rule_configuration(
    scene: &Scene,
    rule: Rule,
    p: &Parsed,
    tol: &Tolerance,
) -> Result<(SteinerTree, Region), CliError> {
    match rule {
        Rule::Full => {
            let tree = scene.tree();
            let area = char_area_full(&tree, tol)
                .map_err(|e| CliError::Input(format!("full-rule area failed: {e}")))?;
            Ok((tree, Region::single(area)))
        }
        Rule::Union => {
            let tree = scene.tree();
            let areas = char_area_union(&tree, tol)
                .map_err(|e| CliError::Input(format!("union-rule area failed: {e}")))?;
            Ok((tree, Region::union(areas)))
        }
        Rule::Limit => {
            let path = scene_path(scene, p)?;
            let end = path
                .tree_at(1.0, tol)
                .map_err(|e| CliError::Input(format!("endpoint rebuild failed: {e}")))?;
            let area = char_area_limit(&path, tol)
                .map_err(|e| CliError::Input(format!("limit-rule area failed: {e}")))?;
            Ok((end, Region::single(area)))
        }
    }
}

fn cmd_validate(args: &[String]) -> CmdResult {
    let p = parse_args(args)?;
    let scene = single_scene(&p)?;
    let tol = tolerance()?;
    let report = validate(&scene.tree(), &tol)
        .map_err(|e| CliError::Input(format!("malformed scene: {e}")))?;
    if report.is_valid() {
        println!("valid");
        return Ok(());
    }
    println!("invalid: {} violation(s)", report.violations.len());
    for v in &report.violations {
        println!(
            "  vertex {} {:?} measured {:.9}",
            v.vertex, v.kind, v.measured
        );
    }
    if p.expect_pass {
        return Err(CliError::Violation(format!(
            "{} validity violation(s)",
            report.violations.len()
        )));
    }
    Ok(())
}

fn cmd_components(args: &[String]) -> CmdResult {
    let p = parse_args(args)?;
    let scene = single_scene(&p)?;
    let tree = scene.tree();
    let comps = full_components(&tree);
    println!("{} full component(s)", comps.len());
    for (i, c) in comps.iter().enumerate() {
        println!(
            "component {i}: terminals {:?} edges {} length {:.9} full {}",
            c.parent_terminals,
            c.subtree.edges.len(),
            c.subtree.total_length(),
            c.subtree.is_full()
        );
    }
    Ok(())
}

fn cmd_chardom(args: &[String]) -> CmdResult {
    let p = parse_args(args)?;
    let scene = single_scene(&p)?;
    let tol = tolerance()?;
    let rule = parse_rule(&p, Rule::Full)?;
    let (_, region) = rule_configuration(&scene, rule, &p, &tol)?;
    println!("{} area(s)", region.areas.len());
    for (i, area) in region.areas.iter().enumerate() {
        println!(
            "area {i}: source {:?} walk terminals {:?} embedded {}",
            area.source,
            area.walk_terminals,
            chardom_core::area::walk_is_embedded(&area.walk, &tol)
        );
        for pt in &area.walk {
            println!("  {:.9} {:.9}", pt.x, pt.y);
        }
        println!("  triangles {:?}", area.triangles);
    }
    Ok(())
}

fn cmd_mist(args: &[String]) -> CmdResult {
    let p = parse_args(args)?;
    let scene = single_scene(&p)?;
    let tol = tolerance()?;
    let rule = parse_rule(&p, Rule::Full)?;
    let (tree, region) = rule_configuration(&scene, rule, &p, &tol)?;
    let m = mist(&tree.terminals, &region, &tol);
    if !m.feasible {
        println!("infeasible ({} inner edges)", m.inner_edge_count);
        return Ok(());
    }
    for &(i, j) in &m.edges {
        println!("edge {i} {j} length {:.9}", tree.terminals[i].dist(tree.terminals[j]));
    }
    println!("mist length {:.9} ({} inner edges)", m.length, m.inner_edge_count);
    Ok(())
}

fn area_rule(rule: Rule) -> Result<AreaRule, CliError> {
    match rule {
        Rule::Union => Ok(AreaRule::Union),
        Rule::Limit => Ok(AreaRule::Limit),
        Rule::Full => Err(CliError::Input(
            "this command needs --rule union or --rule limit".into(),
        )),
    }
}

fn print_jump_report(label: &str, report: &JumpReport) {
    for level in &report.levels {
        println!(
            "{label} level {}: max |dL| {:.9} at t* {:.6} ({} infeasible)",
            level.steps, level.max_jump, level.t_star, level.infeasible_samples
        );
    }
    println!(
        "{label}: jump_persists {} jump_size {:.9} threshold {:.9}",
        report.jump_persists, report.jump_size, report.threshold
    );
}

fn cmd_sweep(args: &[String]) -> CmdResult {
    let p = parse_args(args)?;
    let scene = single_scene(&p)?;
    let tol = tolerance()?;
    let rule = area_rule(parse_rule(&p, Rule::Union)?)?;
    let path = scene_path(&scene, &p)?;
    let levels = p.levels.clone().unwrap_or_else(|| JUMP_LEVELS.to_vec());
    let threshold = match p.threshold {
        Some(t) => t,
        None => default_jump_threshold(&path, &tol)
            .map_err(|e| CliError::Input(format!("threshold computation failed: {e}")))?,
    };
    for &steps in &levels {
        println!("level {steps}");
        let rows = sweep_mist(&path, rule, steps, &tol)
            .map_err(|e| CliError::Input(format!("sweep failed: {e}")))?;
        for (t, m) in &rows {
            if m.feasible {
                println!("t {t:.9} mist {:.9}", m.length);
            } else {
                println!("t {t:.9} mist infeasible");
            }
        }
    }
    let report = detect_jump(&path, rule, &levels, threshold, &tol)
        .map_err(|e| CliError::Input(format!("jump detection failed: {e}")))?;
    print_jump_report("sweep", &report);
    Ok(())
}

fn print_monotonicity(label: &str, report: &MonotonicityReport) {
    println!(
        "{label}: {} component(s), {} violation(s)",
        report.component_areas.len(),
        report.violations.len()
    );
    for &(idx, witness) in &report.violations {
        println!(
            "{label}: component {idx} not contained, witness ({:.9}, {:.9})",
            witness.x, witness.y
        );
    }
}

fn cmd_monotone(args: &[String]) -> CmdResult {
    let p = parse_args(args)?;
    let scene = single_scene(&p)?;
    let tol = tolerance()?;
    let rule = area_rule(parse_rule(&p, Rule::Union)?)?;
    let path = scene_path(&scene, &p)?;
    let report = check_monotonicity(&path, rule, &tol)
        .map_err(|e| CliError::Input(format!("monotonicity check failed: {e}")))?;
    print_monotonicity("monotone", &report);
    if p.expect_pass && !report.violations.is_empty() {
        return Err(CliError::Violation(format!(
            "{} containment violation(s)",
            report.violations.len()
        )));
    }
    Ok(())
}

fn cmd_fig(args: &[String], scene_and_path: (ScenarioScene, DeformationPath)) -> CmdResult {
    let p = parse_args(args)?;
    if !p.positional.is_empty() {
        return Err(CliError::Input("fig commands take no scene path".into()));
    }
    let tol = tolerance()?;
    let (scenario, path) = scene_and_path;
    println!(
        "scene {}: {} terminals, {} steiner points",
        scenario.name,
        scenario.tree.terminal_count(),
        scenario.tree.steiner_points.len()
    );
    println!("  {}", scenario.description);

    if let Some(out) = &p.emit_scene {
        let mut scene = Scene::from_tree(scenario.name, scenario.description, &scenario.tree);
        scene.moving_terminal = Some(scenario.moving_terminal);
        save_scene(out, &scene)?;
        println!("scene written to {}", out.display());
    }

    let threshold = default_jump_threshold(&path, &tol)
        .map_err(|e| CliError::Input(format!("threshold computation failed: {e}")))?;
    let union_jump = detect_jump(&path, AreaRule::Union, &JUMP_LEVELS, threshold, &tol)
        .map_err(|e| CliError::Input(format!("union sweep failed: {e}")))?;
    print_jump_report("union", &union_jump);
    let limit_jump = detect_jump(&path, AreaRule::Limit, &JUMP_LEVELS, threshold, &tol)
        .map_err(|e| CliError::Input(format!("limit sweep failed: {e}")))?;
    print_jump_report("limit", &limit_jump);

    let union_mono = check_monotonicity(&path, AreaRule::Union, &tol)
        .map_err(|e| CliError::Input(format!("union monotonicity failed: {e}")))?;
    print_monotonicity("union", &union_mono);
    let limit_mono = check_monotonicity(&path, AreaRule::Limit, &tol)
        .map_err(|e| CliError::Input(format!("limit monotonicity failed: {e}")))?;
    print_monotonicity("limit", &limit_mono);

    if let Some(out) = &p.out {
        let area = char_area_full(&scenario.tree, &tol)
            .map_err(|e| CliError::Input(format!("area failed: {e}")))?;
        let region = Region::single(area);
        let m = mist(&scenario.tree.terminals, &region, &tol);
        let svg = render::render_svg(&scenario.tree, Some(&region), Some(&m));
        std::fs::write(out, svg)
            .map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
        println!("rendering written to {}", out.display());
    }

    let expected = match scenario.name {
        "fig1" => union_jump.jump_persists && !limit_jump.jump_persists,
        _ => union_mono.violations.is_empty() && !limit_mono.violations.is_empty(),
    };
    if !expected {
        return Err(CliError::Violation(format!(
            "frozen scene {} did not reproduce its phenomenon",
            scenario.name
        )));
    }
    println!("{}: reproduced", scenario.name);
    Ok(())
}

fn cmd_render(args: &[String]) -> CmdResult {
    let p = parse_args(args)?;
    let scene = single_scene(&p)?;
    let tol = tolerance()?;
    let out = p
        .out
        .clone()
        .ok_or_else(|| CliError::Input("render needs --out <file>".into()))?;
    let default_rule = if scene.tree().is_full() {
        Rule::Full
    } else {
        Rule::Union
    };
    let rule = parse_rule(&p, default_rule)?;
    let (tree, region) = rule_configuration(&scene, rule, &p, &tol)?;
    let m = mist(&tree.terminals, &region, &tol);
    let svg = render::render_svg(&tree, Some(&region), Some(&m));
    std::fs::write(&out, svg).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
    println!("rendering written to {}", out.display());
    Ok(())
}
