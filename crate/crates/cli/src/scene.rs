//! Scene file format: human-readable key-value text with one canonical
//! field order, UTF-8, numbers as decimal strings with 17 significant
//! digits so every f64 round-trips bit-exactly.
//!
//! ```text
//! chardom-scene v1
//! name fig1
//! description five-terminal full tree
//! terminals 5
//! 0e0 3.2e0
//! ...
//! steiner 3
//! ...
//! edges 7
//! 0 5
//! ...
//! moving 0
//! ```
//!
//! `description`, `topology` (a rebuild topology differing from `edges`) and
//! `moving` are optional; everything else is mandatory and ordered.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use chardom_core::construct::Topology;
use chardom_core::geom::Point;
use chardom_core::tree::SteinerTree;

#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub name: String,
    pub description: String,
    pub terminals: Vec<Point>,
    pub steiner_points: Vec<Point>,
    pub edges: Vec<(usize, usize)>,
    /// Rebuild topology when it differs from `edges` (e.g. a contracted
    /// scene that should be re-optimized with its pre-collapse structure).
    pub topology: Option<Topology>,
    /// Designated sliding terminal for sweeps.
    pub moving_terminal: Option<usize>,
}

#[derive(Debug)]
pub enum SceneError {
    Io { message: String },
    Parse { line: usize, message: String },
    Structure { message: String },
}

impl std::fmt::Display for SceneError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SceneError::Io { message } => write!(f, "io error: {message}"),
            SceneError::Parse { line, message } => {
                write!(f, "parse error at line {line}: {message}")
            }
            SceneError::Structure { message } => write!(f, "structure error: {message}"),
        }
    }
}

impl std::error::Error for SceneError {}

impl Scene {
    pub fn from_tree(name: &str, description: &str, tree: &SteinerTree) -> Self {
        Scene {
            name: name.to_string(),
            description: description.to_string(),
            terminals: tree.terminals.clone(),
            steiner_points: tree.steiner_points.clone(),
            edges: tree.edges.clone(),
            topology: None,
            moving_terminal: None,
        }
    }

    pub fn tree(&self) -> SteinerTree {
        SteinerTree {
            terminals: self.terminals.clone(),
            steiner_points: self.steiner_points.clone(),
            edges: self.edges.clone(),
        }
    }

    /// Structural invariants: finite coordinates, valid indices, tree-ness
    /// and the degree rules. Geometric validity (angles, crossings) is what
    /// the `validate` command reports and is not enforced here.
    fn check_structure(&self) -> Result<(), SceneError> {
        let fail = |message: String| Err(SceneError::Structure { message });
        for (i, p) in self
            .terminals
            .iter()
            .chain(self.steiner_points.iter())
            .enumerate()
        {
            if !p.is_finite() {
                return fail(format!("vertex {i} has non-finite coordinates"));
            }
        }
        if self.terminals.is_empty() {
            return fail("scene has no terminals".to_string());
        }
        let n = self.terminals.len() + self.steiner_points.len();
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            if u >= n || v >= n {
                return fail(format!("edge {k} endpoint out of range"));
            }
            if u == v {
                return fail(format!("edge {k} is a self-loop"));
            }
        }
        if !self.edges.is_empty() || n == 1 {
            if self.edges.len() + 1 != n {
                return fail(format!(
                    "edge count {} does not match vertex count {n} minus one",
                    self.edges.len()
                ));
            }
            let tree = self.tree();
            let deg = tree.degrees();
            for (v, &d) in deg.iter().enumerate() {
                if tree.is_terminal(v) {
                    if !(1..=3).contains(&d) && !(n == 1 && d == 0) {
                        return fail(format!("terminal {v} has degree {d}, allowed 1..3"));
                    }
                } else if d != 3 {
                    return fail(format!(
                        "steiner point {} has degree {d}, required 3",
                        v - tree.terminal_count()
                    ));
                }
            }
            // connectivity: edges+1 == n and no self-loops already; a cycle
            // would disconnect something
            let adj = tree.adjacency();
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
                return fail("scene edges are disconnected".to_string());
            }
        }
        if let Some(m) = self.moving_terminal {
            if m >= self.terminals.len() {
                return fail(format!("moving terminal {m} out of range"));
            }
        }
        Ok(())
    }
}

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn emit_scene(scene: &Scene) -> String {
    let mut out = String::new();
    out.push_str("chardom-scene v1\n");
    let _ = writeln!(out, "name {}", scene.name);
    if !scene.description.is_empty() {
        let _ = writeln!(out, "description {}", scene.description);
    }
    let _ = writeln!(out, "terminals {}", scene.terminals.len());
    for p in &scene.terminals {
        let _ = writeln!(out, "{} {}", fmt_f64(p.x), fmt_f64(p.y));
    }
    let _ = writeln!(out, "steiner {}", scene.steiner_points.len());
    for p in &scene.steiner_points {
        let _ = writeln!(out, "{} {}", fmt_f64(p.x), fmt_f64(p.y));
    }
    let _ = writeln!(out, "edges {}", scene.edges.len());
    for &(u, v) in &scene.edges {
        let _ = writeln!(out, "{u} {v}");
    }
    if let Some(top) = &scene.topology {
        let _ = writeln!(out, "topology {} {} {}", top.n_terminals, top.n_steiner, top.edges.len());
        for &(u, v) in &top.edges {
            let _ = writeln!(out, "{u} {v}");
        }
    }
    if let Some(m) = scene.moving_terminal {
        let _ = writeln!(out, "moving {m}");
    }
    out
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (idx, raw) in self.iter.by_ref() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Some((idx + 1, line));
        }
        None
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> SceneError {
    SceneError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_scene(text: &str) -> Result<Scene, SceneError> {
    let mut lines = Lines {
        iter: text.lines().enumerate(),
    };
    let (ln, header) = lines
        .next_content()
        .ok_or_else(|| parse_err(0, "empty scene file"))?;
    if header != "chardom-scene v1" {
        return Err(parse_err(ln, "expected header 'chardom-scene v1'"));
    }

    let (ln, name_line) = lines
        .next_content()
        .ok_or_else(|| parse_err(ln, "missing 'name'"))?;
    let name = name_line
        .strip_prefix("name ")
        .ok_or_else(|| parse_err(ln, "expected 'name <scene name>'"))?
        .to_string();

    let (mut ln, mut line) = lines
        .next_content()
        .ok_or_else(|| parse_err(ln, "missing 'terminals'"))?;
    let mut description = String::new();
    if let Some(d) = line.strip_prefix("description ") {
        description = d.to_string();
        (ln, line) = lines
            .next_content()
            .ok_or_else(|| parse_err(ln, "missing 'terminals'"))?;
    }

    let parse_count = |ln: usize, line: &str, key: &str| -> Result<usize, SceneError> {
        line.strip_prefix(key)
            .and_then(|rest| rest.trim().parse::<usize>().ok())
            .ok_or_else(|| parse_err(ln, format!("expected '{key}<count>'")))
    };
    let parse_point = |ln: usize, line: &str| -> Result<Point, SceneError> {
        let mut it = line.split_whitespace();
        let x = it
            .next()
            .and_then(|t| t.parse::<f64>().ok())
            .ok_or_else(|| parse_err(ln, "expected two decimal coordinates"))?;
        let y = it
            .next()
            .and_then(|t| t.parse::<f64>().ok())
            .ok_or_else(|| parse_err(ln, "expected two decimal coordinates"))?;
        if it.next().is_some() {
            return Err(parse_err(ln, "trailing tokens after coordinates"));
        }
        Ok(Point::new(x, y))
    };
    let parse_edge = |ln: usize, line: &str| -> Result<(usize, usize), SceneError> {
        let mut it = line.split_whitespace();
        let u = it
            .next()
            .and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| parse_err(ln, "expected two vertex indices"))?;
        let v = it
            .next()
            .and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| parse_err(ln, "expected two vertex indices"))?;
        if it.next().is_some() {
            return Err(parse_err(ln, "trailing tokens after edge"));
        }
        Ok((u, v))
    };

    let n_terminals = parse_count(ln, line, "terminals ")?;
    let mut terminals = Vec::with_capacity(n_terminals);
    for _ in 0..n_terminals {
        let (ln, line) = lines
            .next_content()
            .ok_or_else(|| parse_err(ln, "unexpected end of terminal list"))?;
        terminals.push(parse_point(ln, line)?);
    }

    let (ln, line) = lines
        .next_content()
        .ok_or_else(|| parse_err(ln, "missing 'steiner'"))?;
    let n_steiner = parse_count(ln, line, "steiner ")?;
    let mut steiner_points = Vec::with_capacity(n_steiner);
    for _ in 0..n_steiner {
        let (ln, line) = lines
            .next_content()
            .ok_or_else(|| parse_err(ln, "unexpected end of steiner list"))?;
        steiner_points.push(parse_point(ln, line)?);
    }

    let (ln, line) = lines
        .next_content()
        .ok_or_else(|| parse_err(ln, "missing 'edges'"))?;
    let n_edges = parse_count(ln, line, "edges ")?;
    let mut edges = Vec::with_capacity(n_edges);
    for _ in 0..n_edges {
        let (ln, line) = lines
            .next_content()
            .ok_or_else(|| parse_err(ln, "unexpected end of edge list"))?;
        edges.push(parse_edge(ln, line)?);
    }

    let mut topology = None;
    let mut moving_terminal = None;
    while let Some((ln, line)) = lines.next_content() {
        if let Some(rest) = line.strip_prefix("topology ") {
            let mut it = rest.split_whitespace();
            let (a, b, m) = match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), Some(m)) => (a, b, m),
                _ => return Err(parse_err(ln, "expected 'topology <n> <s> <edges>'")),
            };
            let nt: usize = a
                .parse()
                .map_err(|_| parse_err(ln, "bad topology terminal count"))?;
            let ns: usize = b
                .parse()
                .map_err(|_| parse_err(ln, "bad topology steiner count"))?;
            let ne: usize = m.parse().map_err(|_| parse_err(ln, "bad topology edge count"))?;
            let mut tedges = Vec::with_capacity(ne);
            for _ in 0..ne {
                let (ln, line) = lines
                    .next_content()
                    .ok_or_else(|| parse_err(ln, "unexpected end of topology edges"))?;
                tedges.push(parse_edge(ln, line)?);
            }
            topology = Some(
                Topology::new(nt, ns, tedges).map_err(|e| SceneError::Structure {
                    message: format!("topology section: {e}"),
                })?,
            );
        } else if let Some(rest) = line.strip_prefix("moving ") {
            moving_terminal = Some(
                rest.trim()
                    .parse::<usize>()
                    .map_err(|_| parse_err(ln, "bad moving terminal index"))?,
            );
        } else {
            return Err(parse_err(ln, format!("unexpected line '{line}'")));
        }
    }

    let scene = Scene {
        name,
        description,
        terminals,
        steiner_points,
        edges,
        topology,
        moving_terminal,
    };
    scene.check_structure()?;
    Ok(scene)
}

pub fn load_scene(path: &Path) -> Result<Scene, SceneError> {
    let text = fs::read_to_string(path).map_err(|e| SceneError::Io {
        message: format!("{}: {e}", path.display()),
    })?;
    parse_scene(&text)
}

pub fn save_scene(path: &Path, scene: &Scene) -> Result<(), SceneError> {
    fs::write(path, emit_scene(scene)).map_err(|e| SceneError::Io {
        message: format!("{}: {e}", path.display()),
    })
}
