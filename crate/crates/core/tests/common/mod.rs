//! Shared helpers for the integration suites: a deterministic RNG, random
//! full-topology generation, and independent numeric oracles.

// each test target compiles this module separately and uses a subset
#![allow(dead_code)]

use chardom_core::construct::{build_full_tree, Topology};
use chardom_core::geom::{Point, Tolerance};
use chardom_core::tree::{validate, SteinerTree};

/// Small xorshift RNG so test scenes are reproducible across platforms.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    /// Uniform in [0, 1).
    pub fn f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.f64()
    }

    pub fn usize_below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// Random full Steiner topology on `n ≥ 2` terminals, grown by edge
/// subdivision: every full topology is reachable this way.
pub fn random_full_topology(rng: &mut Rng, n: usize) -> Topology {
    assert!(n >= 2);
    if n == 2 {
        return Topology::new(2, 0, vec![(0, 1)]).unwrap();
    }
    // terminals 0..n, steiner n..2n-2; start from the 3-star
    let mut edges = vec![(0, n), (1, n), (2, n)];
    for k in 3..n {
        let s = n + k - 2;
        let e = rng.usize_below(edges.len());
        let (u, v) = edges.swap_remove(e);
        edges.push((u, s));
        edges.push((s, v));
        edges.push((k, s));
    }
    Topology::new(n, n - 2, edges).unwrap()
}

/// Random valid full tree: keeps drawing terminal sets and topologies until
/// the builder converges without degeneration and validation passes.
pub fn random_full_tree(rng: &mut Rng, n: usize, tol: &Tolerance) -> (Topology, SteinerTree) {
    loop {
        let topology = random_full_topology(rng, n);
        let terminals: Vec<Point> = (0..n)
            .map(|_| Point::new(rng.range(0.0, 2.0), rng.range(0.0, 2.0)))
            .collect();
        if let Ok(tree) = build_full_tree(&topology, &terminals, tol) {
            if validate(&tree, tol).map(|r| r.is_valid()).unwrap_or(false) {
                return (topology, tree);
            }
        }
    }
}

/// Independent Fermat-point oracle: shrinking-grid minimization of the
/// summed distance to the three corners. No shared code with the builder.
pub fn fermat_oracle(a: Point, b: Point, c: Point) -> (Point, f64) {
    let total = |p: Point| p.dist(a) + p.dist(b) + p.dist(c);
    let mut cx = (a.x + b.x + c.x) / 3.0;
    let mut cy = (a.y + b.y + c.y) / 3.0;
    let mut half = 1.5
        * (a.x - cx)
            .abs()
            .max((b.x - cx).abs())
            .max((c.x - cx).abs())
            .max((a.y - cy).abs())
            .max((b.y - cy).abs())
            .max((c.y - cy).abs())
        + 0.1;
    let mut best = Point::new(cx, cy);
    for _ in 0..60 {
        let mut best_val = f64::INFINITY;
        let mut next = best;
        for i in 0..=20 {
            for j in 0..=20 {
                let p = Point::new(
                    cx - half + 2.0 * half * i as f64 / 20.0,
                    cy - half + 2.0 * half * j as f64 / 20.0,
                );
                let v = total(p);
                if v < best_val {
                    best_val = v;
                    next = p;
                }
            }
        }
        best = next;
        cx = best.x;
        cy = best.y;
        half *= 0.45;
    }
    (best, total(best))
}

/// Independent oracle for the square's full Steiner tree: alternating
/// shrinking-grid minimization over the two Steiner positions of the
/// prescribed topology (terminals 0,1 on one point, 2,3 on the other).
pub fn square_tree_oracle(corners: &[Point; 4]) -> f64 {
    let total = |s1: Point, s2: Point| {
        corners[0].dist(s1) + corners[1].dist(s1) + s1.dist(s2) + corners[2].dist(s2)
            + corners[3].dist(s2)
    };
    let mut s1 = Point::new(0.5, 0.25);
    let mut s2 = Point::new(0.5, 0.75);
    let mut half = 0.6;
    for _ in 0..70 {
        let mut best = (f64::INFINITY, s1);
        for i in 0..=16 {
            for j in 0..=16 {
                let p = Point::new(
                    s1.x - half + 2.0 * half * i as f64 / 16.0,
                    s1.y - half + 2.0 * half * j as f64 / 16.0,
                );
                let v = total(p, s2);
                if v < best.0 {
                    best = (v, p);
                }
            }
        }
        s1 = best.1;
        let mut best = (f64::INFINITY, s2);
        for i in 0..=16 {
            for j in 0..=16 {
                let p = Point::new(
                    s2.x - half + 2.0 * half * i as f64 / 16.0,
                    s2.y - half + 2.0 * half * j as f64 / 16.0,
                );
                let v = total(s1, p);
                if v < best.0 {
                    best = (v, p);
                }
            }
        }
        s2 = best.1;
        half *= 0.55;
    }
    total(s1, s2)
}
