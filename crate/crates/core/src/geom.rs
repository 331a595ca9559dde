//! Numeric-geometry primitives and predicates.
//!
//! Everything downstream (tree validation, walk polygons, inner-edge tests)
//! is built on the handful of predicates here. All of them share one
//! tolerance policy: comparisons use a scaled absolute epsilon,
//! `eps_len * bounding-box diagonal of the inputs`. Coordinates come out of
//! a numeric optimizer, so there is no exact arithmetic anywhere; boundary
//! points count as inside every region.

use libm::{atan2, fabs, sqrt};

/// A point in the Euclidean plane. Coordinates are expected to be finite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        sqrt(dx * dx + dy * dy)
    }

    /// Linear interpolation `(1-t)·self + t·other`.
    pub fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(
            (1.0 - t) * self.x + t * other.x,
            (1.0 - t) * self.y + t * other.y,
        )
    }
}

/// Cross product (q − p) × (r − p).
pub(crate) fn cross(p: Point, q: Point, r: Point) -> f64 {
    (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
}

pub(crate) fn dot(p: Point, q: Point, r: Point) -> f64 {
    (q.x - p.x) * (r.x - p.x) + (q.y - p.y) * (r.y - p.y)
}

/// Diagonal of the bounding box of a point set; the length scale the
/// tolerance policy multiplies `eps_len` by.
pub fn bbox_diagonal(points: &[Point]) -> f64 {
    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for p in points {
        min_x = min_x.min(p.x);
        min_y = min_y.min(p.y);
        max_x = max_x.max(p.x);
        max_y = max_y.max(p.y);
    }
    if points.is_empty() {
        return 0.0;
    }
    let dx = max_x - min_x;
    let dy = max_y - min_y;
    sqrt(dx * dx + dy * dy)
}

/// A straight segment between two distinct points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    /// Rejects degenerate segments (`a ≈ b` under the scaled tolerance).
    /// Modules that explicitly permit zero-length edges build the struct
    /// directly instead.
    pub fn new(a: Point, b: Point, tol: &Tolerance) -> Result<Self, GeomError> {
        if a.dist(b) <= tol.len_eps(bbox_diagonal(&[a, b])) {
            return Err(GeomError::DegenerateSegment);
        }
        Ok(Segment { a, b })
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }
}

/// Global tolerance policy: `eps_len` in length units, `eps_ang` in radians.
#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub eps_len: f64,
    pub eps_ang: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_len: 1e-9,
            eps_ang: 1e-6,
        }
    }
}

impl Tolerance {
    pub fn new(eps_len: f64, eps_ang: f64) -> Self {
        assert!(eps_len > 0.0 && eps_ang > 0.0, "tolerances must be positive");
        Tolerance { eps_len, eps_ang }
    }

    /// Length epsilon scaled to the given bounding-box diagonal. Scenes
    /// smaller than unit scale keep the absolute `eps_len` floor.
    pub fn len_eps(&self, scale: f64) -> f64 {
        self.eps_len * scale.max(1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeomError {
    /// Query point lies on the walk boundary; callers treat boundary as inside.
    BoundaryPoint,
    /// A ray endpoint coincides with the angle vertex.
    DegenerateRay,
    DegenerateSegment,
}

impl core::fmt::Display for GeomError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GeomError::BoundaryPoint => write!(f, "point lies on the walk boundary"),
            GeomError::DegenerateRay => write!(f, "ray endpoint coincides with the vertex"),
            GeomError::DegenerateSegment => write!(f, "segment endpoints coincide"),
        }
    }
}

/// Sign of the cross product (q−p)×(r−p); collinear when the magnitude is
/// below the scaled tolerance.
pub fn orientation(p: Point, q: Point, r: Point, tol: &Tolerance) -> Orientation {
    let c = cross(p, q, r);
    if fabs(c) <= tol.len_eps(bbox_diagonal(&[p, q, r])) {
        Orientation::Collinear
    } else if c > 0.0 {
        Orientation::Ccw
    } else {
        Orientation::Cw
    }
}

/// True iff the open interiors of the two segments cross transversally in a
/// single point. Shared endpoints, endpoint-on-interior contact and collinear
/// overlap all return false.
pub fn segments_properly_cross(s1: &Segment, s2: &Segment, tol: &Tolerance) -> bool {
    let o1 = orientation(s1.a, s1.b, s2.a, tol);
    let o2 = orientation(s1.a, s1.b, s2.b, tol);
    let o3 = orientation(s2.a, s2.b, s1.a, tol);
    let o4 = orientation(s2.a, s2.b, s1.b, tol);
    if o1 == Orientation::Collinear
        || o2 == Orientation::Collinear
        || o3 == Orientation::Collinear
        || o4 == Orientation::Collinear
    {
        return false;
    }
    o1 != o2 && o3 != o4
}

/// Distance from `p` to the closed segment `[a, b]`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let len2 = dot(a, b, b);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = (dot(a, b, p) / len2).clamp(0.0, 1.0);
    p.dist(a.lerp(b, t))
}

/// Winding number of the closed polyline `walk` around `p`.
///
/// A walk traversing a loop twice counts twice. Errors with `BoundaryPoint`
/// when `p` lies within the scaled tolerance of any walk segment; callers
/// treat the boundary as inside.
pub fn winding_number(walk: &[Point], p: Point, tol: &Tolerance) -> Result<i32, GeomError> {
    debug_assert!(walk.len() >= 3, "winding walk needs at least 3 vertices");
    let eps = tol.len_eps(bbox_diagonal(walk));
    let n = walk.len();
    for i in 0..n {
        if point_segment_distance(p, walk[i], walk[(i + 1) % n]) <= eps {
            return Err(GeomError::BoundaryPoint);
        }
    }
    let mut winding = 0i32;
    for i in 0..n {
        let a = walk[i];
        let b = walk[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && cross(a, b, p) > 0.0 {
                winding += 1;
            }
        } else if b.y <= p.y && cross(a, b, p) < 0.0 {
            winding -= 1;
        }
    }
    Ok(winding)
}

/// Unsigned angle ∠(a, v, b) in [0, π].
pub fn angle_at(v: Point, a: Point, b: Point, tol: &Tolerance) -> Result<f64, GeomError> {
    let eps = tol.len_eps(bbox_diagonal(&[v, a, b]));
    if v.dist(a) <= eps || v.dist(b) <= eps {
        return Err(GeomError::DegenerateRay);
    }
    let cr = cross(v, a, b);
    let dt = dot(v, a, b);
    Ok(atan2(fabs(cr), dt))
}
