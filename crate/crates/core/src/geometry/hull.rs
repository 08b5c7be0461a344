use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::point::Point;
use crate::error::{Error, Result};

/// Relative tolerance of the orientation predicate.
///
/// A turn `a → b → c` counts as collinear when
/// `|cross(b − a, c − a)| ≤ ORIENT_TOL · |b − a| · |c − a|`, i.e. when the
/// sine of the angle at `a` is below the tolerance. The test is invariant
/// under scaling, so hull classifications do not change when a point set is
/// contracted.
pub const ORIENT_TOL: f64 = 1e-9;

/// Sign of the turn `a → b → c`: `1` for left (counterclockwise), `-1` for
/// right, `0` for collinear within [`ORIENT_TOL`].
pub fn orient(a: Point, b: Point, c: Point) -> i8 {
    let u = b - a;
    let v = c - a;
    let cross = u.cross(v);
    let scale = u.norm() * v.norm();
    if cross.abs() <= ORIENT_TOL * scale {
        0
    } else if cross > 0.0 {
        1
    } else {
        -1
    }
}

/// Signed turning angle from direction `d1` to direction `d2`, in `(-π, π]`.
pub fn turning_angle(d1: Point, d2: Point) -> f64 {
    d1.cross(d2).atan2(d1.dot(d2))
}

fn coincident(a: Point, b: Point) -> bool {
    let d = a.distance(b);
    d == 0.0 || d <= 1e-12 * (a.norm() + b.norm())
}

/// Where an inserted point fell relative to the hull it was inserted into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    /// Inside the hull or on its boundary; the hull is unchanged.
    Contained,
    /// Outside the hull; the point is now a hull vertex.
    Exterior,
}

/// Shape of a convex hull, with the degenerate cases kept explicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum HullShape {
    Point(Point),
    Segment(Point, Point),
    /// Strictly convex polygon, counterclockwise, at least three vertices.
    Polygon(Vec<Point>),
}

/// Convex hull of a growing point set.
///
/// The perimeter of a segment is twice its length and that of a point is 0,
/// so the perimeter never decreases under insertion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullState {
    shape: HullShape,
    perimeter: f64,
}

fn ring_perimeter(ring: &[Point]) -> f64 {
    ring.iter()
        .zip(ring.iter().cycle().skip(1))
        .map(|(&a, &b)| a.distance(b))
        .sum()
}

impl HullState {
    pub fn from_point(p: Point) -> Self {
        Self {
            shape: HullShape::Point(p),
            perimeter: 0.0,
        }
    }

    fn segment(a: Point, b: Point) -> Self {
        Self {
            shape: HullShape::Segment(a, b),
            perimeter: 2.0 * a.distance(b),
        }
    }

    fn polygon(ring: Vec<Point>) -> Self {
        let perimeter = ring_perimeter(&ring);
        Self {
            shape: HullShape::Polygon(ring),
            perimeter,
        }
    }

    pub fn shape(&self) -> &HullShape {
        &self.shape
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    /// Hull vertices counterclockwise: one for a point, two for a segment.
    pub fn vertices(&self) -> Vec<Point> {
        match &self.shape {
            HullShape::Point(p) => vec![*p],
            HullShape::Segment(a, b) => vec![*a, *b],
            HullShape::Polygon(ring) => ring.clone(),
        }
    }

    /// Whether `p` lies in the hull, boundary included (within tolerance).
    pub fn contains(&self, p: Point) -> bool {
        match &self.shape {
            HullShape::Point(a) => coincident(*a, p),
            HullShape::Segment(a, b) => on_segment(*a, *b, p),
            HullShape::Polygon(ring) => (0..ring.len())
                .all(|i| orient(ring[i], ring[(i + 1) % ring.len()], p) >= 0),
        }
    }

    /// Adds `p`, returning where it fell and its external angle in the new
    /// hull: 0 when contained, π when it extends a point or a segment along
    /// its line, and the turning angle of the new polygon at `p` otherwise.
    pub fn insert(&mut self, p: Point) -> (Location, f64) {
        match &self.shape {
            HullShape::Point(a) => {
                let a = *a;
                if coincident(a, p) {
                    (Location::Contained, 0.0)
                } else {
                    *self = Self::segment(a, p);
                    (Location::Exterior, PI)
                }
            }
            HullShape::Segment(a, b) => {
                let (a, b) = (*a, *b);
                match orient(a, b, p) {
                    0 => {
                        let t = (p - a).dot(b - a) / (b - a).norm_sq();
                        if on_segment(a, b, p) {
                            (Location::Contained, 0.0)
                        } else {
                            *self = if t < 0.0 {
                                Self::segment(p, b)
                            } else {
                                Self::segment(a, p)
                            };
                            (Location::Exterior, PI)
                        }
                    }
                    s => {
                        let ring = if s > 0 { vec![a, b, p] } else { vec![b, a, p] };
                        let tau = turning_angle(p - ring[1], ring[0] - p).clamp(0.0, PI);
                        *self = Self::polygon(ring);
                        (Location::Exterior, tau)
                    }
                }
            }
            HullShape::Polygon(ring) => match insert_into_ring(ring, p) {
                None => (Location::Contained, 0.0),
                Some((ring, tau)) => {
                    *self = Self::polygon(ring);
                    (Location::Exterior, tau)
                }
            },
        }
    }

    /// Non-mutating form of [`HullState::insert`].
    pub fn inserted(&self, p: Point) -> (HullState, Location, f64) {
        let mut next = self.clone();
        let (loc, tau) = next.insert(p);
        (next, loc, tau)
    }
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    if coincident(a, p) || coincident(b, p) {
        return true;
    }
    if orient(a, b, p) != 0 {
        return false;
    }
    let t = (p - a).dot(b - a) / (b - a).norm_sq();
    (-1e-12..=1.0 + 1e-12).contains(&t)
}

/// Inserts an exterior point into a strictly convex CCW ring. Returns `None`
/// when `p` is contained.
fn insert_into_ring(ring: &[Point], p: Point) -> Option<(Vec<Point>, f64)> {
    let n = ring.len();
    let side: Vec<i8> = (0..n).map(|i| orient(ring[i], ring[(i + 1) % n], p)).collect();
    if side.iter().all(|&s| s >= 0) {
        return None;
    }
    // Edges p sees from outside, counting edges whose line passes through p:
    // their shared vertex stops being a strict corner.
    let visible = |i: usize| side[i % n] <= 0;
    let anchor = (0..n).find(|&i| !visible(i))?;
    let mut first = anchor + 1;
    while !visible(first) {
        first += 1;
    }
    let mut last = first;
    while visible(last + 1) {
        last += 1;
    }
    // Kept chain runs from the end of the last visible edge around to the
    // start of the first one.
    let mut out = Vec::with_capacity(n + 1);
    out.push(p);
    let mut i = last + 1;
    loop {
        out.push(ring[i % n]);
        if i % n == first % n {
            break;
        }
        i += 1;
    }
    let prev = *out.last().unwrap();
    let next = out[1];
    let tau = turning_angle(p - prev, next - p).clamp(0.0, PI);
    Some((out, tau))
}

/// Convex hull of `points` as indices, counterclockwise, strictly convex.
/// Returns one index for a single distinct location, the two extreme
/// indices for collinear input, and the polygon ring otherwise.
pub fn hull_indices(points: &[Point], subset: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = subset.to_vec();
    idx.sort_by(|&i, &j| {
        let (a, b) = (points[i], points[j]);
        a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)).then(i.cmp(&j))
    });
    idx.dedup_by(|a, b| coincident(points[*a], points[*b]));
    if idx.len() <= 2 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && orient(
                points[lower[lower.len() - 2]],
                points[lower[lower.len() - 1]],
                points[i],
            ) <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && orient(
                points[upper[upper.len() - 2]],
                points[upper[upper.len() - 1]],
                points[i],
            ) <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Convex hull of a list of points.
pub fn convex_hull(points: &[Point]) -> Result<HullState> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let all: Vec<usize> = (0..points.len()).collect();
    let ring: Vec<Point> = hull_indices(points, &all)
        .into_iter()
        .map(|i| points[i])
        .collect();
    Ok(match ring.len() {
        1 => HullState::from_point(ring[0]),
        2 => HullState::segment(ring[0], ring[1]),
        _ => HullState::polygon(ring),
    })
}

/// External angle at `ring[i]` of a hull given by its CCW vertex ring:
/// 2π for a lone point, π at segment endpoints, the turning angle otherwise.
pub fn ring_external_angle(ring: &[Point], i: usize) -> f64 {
    match ring.len() {
        0 | 1 => TAU,
        2 => PI,
        n => {
            let prev = ring[(i + n - 1) % n];
            let next = ring[(i + 1) % n];
            turning_angle(ring[i] - prev, next - ring[i]).clamp(0.0, PI)
        }
    }
}
