use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        Self::new(r * theta.cos(), r * theta.sin())
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Direction angle in `(-π, π]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

/// A set of pairwise-distinct centers, with cached minimum distance and
/// diameter.
///
/// Both distances are computed exactly by scanning all pairs, so building a
/// set is quadratic in its size.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
    min_dist: Option<f64>,
    diameter: f64,
}

impl PointSet {
    /// Builds a point set, rejecting empty input, non-finite coordinates and
    /// duplicate points.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(index) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let mut min_sq = f64::INFINITY;
        let mut max_sq: f64 = 0.0;
        for (i, &p) in points.iter().enumerate() {
            for (j, &q) in points.iter().enumerate().skip(i + 1) {
                let d2 = (p - q).norm_sq();
                if d2 == 0.0 {
                    return Err(Error::DuplicatePoint {
                        first: i,
                        second: j,
                    });
                }
                min_sq = min_sq.min(d2);
                max_sq = max_sq.max(d2);
            }
        }
        let min_dist = (points.len() >= 2).then(|| min_sq.sqrt());
        Ok(Self {
            points,
            min_dist,
            diameter: max_sq.sqrt(),
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<Point> {
        self.points.get(index).copied()
    }

    /// Minimum pairwise distance; `None` for a single point.
    pub fn min_dist(&self) -> Option<f64> {
        self.min_dist
    }

    /// Maximum pairwise distance (0 for a single point).
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Ratio of maximum to minimum pairwise distance.
    pub fn spread(&self) -> Result<f64> {
        match self.min_dist {
            Some(d) => Ok(self.diameter / d),
            None => Err(Error::TooFewPoints {
                needed: 2,
                got: self.len(),
            }),
        }
    }

    /// Whether the spread is at most `c·√n`.
    pub fn is_dense(&self, c: f64) -> Result<bool> {
        Ok(self.spread()? <= c * (self.len() as f64).sqrt())
    }

    /// The smallest `C` for which the set is `C`-dense.
    pub fn density_constant(&self) -> Result<f64> {
        Ok(self.spread()? / (self.len() as f64).sqrt())
    }

    /// Similar copy scaled by `factor` about the origin.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "scale factor must be positive and finite, got {factor}"
            )));
        }
        Ok(Self {
            points: self.points.iter().map(|&p| p * factor).collect(),
            min_dist: self.min_dist.map(|d| d * factor),
            diameter: self.diameter * factor,
        })
    }

    /// Copy rescaled so that the minimum pairwise distance is 1. A single
    /// point is returned unchanged.
    pub fn normalized(&self) -> Self {
        match self.min_dist {
            Some(d) => self.scaled(1.0 / d).expect("min_dist is positive"),
            None => self.clone(),
        }
    }

    /// Axis-aligned bounding box as `(min, max)` corners.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.points {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }
}

/// A stacking order: a bijection from disks to depth ranks.
///
/// Rank 1 is the disk nearest the viewer, which is fully visible. Internally
/// the order is kept both as the sequence of disk indices front to back and
/// as the inverse map from disk index to 0-based rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StackingOrder {
    sequence: Vec<usize>,
    rank_of: Vec<usize>,
}

impl StackingOrder {
    /// Builds an order from disk indices listed front to back.
    pub fn from_sequence(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        let mut rank_of = vec![usize::MAX; n];
        for (rank, &disk) in sequence.iter().enumerate() {
            if disk >= n {
                return Err(Error::InvalidOrder(format!(
                    "disk index {disk} out of range for {n} disks"
                )));
            }
            if rank_of[disk] != usize::MAX {
                return Err(Error::InvalidOrder(format!(
                    "disk {disk} appears more than once"
                )));
            }
            rank_of[disk] = rank;
        }
        Ok(Self { sequence, rank_of })
    }

    /// Builds an order from 1-based ranks indexed by disk.
    pub fn from_ranks(ranks: &[usize]) -> Result<Self> {
        let n = ranks.len();
        let mut sequence = vec![usize::MAX; n];
        for (disk, &rank) in ranks.iter().enumerate() {
            if rank == 0 || rank > n {
                return Err(Error::InvalidOrder(format!(
                    "rank {rank} outside 1..={n}"
                )));
            }
            if sequence[rank - 1] != usize::MAX {
                return Err(Error::InvalidOrder(format!("rank {rank} assigned twice")));
            }
            sequence[rank - 1] = disk;
        }
        Self::from_sequence(sequence)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            sequence: (0..n).collect(),
            rank_of: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// Disk indices front to back.
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// 1-based rank of `disk`.
    pub fn rank(&self, disk: usize) -> usize {
        self.rank_of[disk] + 1
    }

    /// 1-based ranks indexed by disk.
    pub fn ranks(&self) -> Vec<usize> {
        self.rank_of.iter().map(|r| r + 1).collect()
    }

    /// Whether `a` lies in front of `b`.
    pub fn in_front(&self, a: usize, b: usize) -> bool {
        self.rank_of[a] < self.rank_of[b]
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidOrder(format!(
                "order covers {} disks but the point set has {n}",
                self.len()
            )))
        }
    }
}
