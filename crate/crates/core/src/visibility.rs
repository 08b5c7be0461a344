//! Exact visible perimeter of a stacked unit-disk arrangement and its limit
//! under contraction of the centers.
//!
//! Disks have radius 1, so arc measures in radians are also lengths. The
//! viewer sees rank 1 first; a boundary point of disk `i` is hidden when it
//! lies in the closed disk of some disk ranked in front of `i`.

use std::collections::HashMap;
use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{push_coverage, ArcIntervalSet, HullState, Location, Point, PointSet, StackingOrder};

/// Visible arc measure of every disk and their sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VisibilityReport {
    /// `(disk index, visible measure)` in disk-index order.
    pub per_disk: Vec<(usize, f64)>,
    pub total: f64,
}

/// Per-step record of the contracted-limit computation, in rank order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleTrace {
    /// Disk inserted at each step.
    pub disks: Vec<usize>,
    /// External angle contributed at each step; the first is 2π.
    pub taus: Vec<f64>,
    /// Where each point fell relative to the hull of its predecessors.
    pub locations: Vec<Location>,
    /// Hull perimeter after each step.
    pub per: Vec<f64>,
}

impl AngleTrace {
    pub fn total(&self) -> f64 {
        self.taus.iter().sum()
    }
}

/// Buckets of centers on a grid of side 2, so only disks that can overlap
/// are compared.
struct NeighborIndex {
    cells: HashMap<(i64, i64), Vec<usize>>,
}

impl NeighborIndex {
    fn new(points: &[Point]) -> Self {
        let mut cells: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, &p) in points.iter().enumerate() {
            cells.entry(Self::cell(p)).or_default().push(i);
        }
        Self { cells }
    }

    fn cell(p: Point) -> (i64, i64) {
        ((p.x / 2.0).floor() as i64, (p.y / 2.0).floor() as i64)
    }

    fn for_each_near(&self, p: Point, mut visit: impl FnMut(usize)) {
        let (cx, cy) = Self::cell(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(bucket) = self.cells.get(&(cx + dx, cy + dy)) {
                    bucket.iter().copied().for_each(&mut visit);
                }
            }
        }
    }
}

fn covered_by_front(points: &[Point], f: &StackingOrder, index: &NeighborIndex, i: usize) -> ArcIntervalSet {
    let center = points[i];
    let mut pieces = Vec::new();
    let mut full = false;
    index.for_each_near(center, |j| {
        if full || j == i || !f.in_front(j, i) {
            return;
        }
        let before = pieces.len();
        if push_coverage(center, points[j], &mut pieces) && pieces[before] == (0.0, TAU) {
            full = true;
        }
    });
    if full {
        ArcIntervalSet::full()
    } else {
        ArcIntervalSet::from_pieces(pieces)
    }
}

/// Visible part of disk `i`'s boundary: its circle minus the coverage of
/// every disk ranked in front of it.
pub fn visible_arcs(ps: &PointSet, f: &StackingOrder, i: usize) -> Result<ArcIntervalSet> {
    f.check_len(ps.len())?;
    if i >= ps.len() {
        return Err(Error::IndexOutOfRange { index: i, len: ps.len() });
    }
    let index = NeighborIndex::new(ps.points());
    Ok(covered_by_front(ps.points(), f, &index, i).complement())
}

/// Exact visible perimeter of the unit disks centered at `ps` under `f`.
pub fn visible_perimeter(ps: &PointSet, f: &StackingOrder) -> Result<VisibilityReport> {
    f.check_len(ps.len())?;
    let points = ps.points();
    let index = NeighborIndex::new(points);
    let per_disk: Vec<(usize, f64)> = (0..points.len())
        .into_par_iter()
        .map(|i| (i, TAU - covered_by_front(points, f, &index, i).measure()))
        .collect();
    let total = per_disk.iter().map(|&(_, m)| m).sum();
    Ok(VisibilityReport { per_disk, total })
}

/// Limit of the visible perimeter as the centers contract toward a point.
///
/// Points are inserted into a convex hull in rank order. The first point
/// contributes 2π, a point already in the hull of its predecessors
/// (boundary included) contributes 0, and any other point contributes its
/// external angle in the enlarged hull.
pub fn limit_visible_perimeter(ps: &PointSet, f: &StackingOrder) -> Result<(f64, AngleTrace)> {
    f.check_len(ps.len())?;
    let n = ps.len();
    let mut trace = AngleTrace {
        disks: Vec::with_capacity(n),
        taus: Vec::with_capacity(n),
        locations: Vec::with_capacity(n),
        per: Vec::with_capacity(n),
    };
    let mut hull: Option<HullState> = None;
    for &disk in f.sequence() {
        let p = ps.points()[disk];
        let (loc, tau) = match hull.as_mut() {
            None => {
                hull = Some(HullState::from_point(p));
                (Location::Exterior, TAU)
            }
            Some(h) => h.insert(p),
        };
        trace.disks.push(disk);
        trace.taus.push(tau);
        trace.locations.push(loc);
        trace.per.push(hull.as_ref().map_or(0.0, |h| h.perimeter()));
    }
    Ok((trace.total(), trace))
}

/// One step of the hull-perimeter growth check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapStep {
    /// 1-based step number.
    pub step: usize,
    /// `per(step) − per(step − 1)`.
    pub gap: f64,
    /// `min_dist · τ² / 5`.
    pub bound: f64,
}

impl GapStep {
    pub fn holds(&self, tol: f64) -> bool {
        self.gap >= self.bound - tol
    }
}

/// Hull-perimeter growth against the lower bound `min_dist · τ² / 5`, for
/// every step after the first.
///
/// With minimum distance 1, cutting the triangle of unit legs at the new
/// vertex off the new hull shows `per(i) − per(i−1) ≥ 2 − 2cos(τ/2)`,
/// which is at least `τ²/5` on `[0, π]`. Both sides scale linearly, hence
/// the `min_dist` factor.
pub fn perimeter_gap_trace(trace: &AngleTrace, min_dist: f64) -> Vec<GapStep> {
    (1..trace.taus.len())
        .map(|k| GapStep {
            step: k + 1,
            gap: trace.per[k] - trace.per[k - 1],
            bound: min_dist * trace.taus[k] * trace.taus[k] / 5.0,
        })
        .collect()
}

/// Upper bound `2π + (5πC)^{1/2} n^{3/4}` on the contracted limit of any
/// order of a `C`-dense `n`-point set.
pub fn dense_limit_upper_bound(n: usize, c: f64) -> f64 {
    TAU + (5.0 * std::f64::consts::PI * c).sqrt() * (n as f64).powf(0.75)
}
