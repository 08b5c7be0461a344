use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::point::Point;

/// Endpoints closer than this are merged.
pub const MERGE_TOL: f64 = 1e-12;

/// Center distances at or below this count as coincident disks.
pub const COINCIDENT_TOL: f64 = 1e-12;

/// Normalizes an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs.
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// A union of disjoint half-open angular intervals `[a, b)` on a circle.
///
/// Intervals are kept sorted inside `[0, 2π]`; an arc crossing angle 0 is
/// stored as two pieces, `[a, 2π)` and `[0, b)`. Every constructor and
/// operation returns the canonical form: sorted, non-empty pieces, with
/// neighbours closer than [`MERGE_TOL`] merged.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ArcIntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl ArcIntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        Self {
            intervals: vec![(0.0, TAU)],
        }
    }

    /// Arc starting at angle `start` and sweeping counterclockwise by
    /// `length` radians. Lengths at or beyond 2π give the full circle.
    pub fn arc(start: f64, length: f64) -> Self {
        if !(length > 0.0) {
            return Self::empty();
        }
        if length >= TAU - MERGE_TOL {
            return Self::full();
        }
        let a = normalize_angle(start);
        let b = a + length;
        if b <= TAU {
            Self::from_pieces(vec![(a, b)])
        } else {
            Self::from_pieces(vec![(a, TAU), (0.0, b - TAU)])
        }
    }

    /// Arc of total measure `2·half_width` centered on direction `center`.
    pub fn centered(center: f64, half_width: f64) -> Self {
        Self::arc(center - half_width, 2.0 * half_width)
    }

    /// Canonicalizes arbitrary pieces already lying within `[0, 2π]`.
    pub fn from_pieces(mut pieces: Vec<(f64, f64)>) -> Self {
        pieces.retain(|&(a, b)| b > a);
        pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(pieces.len());
        for (a, b) in pieces {
            let a = a.clamp(0.0, TAU);
            let b = b.clamp(0.0, TAU);
            match out.last_mut() {
                Some(last) if a <= last.1 + MERGE_TOL => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        if let Some(last) = out.last_mut() {
            if last.1 >= TAU - MERGE_TOL {
                last.1 = TAU;
            }
        }
        if let Some(first) = out.first_mut() {
            if first.0 <= MERGE_TOL {
                first.0 = 0.0;
            }
        }
        Self { intervals: out }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.intervals == [(0.0, TAU)]
    }

    /// Total angular length.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains(&self, theta: f64) -> bool {
        let t = normalize_angle(theta);
        self.intervals.iter().any(|&(a, b)| a <= t && t < b)
    }

    pub fn complement(&self) -> Self {
        let mut gaps = Vec::with_capacity(self.intervals.len() + 1);
        let mut cursor = 0.0;
        for &(a, b) in &self.intervals {
            if a > cursor {
                gaps.push((cursor, a));
            }
            cursor = b;
        }
        if cursor < TAU {
            gaps.push((cursor, TAU));
        }
        Self::from_pieces(gaps)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut all = self.intervals.clone();
        all.extend_from_slice(&other.intervals);
        Self::from_pieces(all)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (xs, ys) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < xs.len() && j < ys.len() {
            let lo = xs[i].0.max(ys[j].0);
            let hi = xs[i].1.min(ys[j].1);
            if hi > lo {
                out.push((lo, hi));
            }
            if xs[i].1 < ys[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::from_pieces(out)
    }

    pub fn subtract(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    /// Union of many sets in one sort-and-merge pass.
    pub fn union_all<'a>(sets: impl IntoIterator<Item = &'a ArcIntervalSet>) -> Self {
        let all = sets
            .into_iter()
            .flat_map(|s| s.intervals.iter().copied())
            .collect();
        Self::from_pieces(all)
    }
}

/// Part of the unit circle around `center_i` lying inside the closed unit
/// disk around `center_j`.
///
/// Tangent or disjoint disks (`d ≥ 2`) cover nothing; coincident centers
/// cover the whole circle. Otherwise the covered arc is centered on the
/// direction toward `center_j` with half-width `arccos(d/2)`.
pub fn coverage_interval(center_i: Point, center_j: Point) -> ArcIntervalSet {
    let delta = center_j - center_i;
    let d = delta.norm();
    if d >= 2.0 {
        ArcIntervalSet::empty()
    } else if d <= COINCIDENT_TOL {
        ArcIntervalSet::full()
    } else {
        ArcIntervalSet::centered(delta.angle(), (d / 2.0).acos())
    }
}

/// Raw pieces of [`coverage_interval`] appended to `out`, skipping the
/// canonicalization step. Used by the hot loop in visibility.
pub(crate) fn push_coverage(center_i: Point, center_j: Point, out: &mut Vec<(f64, f64)>) -> bool {
    let delta = center_j - center_i;
    let d = delta.norm();
    if d >= 2.0 {
        return false;
    }
    if d <= COINCIDENT_TOL {
        out.push((0.0, TAU));
        return true;
    }
    let half = (d / 2.0).acos();
    let a = normalize_angle(delta.angle() - half);
    let b = a + 2.0 * half;
    if b <= TAU {
        out.push((a, b));
    } else {
        out.push((a, TAU));
        out.push((0.0, b - TAU));
    }
    true
}
