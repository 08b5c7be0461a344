//! Independent checks for the visibility computations.
//!
//! [`sampled_visible_perimeter`] estimates the exact visible perimeter by
//! sampling boundary points and testing them against the disks in front,
//! with no arc arithmetic involved. [`limit_probe`] evaluates the exact
//! perimeter along a shrinking scale schedule so the contracted limit can be
//! approached from above.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::scale;
use crate::geometry::{Point, PointSet, StackingOrder};
use crate::visibility::visible_perimeter;

/// Fewest boundary samples per disk accepted by [`sampled_visible_perimeter`].
pub const MIN_SAMPLES: usize = 1000;

/// Monte-Carlo estimate of the visible perimeter and its standard error.
///
/// Each disk draws `m` uniform boundary angles from its own random stream
/// (derived from `seed` and the disk index) and counts the samples not
/// strictly inside any disk ranked in front of it. A disk with visible
/// fraction `p` contributes `2π·p̂` with variance `(2π)²·p̂(1−p̂)/m`; the
/// returned error combines the disks in quadrature.
pub fn sampled_visible_perimeter(ps: &PointSet, f: &StackingOrder, m: usize, seed: u64) -> Result<(f64, f64)> {
    f.check_len(ps.len())?;
    if m < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "need at least {MIN_SAMPLES} samples per disk, got {m}"
        )));
    }
    let points = ps.points();
    let per_disk: Vec<(f64, f64)> = (0..points.len())
        .into_par_iter()
        .map(|i| {
            let c = points[i];
            let front: Vec<Point> = points
                .iter()
                .enumerate()
                .filter(|&(j, &q)| j != i && f.in_front(j, i) && c.distance(q) < 2.0)
                .map(|(_, &q)| q)
                .collect();
            if front.is_empty() {
                return (TAU, 0.0);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let visible = (0..m)
                .filter(|_| {
                    let s = c + Point::from_polar(1.0, rng.gen_range(0.0..TAU));
                    front.iter().all(|&q| s.distance(q) >= 1.0)
                })
                .count();
            let p = visible as f64 / m as f64;
            (TAU * p, TAU * TAU * p * (1.0 - p) / m as f64)
        })
        .collect();
    let estimate = per_disk.iter().map(|d| d.0).sum();
    let variance: f64 = per_disk.iter().map(|d| d.1).sum();
    Ok((estimate, variance.sqrt()))
}

/// Exact visible perimeter of `ps` scaled by each `ε` in `schedule`.
///
/// Shrinking the centers never uncovers boundary, so for a strictly
/// decreasing schedule the values are non-increasing and approach the
/// contracted limit.
pub fn limit_probe(ps: &PointSet, f: &StackingOrder, schedule: &[f64]) -> Result<Vec<(f64, f64)>> {
    f.check_len(ps.len())?;
    if schedule.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
        return Err(Error::InvalidParameter("scale factors must be positive and finite".into()));
    }
    if schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParameter("scale schedule must be strictly decreasing".into()));
    }
    schedule
        .iter()
        .map(|&eps| Ok((eps, visible_perimeter(&scale(ps, eps)?, f)?.total)))
        .collect()
}
