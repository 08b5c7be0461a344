//! Cell-partition order for arrangements with bounded overlap.
//!
//! The plane is cut into square cells of side 4 with a random offset. A disk
//! whose center is at distance at least 1 from every wall of its cell lies
//! entirely inside that cell, so disks of different cells never overlap.
//! Each cell's interior disks are ordered on their own and the cells are
//! stacked one block after another in front; all remaining disks go behind.
//! The visible perimeter is then at least the sum of the per-cell values.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet, StackingOrder};

use super::{greedy_order, optimal_order_bruteforce, Metric, OrderDiagnostics, BRUTE_FORCE_LIMIT};

pub const CELL_SIDE: f64 = 4.0;

/// How each cell's disks are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubStrategy {
    /// Exhaustive search on the exact perimeter when a cell holds at most
    /// [`BRUTE_FORCE_LIMIT`] disks, greedy otherwise.
    Auto,
    BruteForce,
    Greedy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellOptions {
    /// Maximum number of disks sharing a point; recorded, not checked.
    pub overlap: usize,
    pub sub: SubStrategy,
    pub seed: u64,
    /// Random offsets tried; the one with the most interior disks is kept.
    pub attempts: usize,
}

impl Default for CellOptions {
    fn default() -> Self {
        Self {
            overlap: 1,
            sub: SubStrategy::Auto,
            seed: 0,
            attempts: 64,
        }
    }
}

type CellMap = BTreeMap<(i64, i64), Vec<usize>>;

fn interior_cells(points: &[Point], offset: Point) -> CellMap {
    let mut cells = CellMap::new();
    for (i, &p) in points.iter().enumerate() {
        let local = p - offset;
        let cx = (local.x / CELL_SIDE).floor();
        let cy = (local.y / CELL_SIDE).floor();
        let fx = local.x - cx * CELL_SIDE;
        let fy = local.y - cy * CELL_SIDE;
        let inside = |f: f64| (1.0..=CELL_SIDE - 1.0).contains(&f);
        if inside(fx) && inside(fy) {
            cells.entry((cx as i64, cy as i64)).or_default().push(i);
        }
    }
    cells
}

fn order_cell(ps: &PointSet, members: &[usize], sub: SubStrategy) -> Result<Vec<usize>> {
    let local = PointSet::new(members.iter().map(|&i| ps.points()[i]).collect())?;
    let brute = match sub {
        SubStrategy::Auto => members.len() <= BRUTE_FORCE_LIMIT,
        SubStrategy::BruteForce => true,
        SubStrategy::Greedy => false,
    };
    let f = if brute {
        optimal_order_bruteforce(&local, Metric::Exact)?.0
    } else {
        greedy_order(&local).0
    };
    Ok(f.sequence().iter().map(|&k| members[k]).collect())
}

/// Cell-partition order; see the module docs. Offsets are drawn uniformly
/// from `[0, 4)²`; each disk is interior with probability 1/4, and the
/// offset with the most interior disks among `attempts` draws is used.
pub fn cell_partition_order(ps: &PointSet, opts: &CellOptions) -> Result<(StackingOrder, OrderDiagnostics)> {
    if opts.attempts == 0 {
        return Err(Error::InvalidParameter("need at least one offset attempt".into()));
    }
    let n = ps.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best: Option<(Point, CellMap, usize)> = None;
    let mut tried = 0;
    for _ in 0..opts.attempts {
        tried += 1;
        let offset = Point::new(rng.gen_range(0.0..CELL_SIDE), rng.gen_range(0.0..CELL_SIDE));
        let cells = interior_cells(ps.points(), offset);
        let count: usize = cells.values().map(Vec::len).sum();
        if best.as_ref().map_or(true, |b| count > b.2) {
            best = Some((offset, cells, count));
        }
        if count == n {
            break;
        }
    }
    let (offset, cells, interior) = best.expect("at least one attempt");

    let mut seq = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for members in cells.values() {
        for i in order_cell(ps, members, opts.sub)? {
            placed[i] = true;
            seq.push(i);
        }
    }
    seq.extend((0..n).filter(|&i| !placed[i]));
    let largest = cells.values().map(Vec::len).max().unwrap_or(0);
    let diag = OrderDiagnostics::new("cell")
        .param("overlap", opts.overlap as f64)
        .param("seed", opts.seed as f64)
        .param("offset_x", offset.x)
        .param("offset_y", offset.y)
        .count("interior", interior as f64)
        .count("cells", cells.len() as f64)
        .count("largest_cell", largest as f64)
        .count("attempts", tried as f64);
    Ok((StackingOrder::from_sequence(seq)?, diag))
}
