//! Randomized annular-sector order for dense point sets.
//!
//! After rescaling to minimum distance 1, the set fits in a disk `D` of
//! radius `C√n`. A pole `p` is drawn uniformly on the circle of radius
//! `2C√n` around `D`'s center, and the plane is cut into annuli around `p`
//! of radial width `n^{-1/6}`, each split into sectors of angular length
//! `C*·n^{-1/3}`. Sectors get four colors (two alternating on odd annuli,
//! two on even ones), so same-colored sectors never touch. One point is
//! taken from every occupied sector of the most occupied color; these go in
//! front, nearest annulus first and clockwise within an annulus. Every such
//! point then sits outside the hull of its predecessors with an external
//! angle of order `n^{-1/3}`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{turning_angle, Point, PointSet, StackingOrder};

use super::OrderDiagnostics;

/// Default sector-width constant `C*`.
pub const DEFAULT_CSTAR: f64 = 8.0;

/// Number of random poles tried; the best is kept.
pub const DEFAULT_RETRIES: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct SectorOptions {
    /// Density constant: the set must satisfy `spread ≤ C·√n`.
    pub c: f64,
    pub cstar: f64,
    pub seed: u64,
    pub retries: usize,
}

impl Default for SectorOptions {
    fn default() -> Self {
        Self {
            c: 2.0,
            cstar: DEFAULT_CSTAR,
            seed: 0,
            retries: DEFAULT_RETRIES,
        }
    }
}

/// Outcome of one pole.
struct Attempt {
    pole_angle: f64,
    color: usize,
    occupied_total: usize,
    /// Selected points, front to back.
    selected: Vec<usize>,
    /// Consecutive same-annulus pairs and how many had the earlier point
    /// lower (as seen from the pole).
    same_annulus_pairs: usize,
    same_annulus_below: usize,
}

struct Sector {
    annulus: i64,
    slot: i64,
    representative: usize,
    offset: f64,
}

fn run_pole(points: &[Point], center: Point, radius: f64, pole_angle: f64, width: f64, alpha: f64) -> Attempt {
    let pole = center + Point::from_polar(2.0 * radius, pole_angle);
    let axis = center - pole;
    let mut sectors: BTreeMap<(i64, i64), Sector> = BTreeMap::new();
    for (i, &q) in points.iter().enumerate() {
        let rel = q - pole;
        let annulus = (rel.norm() / width).floor() as i64;
        let theta = turning_angle(axis, rel) + std::f64::consts::PI;
        let slot = (theta / alpha).floor() as i64;
        let offset = (theta - (slot as f64 + 0.5) * alpha).abs();
        sectors
            .entry((annulus, slot))
            .and_modify(|s| {
                if offset < s.offset {
                    s.representative = i;
                    s.offset = offset;
                }
            })
            .or_insert(Sector { annulus, slot, representative: i, offset });
    }
    let color_of = |s: &Sector| {
        let base = if s.annulus.rem_euclid(2) == 1 { 0 } else { 2 };
        base + s.slot.rem_euclid(2) as usize
    };
    let mut per_color = [0usize; 4];
    for s in sectors.values() {
        per_color[color_of(s)] += 1;
    }
    let color = (0..4).max_by_key(|&c| (per_color[c], std::cmp::Reverse(c))).unwrap();
    let mut kept: Vec<&Sector> = sectors.values().filter(|s| color_of(s) == color).collect();
    // Nearest annulus first, clockwise (decreasing angle) within an annulus.
    kept.sort_by_key(|s| (s.annulus, std::cmp::Reverse(s.slot)));

    let mut pairs = 0;
    let mut below = 0;
    for w in kept.windows(2) {
        if w[0].annulus == w[1].annulus {
            pairs += 1;
            let (prev, cur) = (points[w[0].representative], points[w[1].representative]);
            let up = cur - pole;
            if (prev - cur).dot(up) < 0.0 {
                below += 1;
            }
        }
    }
    Attempt {
        pole_angle,
        color,
        occupied_total: sectors.len(),
        selected: kept.iter().map(|s| s.representative).collect(),
        same_annulus_pairs: pairs,
        same_annulus_below: below,
    }
}

/// Annular-sector order; see the module docs. Tries `retries` random poles
/// and keeps the one whose best color has the most occupied sectors (the
/// earliest on ties). Deterministic per seed.
pub fn sector_order(ps: &PointSet, opts: &SectorOptions) -> Result<(StackingOrder, OrderDiagnostics)> {
    let n = ps.len();
    if !(opts.cstar > 0.0) || opts.retries == 0 {
        return Err(Error::InvalidParameter(
            "sector order needs C* > 0 and at least one pole".into(),
        ));
    }
    let nf = n as f64;
    let width = nf.powf(-1.0 / 6.0);
    let alpha = opts.cstar * nf.powf(-1.0 / 3.0);
    let base = OrderDiagnostics::new("sector")
        .param("c", opts.c)
        .param("cstar", opts.cstar)
        .param("seed", opts.seed as f64)
        .param("retries", opts.retries as f64)
        .param("annulus_width", width)
        .param("sector_angle", alpha);
    if n == 1 {
        let diag = base.count("selected", 1.0).count("occupied", 1.0).count("selected_fraction", 1.0);
        return Ok((StackingOrder::identity(1), diag));
    }
    let density = ps.density_constant()?;
    if opts.c < density * (1.0 - 1e-12) {
        return Err(Error::InvalidParameter(format!(
            "set has spread/√n = {density:.6}, above the given C = {}",
            opts.c
        )));
    }

    let unit = ps.normalized();
    let points = unit.points();
    let (lo, hi) = unit.bounding_box();
    let center = (lo + hi) * 0.5;
    let enclosing = points.iter().map(|p| p.distance(center)).fold(0.0, f64::max);
    let radius = (opts.c * nf.sqrt()).max(enclosing);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best: Option<Attempt> = None;
    for _ in 0..opts.retries {
        let angle = rng.gen_range(0.0..std::f64::consts::TAU);
        let attempt = run_pole(points, center, radius, angle, width, alpha);
        if best.as_ref().map_or(true, |b| attempt.selected.len() > b.selected.len()) {
            best = Some(attempt);
        }
    }
    let best = best.expect("at least one pole");

    let mut chosen = vec![false; n];
    for &i in &best.selected {
        chosen[i] = true;
    }
    let mut seq = best.selected.clone();
    seq.extend((0..n).filter(|&i| !chosen[i]));
    let m = best.selected.len() as f64;
    let below_fraction = if best.same_annulus_pairs == 0 {
        1.0
    } else {
        best.same_annulus_below as f64 / best.same_annulus_pairs as f64
    };
    let diag = base
        .count("selected", m)
        .count("selected_fraction", m / nf)
        .count("occupied", best.occupied_total as f64)
        .count("color", (best.color + 1) as f64)
        .count("pole_angle", best.pole_angle)
        .count("same_annulus_pairs", best.same_annulus_pairs as f64)
        .count("same_annulus_below_fraction", below_fraction);
    Ok((StackingOrder::from_sequence(seq)?, diag))
}
