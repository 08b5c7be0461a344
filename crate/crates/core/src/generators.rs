//! Point-set families: integer grids, concentric half-rings, tight
//! logarithmic spirals, random dense sets, and the scaling and tiling
//! transforms.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet, StackingOrder};

/// `k × k` integer grid, row by row from the bottom.
pub fn grid(k: usize) -> Result<PointSet> {
    if k == 0 {
        return Err(Error::InvalidParameter("grid side k must be at least 1".into()));
    }
    let points = (0..k)
        .flat_map(|y| (0..k).map(move |x| Point::new(x as f64, y as f64)))
        .collect();
    PointSet::new(points)
}

/// Upper half-rings of radii `k..2k` with `k` equally spaced angles in
/// `[0, π]`, and the canonical order taking points by increasing radius,
/// then increasing angle.
///
/// The minimum distance is 1 (consecutive radii on one ray) and the
/// diameter is below `4k`, so the set is 4-dense. Points are stored in
/// canonical order, so that order is the identity.
pub fn concentric_rings(k: usize) -> Result<(PointSet, StackingOrder)> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "concentric rings need k >= 3, got {k}"
        )));
    }
    let step = PI / (k - 1) as f64;
    let points = (k..2 * k)
        .flat_map(|r| (0..k).map(move |j| Point::from_polar(r as f64, j as f64 * step)))
        .collect();
    Ok((PointSet::new(points)?, StackingOrder::identity(k * k)))
}

/// Default spiral growth rate `10⁻³/√n`.
pub fn default_spiral_rate(n: usize) -> f64 {
    1e-3 / (n as f64).sqrt()
}

/// Points `p_i = (e^{b·i}, 2πi/√n)` in polar coordinates for `i = 1..=n`,
/// stored at index `i − 1`: `√n` rounds of a tight logarithmic spiral cut by
/// `√n` equally spaced rays.
///
/// Returns the point set, the spiral order (index order, outward along the
/// spiral) and the ray order (ray by ray in angular order, outward along
/// each ray).
pub fn log_spiral(n: usize, b: f64) -> Result<(PointSet, StackingOrder, StackingOrder)> {
    let s = (n as f64).sqrt().round() as usize;
    if n == 0 || s * s != n {
        return Err(Error::InvalidParameter(format!(
            "spiral size must be a positive perfect square, got {n}"
        )));
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "spiral rate must be positive, got {b}"
        )));
    }
    let points = (1..=n)
        .map(|i| Point::from_polar((b * i as f64).exp(), TAU * i as f64 / s as f64))
        .collect();
    let ps = PointSet::new(points)?;
    let spiral = StackingOrder::identity(n);
    let rays = (1..=s).map(|j| j % s);
    let ray_sequence = rays
        .flat_map(|j| {
            let first = if j == 0 { s } else { j };
            (first..=n).step_by(s).map(|i| i - 1)
        })
        .collect();
    let ray = StackingOrder::from_sequence(ray_sequence)?;
    Ok((ps, spiral, ray))
}

/// Random `C`-dense set: Poisson-disk dart throwing of points at mutual
/// distance at least 1 inside a disk of radius `C√n/2`.
///
/// The diameter is then at most `C√n` and the minimum distance at least 1.
/// Requires `C ≥ 2`, which leaves the target disk comfortably below
/// jamming density. Deterministic per seed.
pub fn random_dense(n: usize, c: f64, seed: u64) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if !(c >= 2.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "random dense sets need C >= 2, got {c}"
        )));
    }
    let radius = c * (n as f64).sqrt() / 2.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells: std::collections::HashMap<(i64, i64), Vec<usize>> = Default::default();
    let cell = |p: Point| (p.x.floor() as i64, p.y.floor() as i64);
    let mut points: Vec<Point> = Vec::with_capacity(n);
    let max_attempts = 2000 * n + 10_000;
    let mut attempts = 0;
    while points.len() < n {
        if attempts == max_attempts {
            return Err(Error::Placement {
                placed: points.len(),
                wanted: n,
                attempts,
            });
        }
        attempts += 1;
        let r = radius * rng.gen::<f64>().sqrt();
        let candidate = Point::from_polar(r, rng.gen_range(0.0..TAU));
        let (cx, cy) = cell(candidate);
        let clear = (-1..=1).all(|dx| {
            (-1..=1).all(|dy| {
                cells.get(&(cx + dx, cy + dy)).map_or(true, |bucket| {
                    bucket.iter().all(|&j| points[j].distance(candidate) >= 1.0)
                })
            })
        });
        if clear {
            cells.entry((cx, cy)).or_default().push(points.len());
            points.push(candidate);
        }
    }
    PointSet::new(points)
}

/// Similar copy of `ps` scaled by `eps` about the origin.
pub fn scale(ps: &PointSet, eps: f64) -> Result<PointSet> {
    ps.scaled(eps)
}

/// `r` translates of `ps` laid out left to right, with a horizontal gap of
/// `gap` between consecutive bounding boxes. Copy `t` occupies indices
/// `t·n .. (t+1)·n`.
pub fn tile_copies(ps: &PointSet, r: usize, gap: f64) -> Result<PointSet> {
    if r == 0 {
        return Err(Error::InvalidParameter("need at least one copy".into()));
    }
    if !(gap >= 2.0 && gap.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "copies need a gap of at least 2 to keep their disks disjoint, got {gap}"
        )));
    }
    let (lo, hi) = ps.bounding_box();
    let pitch = hi.x - lo.x + gap;
    let points = (0..r)
        .flat_map(|t| {
            let shift = Point::new(t as f64 * pitch, 0.0);
            ps.points().iter().map(move |&p| p + shift)
        })
        .collect();
    PointSet::new(points)
}

/// The order that stacks copy 0 in front, then copy 1, and so on, each copy
/// internally ordered by `f`.
pub fn tile_order(f: &StackingOrder, r: usize) -> StackingOrder {
    let n = f.len();
    let sequence = (0..r)
        .flat_map(|t| f.sequence().iter().map(move |&d| t * n + d))
        .collect();
    StackingOrder::from_sequence(sequence).expect("blockwise order is a permutation")
}

/// Named point-set family with its parameters, sufficient to regenerate the
/// set exactly.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A generated instance with the orders its family comes with.
#[derive(Debug, Clone)]
pub struct Generated {
    pub points: PointSet,
    /// Family-native orders by name, e.g. `canonical`, `spiral`, `ray`.
    pub orders: Vec<(&'static str, StackingOrder)>,
}

impl Generated {
    pub fn order(&self, name: &str) -> Option<&StackingOrder> {
        self.orders.iter().find(|(n, _)| *n == name).map(|(_, f)| f)
    }
}

pub const FAMILIES: [&str; 4] = ["grid", "concentric", "spiral", "random_dense"];

fn side_of(n: Option<usize>, k: Option<usize>, family: &str) -> Result<usize> {
    if let Some(k) = k {
        return Ok(k);
    }
    let n = n.ok_or_else(|| Error::InvalidParameter(format!("{family} needs k or n")))?;
    let k = (n as f64).sqrt().round() as usize;
    if k * k != n {
        return Err(Error::InvalidParameter(format!(
            "{family} needs a perfect-square n, got {n}"
        )));
    }
    Ok(k)
}

impl GeneratorSpec {
    pub fn new(family: &str) -> Self {
        Self {
            family: family.to_string(),
            ..Default::default()
        }
    }

    /// Spec for the family at size `n`, the way scaling experiments address
    /// it: grids, rings and spirals take `n = k²`.
    pub fn sized(family: &str, n: usize, seed: u64) -> Result<Self> {
        let mut spec = Self::new(family);
        match family {
            "grid" | "concentric" => spec.k = Some(side_of(Some(n), None, family)?),
            "spiral" => spec.n = Some(n),
            "random_dense" => {
                spec.n = Some(n);
                spec.c = Some(2.0);
                spec.seed = Some(seed);
            }
            other => return Err(unknown_family(other)),
        }
        Ok(spec)
    }

    pub fn generate(&self) -> Result<Generated> {
        let family = self.family.as_str();
        let mut out = match family {
            "grid" => Generated {
                points: grid(side_of(self.n, self.k, family)?)?,
                orders: vec![],
            },
            "concentric" => {
                let (points, canonical) = concentric_rings(side_of(self.n, self.k, family)?)?;
                Generated {
                    points,
                    orders: vec![("canonical", canonical)],
                }
            }
            "spiral" => {
                let n = self
                    .n
                    .or(self.k.map(|k| k * k))
                    .ok_or_else(|| Error::InvalidParameter("spiral needs n".into()))?;
                let b = self.b.unwrap_or_else(|| default_spiral_rate(n));
                let (points, spiral, ray) = log_spiral(n, b)?;
                Generated {
                    points,
                    orders: vec![("spiral", spiral), ("ray", ray)],
                }
            }
            "random_dense" => {
                let n = self
                    .n
                    .ok_or_else(|| Error::InvalidParameter("random_dense needs n".into()))?;
                Generated {
                    points: random_dense(n, self.c.unwrap_or(2.0), self.seed.unwrap_or(0))?,
                    orders: vec![],
                }
            }
            other => return Err(unknown_family(other)),
        };
        if let Some(r) = self.r {
            out.points = tile_copies(&out.points, r, self.gap.unwrap_or(10.0))?;
            for (_, f) in out.orders.iter_mut() {
                *f = tile_order(f, r);
            }
        }
        if let Some(eps) = self.eps {
            out.points = scale(&out.points, eps)?;
        }
        Ok(out)
    }

    /// Compact one-line label, e.g. `grid:k=10` or `random_dense:n=50,c=2,seed=7`.
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(b) = self.b {
            parts.push(format!("b={b}"));
        }
        if let Some(c) = self.c {
            parts.push(format!("c={c}"));
        }
        if let Some(eps) = self.eps {
            parts.push(format!("eps={eps}"));
        }
        if let Some(r) = self.r {
            parts.push(format!("r={r}"));
        }
        if let Some(gap) = self.gap {
            parts.push(format!("gap={gap}"));
        }
        if let Some(seed) = self.seed {
            parts.push(format!("seed={seed}"));
        }
        format!("{}:{}", self.family, parts.join(","))
    }
}

impl std::str::FromStr for GeneratorSpec {
    type Err = Error;

    /// Parses the output of [`GeneratorSpec::label`].
    fn from_str(s: &str) -> Result<Self> {
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        if !FAMILIES.contains(&family) {
            return Err(unknown_family(family));
        }
        let mut spec = Self::new(family);
        let bad = |part: &str| Error::InvalidParameter(format!("bad generator parameter `{part}`"));
        for part in rest.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| bad(part))?;
            let int = || value.parse::<usize>().map_err(|_| bad(part));
            let real = || value.parse::<f64>().map_err(|_| bad(part));
            match key {
                "k" => spec.k = Some(int()?),
                "n" => spec.n = Some(int()?),
                "b" => spec.b = Some(real()?),
                "c" => spec.c = Some(real()?),
                "eps" => spec.eps = Some(real()?),
                "r" => spec.r = Some(int()?),
                "gap" => spec.gap = Some(real()?),
                "seed" => spec.seed = Some(value.parse().map_err(|_| bad(part))?),
                _ => return Err(bad(part)),
            }
        }
        Ok(spec)
    }
}

fn unknown_family(name: &str) -> Error {
    Error::UnknownName {
        kind: "generator family",
        name: name.to_string(),
        valid: FAMILIES.to_vec(),
    }
}
