//! Stacking-order strategies and an exhaustive optimum for small instances.
//!
//! Every strategy returns a [`StackingOrder`] together with
//! [`OrderDiagnostics`] recording the parameters it ran with and the counts
//! it observed along the way.

mod brute;
mod cell;
mod greedy;
mod monotone;
mod sector;

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{PointSet, StackingOrder};

pub use brute::{optimal_order_bruteforce, BRUTE_FORCE_LIMIT};
pub use cell::{cell_partition_order, CellOptions, SubStrategy};
pub use greedy::greedy_order;
pub use monotone::{longest_monotone_chain, monotone_order};
pub use sector::{sector_order, SectorOptions, DEFAULT_CSTAR, DEFAULT_RETRIES};

/// What a strategy did: its name, the parameters it used, and auxiliary
/// counts such as the chain length or the number of occupied sectors.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OrderDiagnostics {
    pub strategy: String,
    pub params: BTreeMap<String, f64>,
    pub counts: BTreeMap<String, f64>,
}

impl OrderDiagnostics {
    pub fn new(strategy: &str) -> Self {
        Self {
            strategy: strategy.to_string(),
            ..Default::default()
        }
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn count(mut self, name: &str, value: f64) -> Self {
        self.counts.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.counts
            .get(name)
            .or_else(|| self.params.get(name))
            .copied()
    }
}

/// Which quantity an order is scored by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// Visible perimeter of the arrangement as given.
    Exact,
    /// Limit of the visible perimeter under contraction (sum of external angles).
    Limit,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Exact => "exact",
            Metric::Limit => "limit",
        }
    }

    pub fn evaluate(self, ps: &PointSet, f: &StackingOrder) -> Result<f64> {
        match self {
            Metric::Exact => Ok(crate::visibility::visible_perimeter(ps, f)?.total),
            Metric::Limit => Ok(crate::visibility::limit_visible_perimeter(ps, f)?.0),
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Metric::Exact),
            "limit" => Ok(Metric::Limit),
            other => Err(Error::UnknownName {
                kind: "metric",
                name: other.to_string(),
                valid: vec!["exact", "limit"],
            }),
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Row-by-row order: sort by `y`, then `x`, front to back.
pub fn lexicographic_order(ps: &PointSet) -> StackingOrder {
    let pts = ps.points();
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| {
        pts[i]
            .y
            .total_cmp(&pts[j].y)
            .then(pts[i].x.total_cmp(&pts[j].x))
            .then(i.cmp(&j))
    });
    StackingOrder::from_sequence(idx).expect("sorted indices form a permutation")
}

/// Uniformly random order, deterministic per seed.
pub fn random_order(n: usize, seed: u64) -> StackingOrder {
    let mut seq: Vec<usize> = (0..n).collect();
    seq.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    StackingOrder::from_sequence(seq).expect("shuffle is a permutation")
}

/// Parameters for strategies addressed by name.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyParams {
    pub seed: u64,
    /// Density constant for `sector`; defaults to the set's own `spread/√n`.
    pub c: Option<f64>,
    pub cstar: f64,
    /// Overlap bound recorded by `cell`.
    pub overlap: usize,
    /// Metric optimized by `optimal`.
    pub metric: Metric,
}

impl Default for StrategyParams {
    fn default() -> Self {
        Self {
            seed: 0,
            c: None,
            cstar: DEFAULT_CSTAR,
            overlap: 1,
            metric: Metric::Limit,
        }
    }
}

pub const STRATEGIES: [&str; 8] = [
    "identity",
    "lexicographic",
    "monotone",
    "greedy",
    "sector",
    "cell",
    "optimal",
    "random",
];

/// Runs the strategy called `name`.
pub fn by_name(
    name: &str,
    ps: &PointSet,
    params: &StrategyParams,
) -> Result<(StackingOrder, OrderDiagnostics)> {
    let n = ps.len();
    match name {
        "identity" => Ok((StackingOrder::identity(n), OrderDiagnostics::new(name))),
        "lexicographic" => Ok((lexicographic_order(ps), OrderDiagnostics::new(name))),
        "monotone" => Ok(monotone_order(ps)),
        "greedy" => Ok(greedy_order(ps)),
        "sector" => {
            let c = match params.c {
                Some(c) => c,
                None if n >= 2 => ps.density_constant()?,
                None => 1.0,
            };
            sector_order(
                ps,
                &SectorOptions {
                    c,
                    cstar: params.cstar,
                    seed: params.seed,
                    ..Default::default()
                },
            )
        }
        "cell" => cell_partition_order(
            ps,
            &CellOptions {
                overlap: params.overlap,
                seed: params.seed,
                ..Default::default()
            },
        ),
        "optimal" => {
            let (f, value) = optimal_order_bruteforce(ps, params.metric)?;
            let diag = OrderDiagnostics::new(name)
                .param("metric_limit", (params.metric == Metric::Limit) as u8 as f64)
                .count("value", value);
            Ok((f, diag))
        }
        "random" => Ok((
            random_order(n, params.seed),
            OrderDiagnostics::new(name).param("seed", params.seed as f64),
        )),
        other => Err(Error::UnknownName {
            kind: "strategy",
            name: other.to_string(),
            valid: STRATEGIES.to_vec(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::grid;
    use crate::geometry::Point;

    #[test]
    fn lexicographic_examples() {
        let g = grid(2).unwrap();
        let f = lexicographic_order(&g);
        let pts: Vec<Point> = f.sequence().iter().map(|&i| g.points()[i]).collect();
        assert_eq!(
            pts,
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(0.0, 1.0),
                Point::new(1.0, 1.0)
            ]
        );
        let line = PointSet::new(vec![
            Point::new(3.0, 0.0),
            Point::new(-1.0, 0.0),
            Point::new(1.0, 0.0),
        ])
        .unwrap();
        assert_eq!(lexicographic_order(&line).sequence(), &[1, 2, 0]);
    }

    #[test]
    fn metric_parsing() {
        assert_eq!("exact".parse::<Metric>().unwrap(), Metric::Exact);
        assert_eq!("limit".parse::<Metric>().unwrap(), Metric::Limit);
        assert!("area".parse::<Metric>().is_err());
    }

    #[test]
    fn every_named_strategy_is_a_permutation() {
        let ps = crate::generators::random_dense(7, 2.0, 5).unwrap();
        for name in STRATEGIES {
            let (f, diag) = by_name(name, &ps, &StrategyParams::default()).unwrap();
            assert_eq!(f.len(), 7, "{name}");
            assert_eq!(diag.strategy, name);
            let mut seen = f.sequence().to_vec();
            seen.sort_unstable();
            assert_eq!(seen, (0..7).collect::<Vec<_>>());
        }
        let err = by_name("spiralish", &ps, &StrategyParams::default()).unwrap_err();
        assert!(err.to_string().contains("greedy"));
    }
}
