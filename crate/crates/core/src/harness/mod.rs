//! Scaling experiments, exponent fits, file formats and SVG rendering.

mod io;
mod svg;

pub use io::{
    load_order, load_points, read_order, read_points, read_records, save_order, save_points,
    write_order, write_points, write_records, Format,
};
pub use svg::{overlay_arcs, render_svg, svg_document};

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{GeneratorSpec, FAMILIES};
use crate::orders::{by_name, Metric, StrategyParams, STRATEGIES};

/// Orders that come with a generator family rather than a strategy.
pub const NATIVE_ORDERS: [&str; 3] = ["canonical", "spiral", "ray"];

/// One evaluated (instance, order) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    /// Generator label; parses back into the [`GeneratorSpec`].
    pub generator: String,
    pub n: usize,
    pub strategy: String,
    pub metric: Metric,
    pub value: f64,
    pub seed: u64,
    /// Seconds spent building and scoring the order. Left out of files
    /// unless timing output is requested, so reruns are byte-identical.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl ExperimentRecord {
    pub fn spec(&self) -> Result<GeneratorSpec> {
        self.generator.parse()
    }
}

/// Least-squares line through `(ln n, ln value)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual_rms: f64,
    pub n_min: f64,
    pub n_max: f64,
    pub points: usize,
}

impl ExponentFit {
    /// Value the fit predicts at size `n`.
    pub fn predict(&self, n: f64) -> f64 {
        (self.intercept + self.slope * n.ln()).exp()
    }
}

fn strategy_names(family: &str) -> Vec<&'static str> {
    let natives: &[&'static str] = match family {
        "concentric" => &["canonical"],
        "spiral" => &["spiral", "ray"],
        _ => &[],
    };
    natives.iter().chain(STRATEGIES.iter()).copied().collect()
}

/// Evaluates `strategy` under `metric` on the `family` instance of every
/// size in `ns` for every seed. See [`run_experiment_with`].
pub fn run_scaling_experiment(
    family: &str,
    ns: &[usize],
    strategy: &str,
    metric: Metric,
    seeds: &[u64],
) -> Result<Vec<ExperimentRecord>> {
    run_experiment_with(family, ns, strategy, metric, seeds, &StrategyParams::default())
}

/// One record per `(n, seed)` pair, in input order (sizes outer, seeds
/// inner). Rows run in parallel. The seed drives both the generator (for
/// randomized families) and the strategy; `params.seed` is ignored.
///
/// `strategy` is a strategy name or one of the family's own orders
/// (`canonical` for rings, `spiral` and `ray` for spirals).
pub fn run_experiment_with(
    family: &str,
    ns: &[usize],
    strategy: &str,
    metric: Metric,
    seeds: &[u64],
    params: &StrategyParams,
) -> Result<Vec<ExperimentRecord>> {
    if !FAMILIES.contains(&family) {
        return Err(Error::UnknownName {
            kind: "generator family",
            name: family.to_string(),
            valid: FAMILIES.to_vec(),
        });
    }
    let valid = strategy_names(family);
    if !valid.contains(&strategy) {
        return Err(Error::UnknownName {
            kind: "strategy",
            name: strategy.to_string(),
            valid,
        });
    }
    let specs: Vec<(GeneratorSpec, usize, u64)> = ns
        .iter()
        .flat_map(|&n| seeds.iter().map(move |&s| (n, s)))
        .map(|(n, seed)| Ok((GeneratorSpec::sized(family, n, seed)?, n, seed)))
        .collect::<Result<_>>()?;

    specs
        .into_par_iter()
        .map(|(spec, n, seed)| {
            let generated = spec.generate()?;
            let start = Instant::now();
            let order = match generated.order(strategy) {
                Some(f) => f.clone(),
                None => {
                    let params = StrategyParams { seed, ..params.clone() };
                    by_name(strategy, &generated.points, &params)?.0
                }
            };
            let value = metric.evaluate(&generated.points, &order)?;
            Ok(ExperimentRecord {
                generator: spec.label(),
                n,
                strategy: strategy.to_string(),
                metric,
                value,
                seed,
                wall_time_s: Some(start.elapsed().as_secs_f64()),
            })
        })
        .collect()
}

/// Log-log exponent fit of the records' values against `n`.
pub fn fit_exponent(records: &[ExperimentRecord]) -> Result<ExponentFit> {
    let data: Vec<(f64, f64)> = records.iter().map(|r| (r.n as f64, r.value)).collect();
    fit_power_law(&data)
}

/// Ordinary least squares on `(ln x, ln y)`; needs three distinct `x` and
/// positive data.
pub fn fit_power_law(data: &[(f64, f64)]) -> Result<ExponentFit> {
    if data.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite())) {
        return Err(Error::DegenerateFit("sizes and values must be positive and finite".into()));
    }
    let distinct: BTreeSet<u64> = data.iter().map(|&(x, _)| x.to_bits()).collect();
    if distinct.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 distinct sizes, got {}",
            distinct.len()
        )));
    }
    let k = data.len() as f64;
    let xs: Vec<f64> = data.iter().map(|d| d.0.ln()).collect();
    let ys: Vec<f64> = data.iter().map(|d| d.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let (n_min, n_max) = data
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(x, _)| (lo.min(x), hi.max(x)));
    Ok(ExponentFit {
        slope,
        intercept,
        residual_rms: (sse / k).sqrt(),
        n_min,
        n_max,
        points: data.len(),
    })
}
