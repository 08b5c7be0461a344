use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use stackvis::generators::GeneratorSpec;
use stackvis::harness::{self, Format};
use stackvis::oracle::limit_probe;
use stackvis::orders::{by_name, Metric, StrategyParams, DEFAULT_CSTAR};
use stackvis::visibility::{limit_visible_perimeter, perimeter_gap_trace, visible_perimeter};
use stackvis::{PointSet, StackingOrder};

/// Visible perimeter of stacked unit disks.
#[derive(Parser)]
#[command(name = "stackvis", version)]
struct Cli {
    /// Seed for randomized generators and strategies.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tabular output format: csv or json (one object per line).
    #[arg(long, global = true, default_value = "csv")]
    format: String,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point set (family parameters as in `grid:k=10`).
    Gen(GenArgs),
    /// Compute a stacking order for a point set.
    Order(OrderArgs),
    /// Exact visible perimeter.
    Vis(VisArgs),
    /// Visible perimeter in the limit of contracted centers.
    Limit(LimitArgs),
    /// Exact visible perimeter along a shrinking scale schedule.
    Probe(ProbeArgs),
    /// Run a scaling experiment.
    Experiment(ExperimentArgs),
    /// Fit a power law to experiment records.
    Fit(FitArgs),
    /// Draw the arrangement as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Generator family: grid, concentric, spiral or random_dense.
    family: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Spiral growth rate.
    #[arg(long)]
    b: Option<f64>,
    /// Density constant for random_dense.
    #[arg(long)]
    c: Option<f64>,
    /// Scale factor applied last.
    #[arg(long)]
    eps: Option<f64>,
    /// Number of side-by-side copies.
    #[arg(long)]
    r: Option<usize>,
    /// Gap between copies.
    #[arg(long)]
    gap: Option<f64>,
    /// Also write the family's own order with this name (canonical, spiral, ray).
    #[arg(long, requires = "order_out")]
    native: Option<String>,
    #[arg(long)]
    order_out: Option<PathBuf>,
}

#[derive(Args)]
struct StrategyArgs {
    /// Density constant for `sector`; the set's own by default.
    #[arg(long)]
    c: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_CSTAR)]
    cstar: f64,
    /// Overlap bound recorded by `cell`.
    #[arg(long, default_value_t = 1)]
    overlap: usize,
    /// Metric optimized by `optimal`.
    #[arg(long, default_value = "limit")]
    objective: String,
}

impl StrategyArgs {
    fn params(&self, seed: u64) -> Result<StrategyParams> {
        Ok(StrategyParams {
            seed,
            c: self.c,
            cstar: self.cstar,
            overlap: self.overlap,
            metric: self.objective.parse()?,
        })
    }
}

#[derive(Args)]
struct OrderArgs {
    /// Point-set CSV.
    points: PathBuf,
    /// identity, lexicographic, monotone, greedy, sector, cell, optimal or random.
    #[arg(long, short)]
    strategy: String,
    #[command(flatten)]
    strategy_args: StrategyArgs,
    /// Write the strategy's diagnostics here as JSON.
    #[arg(long)]
    diagnostics: Option<PathBuf>,
}

#[derive(Args)]
struct VisArgs {
    points: PathBuf,
    /// Order CSV; identity when omitted.
    order: Option<PathBuf>,
    /// One row per disk instead of the total.
    #[arg(long)]
    per_disk: bool,
}

#[derive(Args)]
struct LimitArgs {
    points: PathBuf,
    order: Option<PathBuf>,
    /// One row per insertion step.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct ProbeArgs {
    points: PathBuf,
    order: Option<PathBuf>,
    /// Strictly decreasing scale factors.
    #[arg(long, value_delimiter = ',', default_values_t = [1e-1, 1e-2, 1e-3, 1e-4])]
    eps: Vec<f64>,
}

#[derive(Args)]
struct ExperimentArgs {
    family: String,
    /// Instance sizes.
    #[arg(long, short, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Strategy name or a family order (canonical, spiral, ray).
    #[arg(long, short)]
    strategy: String,
    /// exact or limit.
    #[arg(long, short, default_value = "limit")]
    metric: String,
    /// Seeds; the global seed when omitted.
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    #[command(flatten)]
    strategy_args: StrategyArgs,
    /// Include wall-clock times, which differ between runs.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct FitArgs {
    /// Experiment records; read as JSON lines when the format is json.
    input: PathBuf,
}

#[derive(Args)]
struct RenderArgs {
    points: PathBuf,
    order: Option<PathBuf>,
    /// Trace the computed visible arcs in red.
    #[arg(long)]
    overlay: bool,
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load(points: &Path, order: Option<&Path>) -> Result<(PointSet, StackingOrder)> {
    let ps = harness::load_points(points).with_context(|| format!("reading {}", points.display()))?;
    let f = match order {
        Some(path) => harness::load_order(path).with_context(|| format!("reading {}", path.display()))?,
        None => StackingOrder::identity(ps.len()),
    };
    if f.len() != ps.len() {
        bail!("order has {} disks but the point set has {}", f.len(), ps.len());
    }
    Ok((ps, f))
}

/// Writes a numeric table as CSV or as JSON lines.
fn table(out: &mut dyn Write, format: Format, header: &[&str], rows: &[Vec<serde_json::Value>]) -> Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{}", header.join(","))?;
            for row in rows {
                let cells: Vec<String> = row
                    .iter()
                    .map(|v| match v {
                        serde_json::Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        Format::Json => {
            for row in rows {
                let obj: serde_json::Map<String, serde_json::Value> =
                    header.iter().map(|h| h.to_string()).zip(row.iter().cloned()).collect();
                writeln!(out, "{}", serde_json::Value::Object(obj))?;
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let format = if cli.json { Format::Json } else { cli.format.parse()? };
    let out = cli.out.as_deref();
    match cli.command {
        Command::Gen(a) => {
            let spec = GeneratorSpec {
                family: a.family,
                k: a.k,
                n: a.n,
                b: a.b,
                c: a.c,
                eps: a.eps,
                r: a.r,
                gap: a.gap,
                seed: Some(cli.seed),
            };
            let generated = spec.generate()?;
            if let (Some(name), Some(path)) = (a.native, a.order_out) {
                let f = generated.order(&name).with_context(|| {
                    let names: Vec<&str> = generated.orders.iter().map(|(n, _)| *n).collect();
                    format!("{} has no order `{name}`; available: {}", spec.family, names.join(", "))
                })?;
                harness::save_order(f, &path)?;
            }
            harness::write_points(&generated.points, sink(out)?)?;
        }
        Command::Order(a) => {
            let ps = harness::load_points(&a.points).with_context(|| format!("reading {}", a.points.display()))?;
            let (f, diag) = by_name(&a.strategy, &ps, &a.strategy_args.params(cli.seed)?)?;
            if let Some(path) = a.diagnostics {
                std::fs::write(&path, serde_json::to_string_pretty(&diag)? + "\n")?;
            }
            harness::write_order(&f, sink(out)?)?;
        }
        Command::Vis(a) => {
            let (ps, f) = load(&a.points, a.order.as_deref())?;
            let report = visible_perimeter(&ps, &f)?;
            let mut w = sink(out)?;
            if a.per_disk {
                let rows: Vec<_> = report.per_disk.iter().map(|&(i, v)| vec![json!(i), json!(v)]).collect();
                table(&mut w, format, &["disk", "visible"], &rows)?;
            } else {
                table(&mut w, format, &["n", "total"], &[vec![json!(ps.len()), json!(report.total)]])?;
            }
            w.flush()?;
        }
        Command::Limit(a) => {
            let (ps, f) = load(&a.points, a.order.as_deref())?;
            let (total, trace) = limit_visible_perimeter(&ps, &f)?;
            let mut w = sink(out)?;
            if a.trace {
                let gaps = perimeter_gap_trace(&trace, ps.min_dist().unwrap_or(1.0));
                let rows: Vec<_> = (0..trace.taus.len())
                    .map(|k| {
                        let bound = if k == 0 { 0.0 } else { gaps[k - 1].bound };
                        let gap = if k == 0 { 0.0 } else { gaps[k - 1].gap };
                        vec![
                            json!(k + 1),
                            json!(trace.disks[k]),
                            json!(format!("{:?}", trace.locations[k]).to_lowercase()),
                            json!(trace.taus[k]),
                            json!(trace.per[k]),
                            json!(gap),
                            json!(bound),
                        ]
                    })
                    .collect();
                table(&mut w, format, &["step", "disk", "location", "tau", "per", "gap", "bound"], &rows)?;
            } else {
                table(&mut w, format, &["n", "limit"], &[vec![json!(ps.len()), json!(total)]])?;
            }
            w.flush()?;
        }
        Command::Probe(a) => {
            let (ps, f) = load(&a.points, a.order.as_deref())?;
            let rows: Vec<_> = limit_probe(&ps, &f, &a.eps)?
                .into_iter()
                .map(|(e, v)| vec![json!(e), json!(v)])
                .collect();
            let mut w = sink(out)?;
            table(&mut w, format, &["eps", "visible"], &rows)?;
            w.flush()?;
        }
        Command::Experiment(a) => {
            let metric: Metric = a.metric.parse()?;
            let seeds = if a.seeds.is_empty() { vec![cli.seed] } else { a.seeds };
            let params = a.strategy_args.params(cli.seed)?;
            let records = harness::run_experiment_with(&a.family, &a.n, &a.strategy, metric, &seeds, &params)?;
            harness::write_records(&records, format, a.timing, sink(out)?)?;
        }
        Command::Fit(a) => {
            let file = File::open(&a.input).with_context(|| format!("cannot open {}", a.input.display()))?;
            let records = harness::read_records(BufReader::new(file), format)?;
            let fit = harness::fit_exponent(&records)?;
            let mut w = sink(out)?;
            table(
                &mut w,
                format,
                &["slope", "intercept", "residual_rms", "n_min", "n_max", "points"],
                &[vec![
                    json!(fit.slope),
                    json!(fit.intercept),
                    json!(fit.residual_rms),
                    json!(fit.n_min),
                    json!(fit.n_max),
                    json!(fit.points),
                ]],
            )?;
            w.flush()?;
        }
        Command::Render(a) => {
            let (ps, f) = load(&a.points, a.order.as_deref())?;
            let svg = harness::svg_document(&ps, &f, a.overlay)?;
            let mut w = sink(out)?;
            w.write_all(svg.as_bytes())?;
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("stackvis: {e:#}");
            ExitCode::FAILURE
        }
    }
}
