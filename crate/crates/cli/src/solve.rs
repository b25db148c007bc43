//! `mtsp solve`: repeated seeded runs on one instance, with JSON run
//! records, a CSV summary row, and optional SVG renderings.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use sha2::{Digest, Sha256};

use mtsp_core::ga::{run_parallel, run_with_import, CrossoverKind, GaConfig, RunResult};
use mtsp_core::instance::{random_instance, Instance, Metric};
use mtsp_core::split::Chromosome;

use crate::cutoff::CutoffSpec;
use crate::records::{cell_stats, csv_row, InstanceMeta, RunRecord, CSV_HEADER};
use crate::svg::write_svg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CrossoverArg {
    Stx,
    Ox,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    /// Unrounded Euclidean distances.
    Real,
    /// TSPLIB EUC_2D integer rounding.
    Tsplib,
    /// TSPLIB ATT pseudo-Euclidean distances.
    Att,
}

impl MetricArg {
    fn to_metric(self) -> Metric {
        match self {
            MetricArg::Real => Metric::EuclidReal,
            MetricArg::Tsplib => Metric::EuclidRoundedTsplib,
            MetricArg::Att => Metric::PseudoEuclidAtt,
        }
    }
}

#[derive(Args, Clone, Debug)]
pub struct SolveArgs {
    /// TSPLIB instance file.
    #[arg(long, conflicts_with = "random")]
    pub instance: Option<PathBuf>,
    /// Generate a random instance: `NODES,SEED` (node count includes the
    /// depot; coordinates uniform on the unit square).
    #[arg(long)]
    pub random: Option<String>,
    /// Number of salesmen.
    #[arg(long, short = 'm')]
    pub salesmen: usize,
    /// Wall-clock cutoff: `n/5`, `2.4n`, seconds, or `none`.
    #[arg(long, default_value = "n/5")]
    pub cutoff: String,
    /// Independent runs; run `i` uses seed `seed + i`.
    #[arg(long, default_value_t = 1)]
    pub runs: usize,
    /// Base RNG seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory for run records and summaries.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Crossover operator.
    #[arg(long, value_enum, default_value_t = CrossoverArg::Stx)]
    pub crossover: CrossoverArg,
    /// Disable the geometric intersection-removal layer (p_remove = 0).
    #[arg(long)]
    pub no_intersection_removal: bool,
    /// Override the distance metric (default: file/generator choice).
    #[arg(long, value_enum)]
    pub metric: Option<MetricArg>,
    /// Re-root the instance at this node index (0-based).
    #[arg(long)]
    pub depot: Option<usize>,
    /// GA parameter overrides, `key=value` (repeatable).
    #[arg(long = "params", value_name = "K=V")]
    pub params: Vec<String>,
    /// Render the best solution of every run to SVG.
    #[arg(long)]
    pub svg: bool,
    /// Label cities in the SVG output.
    #[arg(long)]
    pub labels: bool,
    /// Worker threads for education; > 1 switches to the batch GA.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Seed the population with a giant tour (one 1-based city per line).
    #[arg(long)]
    pub tour_file: Option<PathBuf>,
}

pub struct LoadedInstance {
    pub instance: Instance,
    pub source: String,
    pub sha256: Option<String>,
}

/// Resolve `--instance`/`--random` plus the metric and depot overrides.
pub fn load_instance(args: &SolveArgs) -> Result<LoadedInstance> {
    let mut loaded = match (&args.instance, &args.random) {
        (Some(path), None) => {
            let bytes =
                std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            let text = String::from_utf8_lossy(&bytes);
            let instance = mtsp_core::instance::parse_tsplib(&text, args.salesmen)?;
            let digest = hex_digest(&bytes);
            LoadedInstance {
                instance,
                source: path.display().to_string(),
                sha256: Some(digest),
            }
        }
        (None, Some(spec)) => {
            let (nodes, seed) = parse_random_spec(spec)?;
            if nodes < 2 {
                bail!("--random needs at least 2 nodes (one customer plus the depot)");
            }
            let instance = random_instance(nodes - 1, args.salesmen, seed)?;
            LoadedInstance {
                instance,
                source: format!("random:{nodes},{seed}"),
                sha256: None,
            }
        }
        (None, None) => bail!("one of --instance or --random is required"),
        (Some(_), Some(_)) => unreachable!("clap forbids combining --instance and --random"),
    };
    if let Some(depot) = args.depot {
        loaded.instance = loaded.instance.with_depot(depot)?;
    }
    if let Some(metric) = args.metric {
        loaded.instance = loaded.instance.with_metric(metric.to_metric())?;
    }
    Ok(loaded)
}

fn parse_random_spec(spec: &str) -> Result<(usize, u64)> {
    let (n, s) = spec
        .split_once(',')
        .with_context(|| format!("--random expects NODES,SEED, got {spec:?}"))?;
    Ok((
        n.trim()
            .parse()
            .with_context(|| format!("bad node count {n:?}"))?,
        s.trim()
            .parse()
            .with_context(|| format!("bad seed {s:?}"))?,
    ))
}

pub fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Build the GA configuration for an instance from the CLI flags.
pub fn build_config(args: &SolveArgs, instance: &Instance) -> Result<GaConfig> {
    let mut cfg = GaConfig {
        crossover: match args.crossover {
            CrossoverArg::Stx => CrossoverKind::Stx,
            CrossoverArg::Ox => CrossoverKind::Ox,
        },
        seed: args.seed,
        ..GaConfig::default()
    };
    for kv in &args.params {
        let Some((k, v)) = kv.split_once('=') else {
            bail!("--params expects key=value, got {kv:?}");
        };
        cfg.set_param(k.trim(), v.trim())?;
    }
    if args.no_intersection_removal {
        cfg.p_remove = 0.0;
    }
    cfg.cutoff_seconds = CutoffSpec::parse(&args.cutoff)?.resolve(instance.num_nodes());
    cfg.validate()?;
    Ok(cfg)
}

fn read_tour_file(path: &Path, n: usize) -> Result<Chromosome> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let seq: Vec<usize> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.parse::<usize>()
                .with_context(|| format!("bad city index {l:?}"))
        })
        .collect::<Result<_>>()?;
    Ok(Chromosome::new(seq, n)?)
}

/// Execute the seeded runs for one (instance, config) pair.
pub fn execute_runs(
    instance: &Instance,
    base_cfg: &GaConfig,
    runs: usize,
    threads: usize,
    import: Option<&Chromosome>,
) -> Result<Vec<RunResult>> {
    let mut results = Vec::with_capacity(runs);
    for run_idx in 0..runs {
        let cfg = GaConfig {
            seed: base_cfg.seed.wrapping_add(run_idx as u64),
            ..base_cfg.clone()
        };
        let result = if threads > 1 {
            run_parallel(instance, &cfg, threads, import)?
        } else {
            run_with_import(instance, &cfg, import)?
        };
        result.best.solution.validate(instance)?;
        results.push(result);
    }
    Ok(results)
}

pub fn cmd_solve(args: &SolveArgs) -> Result<()> {
    if args.runs == 0 {
        bail!("--runs must be at least 1");
    }
    let load_started = std::time::Instant::now();
    let loaded = load_instance(args)?;
    // The solver clock starts after parsing and matrix construction;
    // record the setup cost separately (records stay timing-free).
    log::info!(
        "instance ready in {:.3} s",
        load_started.elapsed().as_secs_f64()
    );
    let instance = &loaded.instance;
    let cfg = build_config(args, instance)?;
    let import = match &args.tour_file {
        Some(path) => Some(read_tour_file(path, instance.n())?),
        None => None,
    };

    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;

    log::info!(
        "solving {} (n = {}, m = {}) with {} runs, cutoff {:?}",
        instance.name(),
        instance.num_nodes(),
        instance.m(),
        args.runs,
        cfg.cutoff_seconds
    );

    let results = execute_runs(instance, &cfg, args.runs, args.threads, import.as_ref())?;

    for (run_idx, result) in results.iter().enumerate() {
        let meta = InstanceMeta::new(instance, loaded.source.clone(), loaded.sha256.clone());
        let run_cfg = GaConfig {
            seed: cfg.seed.wrapping_add(run_idx as u64),
            ..cfg.clone()
        };
        let record = RunRecord::new(meta, run_cfg, run_idx, result);
        let path = args.out.join(format!("run_{run_idx}.json"));
        std::fs::write(&path, record.to_json())?;
        if args.svg {
            let svg_path = args.out.join(format!("run_{run_idx}.svg"));
            write_svg(instance, &result.best.solution, args.labels, &svg_path)?;
        }
    }

    let stats = cell_stats(&results);
    let row = csv_row(
        instance.name(),
        instance.num_nodes(),
        instance.m(),
        args.runs,
        &stats,
    );
    let csv = format!("{CSV_HEADER}\n{row}\n");
    std::fs::write(args.out.join("summary.csv"), &csv)?;
    println!("{CSV_HEADER}");
    println!("{row}");
    Ok(())
}
