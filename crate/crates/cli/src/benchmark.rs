//! `mtsp benchmark`: run an instance grid (built-in sets or a custom
//! manifest), emit per-cell CSV rows, a machine-readable JSON summary,
//! and an aligned best/avg table.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Serialize;

use mtsp_core::ga::GaConfig;
use mtsp_core::instance::{random_instance, Instance};

use crate::cutoff::CutoffSpec;
use crate::manifest::{load_manifest, ManifestEntry};
use crate::records::{cell_stats, csv_row, CellStats, CSV_HEADER};
use crate::report::report_round;
use crate::solve::{execute_runs, hex_digest};

#[derive(Args, Clone, Debug)]
pub struct BenchmarkArgs {
    /// Instance set: `1` (generated), `2`, `3`, `4` (TSPLIB files from
    /// --instances-dir), or a path to a manifest file.
    #[arg(long)]
    pub set: String,
    /// Directory holding the TSPLIB files for sets 2-4.
    #[arg(long)]
    pub instances_dir: Option<PathBuf>,
    /// Random instances generated per (n, m) cell of set 1.
    #[arg(long, default_value_t = 5)]
    pub instances_per_cell: usize,
    /// Runs per instance (default: the set's protocol, 10 or 20).
    #[arg(long)]
    pub runs: Option<usize>,
    /// Base RNG seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long, default_value = "bench-out")]
    pub out: PathBuf,
    /// Override every cell's cutoff policy.
    #[arg(long)]
    pub cutoff: Option<String>,
    /// GA parameter overrides, `key=value` (repeatable).
    #[arg(long = "params", value_name = "K=V")]
    pub params: Vec<String>,
    /// Worker threads for education; > 1 switches to the batch GA.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

/// One (instance, m) cell scheduled for execution.
struct Cell {
    label: String,
    instance: Instance,
    cutoff: CutoffSpec,
    runs: usize,
    sha256: Option<String>,
    source: String,
}

#[derive(Serialize)]
struct CellReport {
    instance: String,
    nodes: usize,
    m: usize,
    runs: usize,
    best: f64,
    avg: f64,
    std: f64,
    avg_time_to_best_s: f64,
    source: String,
    sha256: Option<String>,
}

type PresetGrid = &'static [(&'static str, &'static [usize])];

/// Built-in grids: (file stem, m values) plus the set's cutoff and runs.
fn preset(set: &str) -> Option<(PresetGrid, CutoffSpec, usize)> {
    const SET2: &[(&str, &[usize])] = &[
        ("eil51", &[2, 3, 5, 7]),
        ("berlin52", &[2, 3, 5, 7]),
        ("eil76", &[2, 3, 5, 7]),
        ("rat99", &[2, 3, 5, 7]),
    ];
    const SET3: &[(&str, &[usize])] = &[
        ("mtsp51", &[3, 5, 10]),
        ("mtsp100", &[3, 5, 10, 20]),
        ("mtsp150", &[3, 5, 10, 20, 30]),
    ];
    const SET4: &[(&str, &[usize])] = &[
        ("ch150", &[3, 5, 10, 20]),
        ("kroA200", &[3, 5, 10, 20]),
        ("lin318", &[3, 5, 10, 20]),
        ("att532", &[3, 5, 10, 20]),
        ("rat783", &[3, 5, 10, 20]),
        ("cb1173", &[3, 5, 10, 20]),
    ];
    match set {
        "2" => Some((SET2, CutoffSpec::None, 10)),
        "3" => Some((SET3, CutoffSpec::NodesOverFive, 10)),
        "4" => Some((SET4, CutoffSpec::NodesOverFive, 20)),
        _ => None,
    }
}

/// Set I grid: total node counts (depot included) and m values.
const SET1: &[(usize, &[usize])] = &[(50, &[5, 7, 10]), (100, &[5, 10, 15]), (200, &[10, 15, 20])];

fn build_set1_cells(args: &BenchmarkArgs) -> Result<Vec<Cell>> {
    let runs = args.runs.unwrap_or(10);
    let mut cells = Vec::new();
    let mut instance_counter = 0u64;
    for &(nodes, m_values) in SET1 {
        for &m in m_values {
            for i in 0..args.instances_per_cell {
                let inst_seed = args.seed.wrapping_add(1000).wrapping_add(instance_counter);
                instance_counter += 1;
                let instance = random_instance(nodes - 1, m, inst_seed)?;
                cells.push(Cell {
                    label: format!("set1-n{nodes}-m{m}-i{i}"),
                    instance,
                    cutoff: CutoffSpec::None,
                    runs,
                    sha256: None,
                    source: format!("random:{nodes},{inst_seed}"),
                });
            }
        }
    }
    Ok(cells)
}

fn find_instance_file(dir: &Path, stem: &str) -> Option<PathBuf> {
    for candidate in [
        format!("{stem}.tsp"),
        format!("{}.tsp", stem.to_ascii_lowercase()),
        format!("{}.tsp", stem.to_ascii_uppercase()),
    ] {
        let p = dir.join(candidate);
        if p.is_file() {
            return Some(p);
        }
    }
    None
}

fn build_file_cells(
    grid: &[(&str, &[usize])],
    default_cutoff: CutoffSpec,
    default_runs: usize,
    args: &BenchmarkArgs,
    missing: &mut Vec<String>,
) -> Result<Vec<Cell>> {
    let dir = args
        .instances_dir
        .as_ref()
        .context("sets 2-4 need --instances-dir pointing at the TSPLIB files")?;
    let runs = args.runs.unwrap_or(default_runs);
    let mut cells = Vec::new();
    for &(stem, m_values) in grid {
        let Some(path) = find_instance_file(dir, stem) else {
            missing.push(format!("{stem} (looked for {}/{stem}.tsp)", dir.display()));
            continue;
        };
        let bytes = std::fs::read(&path)?;
        let digest = hex_digest(&bytes);
        let text = String::from_utf8_lossy(&bytes);
        let base = mtsp_core::instance::parse_tsplib(&text, m_values[0])?;
        for &m in m_values {
            cells.push(Cell {
                label: format!("{stem}-m{m}"),
                instance: base.with_m(m)?,
                cutoff: default_cutoff,
                runs,
                sha256: Some(digest.clone()),
                source: path.display().to_string(),
            });
        }
    }
    Ok(cells)
}

fn build_manifest_cells(
    path: &Path,
    args: &BenchmarkArgs,
    missing: &mut Vec<String>,
) -> Result<Vec<Cell>> {
    let entries: Vec<ManifestEntry> = load_manifest(path)?;
    let mut cells = Vec::new();
    for entry in entries {
        if !entry.path.is_file() {
            missing.push(format!("{} ({})", entry.name, entry.path.display()));
            continue;
        }
        let bytes = std::fs::read(&entry.path)?;
        let digest = hex_digest(&bytes);
        let text = String::from_utf8_lossy(&bytes);
        let base = mtsp_core::instance::parse_tsplib(&text, entry.m_values[0])?;
        let cutoff = entry.cutoff.unwrap_or(CutoffSpec::None);
        let runs = entry.runs.or(args.runs).unwrap_or(10);
        for &m in &entry.m_values {
            cells.push(Cell {
                label: format!("{}-m{m}", entry.name),
                instance: base.with_m(m)?,
                cutoff,
                runs,
                sha256: Some(digest.clone()),
                source: entry.path.display().to_string(),
            });
        }
    }
    Ok(cells)
}

pub fn cmd_benchmark(args: &BenchmarkArgs) -> Result<()> {
    let mut missing: Vec<String> = Vec::new();
    let cells = match args.set.as_str() {
        "1" => build_set1_cells(args)?,
        s => match preset(s) {
            Some((grid, cutoff, runs)) => build_file_cells(grid, cutoff, runs, args, &mut missing)?,
            None => build_manifest_cells(Path::new(s), args, &mut missing)?,
        },
    };
    if cells.is_empty() && missing.is_empty() {
        bail!("benchmark set {:?} produced no cells", args.set);
    }

    std::fs::create_dir_all(&args.out)?;

    let mut base_cfg = GaConfig::default();
    for kv in &args.params {
        let Some((k, v)) = kv.split_once('=') else {
            bail!("--params expects key=value, got {kv:?}");
        };
        base_cfg.set_param(k.trim(), v.trim())?;
    }
    let cutoff_override = args.cutoff.as_deref().map(CutoffSpec::parse).transpose()?;

    let mut rows = Vec::with_capacity(cells.len());
    let mut reports = Vec::with_capacity(cells.len());
    let mut run_seed = args.seed;
    for cell in &cells {
        let cutoff = cutoff_override.unwrap_or(cell.cutoff);
        let cfg = GaConfig {
            seed: run_seed,
            cutoff_seconds: cutoff.resolve(cell.instance.num_nodes()),
            ..base_cfg.clone()
        };
        run_seed += cell.runs as u64;
        log::info!(
            "cell {}: n = {}, m = {}, {} runs",
            cell.label,
            cell.instance.num_nodes(),
            cell.instance.m(),
            cell.runs
        );
        let results = execute_runs(&cell.instance, &cfg, cell.runs, args.threads, None)?;
        let stats = cell_stats(&results);
        rows.push(csv_row(
            &cell.label,
            cell.instance.num_nodes(),
            cell.instance.m(),
            cell.runs,
            &stats,
        ));
        reports.push(CellReport {
            instance: cell.label.clone(),
            nodes: cell.instance.num_nodes(),
            m: cell.instance.m(),
            runs: cell.runs,
            best: stats.best,
            avg: stats.avg,
            std: stats.std,
            avg_time_to_best_s: stats.avg_time_to_best_s,
            source: cell.source.clone(),
            sha256: cell.sha256.clone(),
        });
        print_progress(&cell.label, &stats);
    }

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for row in &rows {
        csv.push_str(row);
        csv.push('\n');
    }
    std::fs::write(args.out.join("results.csv"), &csv)?;
    let json = serde_json::to_string_pretty(&reports)?;
    std::fs::write(args.out.join("results.json"), format!("{json}\n"))?;

    println!();
    print_table(&reports);

    if !missing.is_empty() {
        eprintln!("missing instance files (skipped):");
        for m in &missing {
            eprintln!("  {m}");
        }
        bail!("{} instance file(s) missing", missing.len());
    }
    Ok(())
}

fn print_progress(label: &str, stats: &CellStats) {
    println!(
        "{label}: best {} avg {} std {}",
        report_round(stats.best),
        report_round(stats.avg),
        report_round(stats.std)
    );
}

fn print_table(reports: &[CellReport]) {
    println!(
        "{:<22} {:>6} {:>4} {:>5} {:>12} {:>12} {:>9} {:>10}",
        "instance", "n", "m", "runs", "best", "avg", "std", "time_s"
    );
    for r in reports {
        println!(
            "{:<22} {:>6} {:>4} {:>5} {:>12} {:>12} {:>9} {:>10.3}",
            r.instance,
            r.nodes,
            r.m,
            r.runs,
            report_round(r.best),
            report_round(r.avg),
            report_round(r.std),
            r.avg_time_to_best_s
        );
    }
}
