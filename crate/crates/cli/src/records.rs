//! Machine-readable run records. Records carry no wall-clock fields, so
//! identical (instance, config, seed) inputs yield byte-identical JSON;
//! timing lands in the CSV summaries instead.

use serde::Serialize;

use mtsp_core::ga::{GaConfig, RunResult, Termination};
use mtsp_core::instance::{Instance, Metric};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct InstanceMeta {
    pub name: String,
    /// Total node count including the depot (TSPLIB DIMENSION).
    pub nodes: usize,
    pub customers: usize,
    pub m: usize,
    pub metric: Metric,
    /// File path or a `random:` descriptor.
    pub source: String,
    /// SHA-256 of the instance file, when one was read.
    pub sha256: Option<String>,
}

impl InstanceMeta {
    pub fn new(instance: &Instance, source: String, sha256: Option<String>) -> Self {
        Self {
            name: instance.name().to_string(),
            nodes: instance.num_nodes(),
            customers: instance.n(),
            m: instance.m(),
            metric: instance.metric(),
            source,
            sha256,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct HistoryPoint {
    pub generation: u64,
    pub makespan: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BestRecord {
    pub makespan: f64,
    pub tour_lengths: Vec<f64>,
    /// City indices are 1-based; the depot is implicit.
    pub tours: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResultRecord {
    pub generations: u64,
    pub termination: Termination,
    pub history: Vec<HistoryPoint>,
    pub best: BestRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub instance: InstanceMeta,
    pub config: GaConfig,
    pub run_index: usize,
    pub result: ResultRecord,
}

impl RunRecord {
    pub fn new(
        instance_meta: InstanceMeta,
        config: GaConfig,
        run_index: usize,
        result: &RunResult,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            instance: instance_meta,
            config,
            run_index,
            result: ResultRecord {
                generations: result.generations,
                termination: result.termination,
                history: result
                    .best_makespan_history
                    .iter()
                    .map(|h| HistoryPoint {
                        generation: h.generation,
                        makespan: h.makespan,
                    })
                    .collect(),
                best: BestRecord {
                    makespan: result.best.solution.makespan,
                    tour_lengths: result.best.solution.tour_lengths.clone(),
                    tours: result.best.solution.tours.clone(),
                },
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }
}

/// Summary statistics over the runs of one (instance, m) cell.
#[derive(Clone, Copy, Debug)]
pub struct CellStats {
    pub best: f64,
    pub avg: f64,
    pub std: f64,
    pub avg_time_to_best_s: f64,
}

pub fn cell_stats(results: &[RunResult]) -> CellStats {
    let spans: Vec<f64> = results.iter().map(|r| r.best.minmax).collect();
    let times: Vec<f64> = results.iter().map(|r| r.time_to_best_s()).collect();
    stats_from(&spans, &times)
}

fn stats_from(spans: &[f64], times: &[f64]) -> CellStats {
    let n = spans.len() as f64;
    let best = spans.iter().cloned().fold(f64::INFINITY, f64::min);
    let avg = spans.iter().sum::<f64>() / n;
    let std = if spans.len() < 2 {
        0.0
    } else {
        (spans.iter().map(|s| (s - avg).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    let avg_time = times.iter().sum::<f64>() / n;
    CellStats {
        best,
        avg,
        std,
        avg_time_to_best_s: avg_time,
    }
}

pub const CSV_HEADER: &str = "instance,n,m,runs,best,avg,std,avg_time_to_best_s";

pub fn csv_row(
    instance_name: &str,
    nodes: usize,
    m: usize,
    runs: usize,
    stats: &CellStats,
) -> String {
    format!(
        "{instance_name},{nodes},{m},{runs},{},{},{},{:.3}",
        crate::report::report_round(stats.best),
        crate::report::report_round(stats.avg),
        crate::report::report_round(stats.std),
        stats.avg_time_to_best_s
    )
}
