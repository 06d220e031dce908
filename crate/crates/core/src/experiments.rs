//! Parameter sweeps over Barabási–Albert seeds and their densified images.
//!
//! A sweep enumerates cells `(n, m, replicate)` with `n` outermost. Each cell
//! generates its seed graph from `derive_seed(master_seed, cell_index)`, so a
//! row can be reproduced on its own with the seed it records. Cells run on a
//! pool of worker threads; rows are emitted in cell order regardless of which
//! worker finishes first.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::generators::{barabasi_albert, derive_seed, RNG_FAMILY};
use crate::graph::{degree_histogram, Graph};
use crate::metrics::{self, assortativity, avg_local_clustering, fit_power_law};
use crate::report::SCHEMA_VERSION;
use crate::transforms::densify_with_budget;

/// Environment variable capping the number of sweep worker threads.
pub const THREADS_ENV: &str = "NETDENSE_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    /// Degree correlation of seed and densified graph.
    Assortativity,
    /// Exponents, largest degree, density, clustering and diameter.
    Scaling,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepConfig {
    pub kind: SweepKind,
    pub n_list: Vec<usize>,
    pub m_list: Vec<usize>,
    pub seeds: usize,
    pub master_seed: u64,
    pub edge_budget: u128,
    pub exact_diameter_limit: usize,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_list.is_empty() {
            return input("empty n-list");
        }
        if self.m_list.is_empty() {
            return input("empty m-list");
        }
        if self.seeds == 0 {
            return input("seeds must be at least 1");
        }
        let max_m = *self.m_list.iter().max().unwrap();
        if self.m_list.contains(&0) {
            return input("m must be at least 1");
        }
        if let Some(n) = self.n_list.iter().find(|&&n| n < max_m + 1) {
            return input(format!("n = {n} is below max m + 1 = {}", max_m + 1));
        }
        Ok(())
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &n in &self.n_list {
            for &m in &self.m_list {
                for replicate in 0..self.seeds {
                    let index = cells.len();
                    cells.push(Cell {
                        index,
                        n,
                        m,
                        replicate,
                        seed: derive_seed(self.master_seed, index as u64),
                    });
                }
            }
        }
        cells
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Cell {
    pub index: usize,
    pub n: usize,
    pub m: usize,
    pub replicate: usize,
    pub seed: u64,
}

/// One CSV/JSON row. Column order is the field order and is part of the
/// output format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub model: String,
    pub n: usize,
    pub m: usize,
    pub replicate: usize,
    pub seed: u64,
    pub r_seed: Option<f64>,
    pub r_densified: Option<f64>,
    pub gamma_seed: Option<f64>,
    pub gamma_densified: Option<f64>,
    pub mean_degree_seed: f64,
    pub mean_degree_densified: f64,
    pub kmax_seed: usize,
    pub clustering_densified: Option<f64>,
    pub diameter_densified: Option<u32>,
    pub diameter_exact: Option<bool>,
    /// Semicolon-separated expectation failures; empty when none.
    pub violations: String,
}

pub fn run_cell(config: &SweepConfig, cell: &Cell) -> SweepRow {
    let mut row = SweepRow {
        model: "ba".into(),
        n: cell.n,
        m: cell.m,
        replicate: cell.replicate,
        seed: cell.seed,
        r_seed: None,
        r_densified: None,
        gamma_seed: None,
        gamma_densified: None,
        mean_degree_seed: 0.0,
        mean_degree_densified: 0.0,
        kmax_seed: 0,
        clustering_densified: None,
        diameter_densified: None,
        diameter_exact: None,
        violations: String::new(),
    };
    if let Err(e) = fill_row(config, cell, &mut row) {
        push_violation(&mut row.violations, &format!("error: {e}"));
    }
    row
}

fn push_violation(v: &mut String, msg: &str) {
    if !v.is_empty() {
        v.push(';');
    }
    v.push_str(msg);
}

fn fill_row(config: &SweepConfig, cell: &Cell, row: &mut SweepRow) -> Result<()> {
    let seed_graph = barabasi_albert(cell.n, cell.m, cell.seed)?;
    row.mean_degree_seed = seed_graph.average_degree();
    row.kmax_seed = seed_graph.max_degree();
    row.r_seed = assortativity(&seed_graph)?.r;

    let dense: Graph = densify_with_budget(&seed_graph, config.edge_budget)?.graph;
    row.mean_degree_densified = dense.average_degree();
    row.r_densified = assortativity(&dense)?.r;

    if config.kind == SweepKind::Scaling {
        let fit_seed = fit_power_law(&degree_histogram(&seed_graph), None);
        let fit_dense = fit_power_law(&degree_histogram(&dense), None);
        row.gamma_seed = fit_seed.map(|f| f.gamma_hat);
        row.gamma_densified = fit_dense.map(|f| f.gamma_hat);
        row.clustering_densified = Some(avg_local_clustering(&dense).avg_local_c);
        let d = metrics::diameter(&dense, config.exact_diameter_limit, cell.seed)?;
        row.diameter_densified = Some(d.best());
        row.diameter_exact = Some(d.exact);
        if let (Some(a), Some(b)) = (row.gamma_seed, row.gamma_densified) {
            if !(0.6..=1.4).contains(&(a - b)) {
                push_violation(&mut row.violations, "exponent shift outside [0.6, 1.4]");
            }
        }
    }

    match row.r_seed {
        Some(r) if r < 0.0 => {}
        Some(_) => push_violation(&mut row.violations, "r_seed >= 0"),
        None => push_violation(&mut row.violations, "r_seed undefined"),
    }
    match row.r_densified {
        Some(r) if r > 0.0 => {}
        Some(_) => push_violation(&mut row.violations, "r_densified <= 0"),
        None => push_violation(&mut row.violations, "r_densified undefined"),
    }
    Ok(())
}

/// Worker count: `NETDENSE_THREADS` if set and positive, else the hardware
/// parallelism.
pub fn worker_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs every cell and hands rows to `sink` in cell order as soon as all
/// earlier rows are available.
pub fn run_sweep<F>(config: &SweepConfig, threads: usize, mut sink: F) -> Result<Vec<SweepRow>>
where
    F: FnMut(&SweepRow) -> Result<()>,
{
    config.validate()?;
    let cells = config.cells();
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, SweepRow)>();
    let threads = threads.clamp(1, cells.len().max(1));

    std::thread::scope(|scope| {
        for _ in 0..threads {
            let tx = tx.clone();
            let (cells, next) = (&cells, &next);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(cell) = cells.get(i) else { break };
                if tx.send((i, run_cell(config, cell))).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut rows = Vec::with_capacity(cells.len());
        for (i, row) in rx {
            pending.insert(i, row);
            while let Some(row) = pending.remove(&rows.len()) {
                sink(&row)?;
                rows.push(row);
            }
        }
        Ok(rows)
    })
}

/// Writes each row to `w` as CSV and flushes, so an interrupted sweep keeps
/// every completed row.
pub fn csv_sink<W: Write>(w: W) -> impl FnMut(&SweepRow) -> Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    move |row| {
        writer.serialize(row)?;
        writer.flush()?;
        Ok(())
    }
}

pub fn read_rows_csv<R: std::io::Read>(r: R) -> Result<Vec<SweepRow>> {
    csv::Reader::from_reader(r)
        .deserialize()
        .map(|row| row.map_err(Into::into))
        .collect()
}

/// Mean of `field` over replicates, keyed by `(m, n)`.
pub fn seed_averages(
    rows: &[SweepRow],
    field: impl Fn(&SweepRow) -> Option<f64>,
) -> BTreeMap<(usize, usize), f64> {
    let mut acc: BTreeMap<(usize, usize), (f64, usize)> = BTreeMap::new();
    for row in rows {
        if let Some(x) = field(row) {
            let e = acc.entry((row.m, row.n)).or_insert((0.0, 0));
            e.0 += x;
            e.1 += 1;
        }
    }
    acc.into_iter().map(|(k, (s, c))| (k, s / c as f64)).collect()
}

/// Least-squares slope of `y` on `x`.
pub fn regression_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub rows_with_violations: usize,
    /// `(m, n_prev, n_next)` where the seed-averaged `r'` decreased.
    pub r_densified_trend_breaks: Vec<(usize, usize, usize)>,
    /// `(m, n_prev, n_next)` where the seed-averaged `⟨k'⟩` did not increase.
    pub density_trend_breaks: Vec<(usize, usize, usize)>,
    /// Slope of `ln k_max` on `ln n` over all rows.
    pub kmax_slope: Option<f64>,
    /// Mean of `γ̂_seed − γ̂_densified` where both fits exist.
    pub mean_exponent_shift: Option<f64>,
}

fn trend_breaks(avg: &BTreeMap<(usize, usize), f64>, ok: impl Fn(f64, f64) -> bool) -> Vec<(usize, usize, usize)> {
    let mut breaks = Vec::new();
    let keys: Vec<&(usize, usize)> = avg.keys().collect();
    for w in keys.windows(2) {
        let (&(m0, n0), &(m1, n1)) = (w[0], w[1]);
        if m0 == m1 && !ok(avg[w[0]], avg[w[1]]) {
            breaks.push((m0, n0, n1));
        }
    }
    breaks
}

pub fn summarize(rows: &[SweepRow]) -> SweepSummary {
    let r_dense = seed_averages(rows, |r| r.r_densified);
    let density = seed_averages(rows, |r| Some(r.mean_degree_densified));
    let kmax_points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.kmax_seed > 0)
        .map(|r| ((r.n as f64).ln(), (r.kmax_seed as f64).ln()))
        .collect();
    let shifts: Vec<f64> = rows
        .iter()
        .filter_map(|r| Some(r.gamma_seed? - r.gamma_densified?))
        .collect();
    SweepSummary {
        rows: rows.len(),
        rows_with_violations: rows.iter().filter(|r| !r.violations.is_empty()).count(),
        r_densified_trend_breaks: trend_breaks(&r_dense, |a, b| b >= a),
        density_trend_breaks: trend_breaks(&density, |a, b| b > a),
        kmax_slope: regression_slope(&kmax_points),
        mean_exponent_shift: (!shifts.is_empty())
            .then(|| shifts.iter().sum::<f64>() / shifts.len() as f64),
    }
}

/// JSON mirror of a sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub rng_family: String,
    pub config: SweepConfig,
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

impl SweepReport {
    pub fn new(config: SweepConfig, rows: Vec<SweepRow>) -> Self {
        let summary = summarize(&rows);
        SweepReport {
            schema_version: SCHEMA_VERSION,
            rng_family: RNG_FAMILY.into(),
            config,
            rows,
            summary,
        }
    }
}
