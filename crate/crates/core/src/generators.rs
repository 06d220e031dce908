//! Seed graph generators.
//!
//! Every generator draws from a single ChaCha8 stream seeded with
//! `ChaCha8Rng::seed_from_u64(seed)`, so a `(model, parameters, seed)` triple
//! fixes the output edge set on every platform. Index sampling goes through
//! `u64` ranges to stay independent of pointer width.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::graph::{build_from_edges, Graph, VertexId};

/// Name of the RNG family, written into report headers.
pub const RNG_FAMILY: &str = "ChaCha8 (rand_chacha 0.9), seed_from_u64; per-cell seeds via SplitMix64";

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 step, used to derive independent per-cell seeds from a master seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedGraph {
    Cycle,
    Path,
    Star,
    Complete,
}

impl FromStr for NamedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycle" => Ok(NamedGraph::Cycle),
            "path" => Ok(NamedGraph::Path),
            "star" => Ok(NamedGraph::Star),
            "complete" => Ok(NamedGraph::Complete),
            other => input(format!(
                "unknown graph name '{other}' (expected cycle, path, star or complete)"
            )),
        }
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NamedGraph::Cycle => "cycle",
            NamedGraph::Path => "path",
            NamedGraph::Star => "star",
            NamedGraph::Complete => "complete",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Model {
    Ba { n: usize, m: usize },
    ConfigPowerLaw { n: usize, gamma: f64, kmin: usize },
    Copying { n: usize, p: f64 },
    Named { name: NamedGraph, size: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub model: Model,
    pub seed: u64,
}

/// Generator output. `dropped_stubs` and `target_degrees` are only populated by
/// the configuration model.
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub target_degrees: Option<Vec<usize>>,
    pub dropped_stubs: usize,
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        match self.model {
            Model::Ba { n, m } => check_ba(n, m),
            Model::ConfigPowerLaw { n, gamma, kmin } => check_config(n, gamma, kmin),
            Model::Copying { n, p } => check_copying(n, p),
            Model::Named { name, size } => check_named(name, size),
        }
    }

    pub fn generate(&self) -> Result<Generated> {
        let plain = |graph| Generated {
            graph,
            target_degrees: None,
            dropped_stubs: 0,
        };
        match self.model {
            Model::Ba { n, m } => barabasi_albert(n, m, self.seed).map(plain),
            Model::Copying { n, p } => copying_model(n, p, self.seed).map(plain),
            Model::Named { name, size } => named_graph(name, size).map(plain),
            Model::ConfigPowerLaw { n, gamma, kmin } => {
                let c = configuration_power_law(n, gamma, kmin, self.seed)?;
                Ok(Generated {
                    graph: c.graph,
                    target_degrees: Some(c.target_degrees),
                    dropped_stubs: c.dropped_stubs,
                })
            }
        }
    }
}

fn check_ba(n: usize, m: usize) -> Result<()> {
    if m == 0 || m >= n {
        return input(format!("barabasi-albert needs 1 <= m < n, got m = {m}, n = {n}"));
    }
    Ok(())
}

fn check_config(n: usize, gamma: f64, kmin: usize) -> Result<()> {
    if !(gamma > 1.0) || !gamma.is_finite() {
        return input(format!("configuration model needs gamma > 1, got {gamma}"));
    }
    if kmin == 0 {
        return input("configuration model needs kmin >= 1");
    }
    if n < 2 {
        return input(format!("configuration model needs n >= 2, got {n}"));
    }
    if kmin > n - 1 {
        return input(format!("kmin = {kmin} cannot be realised on {n} vertices"));
    }
    Ok(())
}

fn check_copying(n: usize, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return input(format!("copying probability must lie in [0, 1], got {p}"));
    }
    if n < 2 {
        return input(format!("copying model needs n >= 2, got {n}"));
    }
    Ok(())
}

fn check_named(name: NamedGraph, size: usize) -> Result<()> {
    let min = match name {
        NamedGraph::Cycle | NamedGraph::Complete => 3,
        NamedGraph::Path | NamedGraph::Star => 2,
    };
    if size < min {
        return input(format!("{name} needs size >= {min}, got {size}"));
    }
    Ok(())
}

fn check_id_space(n: usize) -> Result<()> {
    if n >= u32::MAX as usize {
        return input(format!("n = {n} exceeds the 32-bit vertex id space"));
    }
    Ok(())
}

/// Preferential attachment grown from the clique `K_{m+1}`.
///
/// Each new vertex picks `m` distinct targets with probability proportional to
/// current degree, by drawing uniformly from the list of edge endpoints and
/// redrawing on repeats.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Graph> {
    check_ba(n, m)?;
    check_id_space(n)?;
    let mut rng = rng_from_seed(seed);
    let edge_total = m * (m + 1) / 2 + (n - m - 1) * m;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(edge_total);
    let mut endpoints: Vec<VertexId> = Vec::with_capacity(2 * edge_total);

    for u in 0..=m as VertexId {
        for v in u + 1..=m as VertexId {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }

    let mut chosen: Vec<VertexId> = Vec::with_capacity(m);
    for v in (m + 1) as VertexId..n as VertexId {
        chosen.clear();
        while chosen.len() < m {
            let t = endpoints[rng.random_range(0..endpoints.len() as u64) as usize];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            endpoints.extend([t, v]);
        }
    }
    debug_assert_eq!(edges.len(), edge_total);
    Ok(build_from_edges(&edges, Some(n))?.graph)
}

#[derive(Clone, Debug)]
pub struct ConfigurationOutcome {
    pub graph: Graph,
    /// Sampled degree sequence before matching (parity already fixed).
    pub target_degrees: Vec<usize>,
    /// Stubs left unmatched after the rejection budget ran out.
    pub dropped_stubs: usize,
}

/// Largest degree the configuration sampler will draw: `n^{1/(gamma-1)}`,
/// clamped to `[kmin, n-1]`.
pub fn natural_cutoff(n: usize, gamma: f64, kmin: usize) -> usize {
    let cap = (n as f64).powf(1.0 / (gamma - 1.0)).floor();
    let cap = if cap.is_finite() { cap.min((n - 1) as f64) as usize } else { n - 1 };
    cap.max(kmin)
}

/// Inverse-CDF sampler for `P(k) ∝ k^{-gamma}` on `[kmin, kmax]`.
pub struct DiscretePowerLaw {
    kmin: usize,
    cdf: Vec<f64>,
}

impl DiscretePowerLaw {
    pub fn new(gamma: f64, kmin: usize, kmax: usize) -> Self {
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = (kmin..=kmax)
            .map(|k| {
                acc += (k as f64).powf(-gamma);
                acc
            })
            .collect();
        for c in &mut cdf {
            *c /= acc;
        }
        DiscretePowerLaw { kmin, cdf }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        let i = self.cdf.partition_point(|&c| c <= u).min(self.cdf.len() - 1);
        self.kmin + i
    }
}

/// Configuration model with an i.i.d. power-law degree sequence.
///
/// Stubs are shuffled and paired; pairs that would form a self-loop or repeat
/// an edge are returned to a residual pool that is reshuffled and retried until
/// `100 · |stubs|` rejections have accumulated. Whatever remains is dropped.
pub fn configuration_power_law(
    n: usize,
    gamma: f64,
    kmin: usize,
    seed: u64,
) -> Result<ConfigurationOutcome> {
    check_config(n, gamma, kmin)?;
    check_id_space(n)?;
    let mut rng = rng_from_seed(seed);
    let kmax = natural_cutoff(n, gamma, kmin);
    let law = DiscretePowerLaw::new(gamma, kmin, kmax);

    let mut degrees: Vec<usize> = (0..n).map(|_| law.sample(&mut rng)).collect();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        if kmin == kmax {
            // Parity cannot change by resampling a fixed value.
            degrees[n - 1] -= 1;
        } else {
            let last = degrees[n - 1];
            while degrees[n - 1] % 2 == last % 2 {
                degrees[n - 1] = law.sample(&mut rng);
            }
        }
    }

    let mut stubs: Vec<VertexId> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v as VertexId, d))
        .collect();
    let budget = 100 * stubs.len();
    let mut present: HashSet<(VertexId, VertexId)> = HashSet::with_capacity(stubs.len() / 2);
    let mut edges = Vec::with_capacity(stubs.len() / 2);
    let mut rejections = 0;

    while !stubs.is_empty() && rejections < budget {
        stubs.shuffle(&mut rng);
        let mut residual = Vec::new();
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u != v && present.insert((u, v)) {
                edges.push((u, v));
            } else {
                residual.extend([u, v]);
                rejections += 1;
                if rejections >= budget {
                    break;
                }
            }
        }
        // On budget exhaustion the residual and any unvisited stubs are dropped.
        stubs = residual;
    }

    let graph = build_from_edges(&edges, Some(n))?.graph;
    Ok(ConfigurationOutcome {
        dropped_stubs: degrees.iter().sum::<usize>() - 2 * graph.edge_count(),
        graph,
        target_degrees: degrees,
    })
}

/// Copying model grown from a single edge: each new vertex links to a uniformly
/// chosen target and, independently with probability `p`, to each of the
/// target's neighbours.
pub fn copying_model(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_copying(n, p)?;
    check_id_space(n)?;
    let mut rng = rng_from_seed(seed);
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut edges = vec![(0, 1)];
    adj[0].push(1);
    adj[1].push(0);

    let mut links = Vec::new();
    for v in 2..n as VertexId {
        let t = rng.random_range(0..v as u64) as VertexId;
        links.clear();
        links.push(t);
        for &w in &adj[t as usize] {
            if rng.random_bool(p) {
                links.push(w);
            }
        }
        for &w in &links {
            adj[w as usize].push(v);
            edges.push((w, v));
        }
        adj[v as usize].extend_from_slice(&links);
    }
    Ok(build_from_edges(&edges, Some(n))?.graph)
}

/// Degree exponent of the copying model: the root of `γ = 1 + 1/p − p^{γ−2}`.
///
/// `γ = 1` solves the equation for every `p`. The residual
/// `f(γ) = γ − 1 − 1/p + p^{γ−2}` is convex, so a second root in `(1, 1 + 1/p)`
/// exists exactly when `f` decreases at `γ = 1`, i.e. when `1 + ln(p)/p < 0`
/// (`p < 0.5671…`). That root is returned when present, otherwise `γ = 1`.
pub fn copying_exponent_solve(p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return input(format!("copying exponent needs 0 < p <= 1, got {p}"));
    }
    let ln_p = p.ln();
    if 1.0 + ln_p / p >= 0.0 {
        return Ok(1.0);
    }
    let residual = |g: f64| g - 1.0 - 1.0 / p + p.powf(g - 2.0);
    // Minimiser of the convex residual; f < 0 there, f(1 + 1/p) = p^{1/p - 1} > 0.
    let mut lo = 2.0 + (-1.0 / ln_p).ln() / ln_p;
    let mut hi = 1.0 + 1.0 / p;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if residual(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if residual(lo).abs() < residual(hi).abs() { lo } else { hi })
}

pub fn named_graph(name: NamedGraph, size: usize) -> Result<Graph> {
    check_named(name, size)?;
    check_id_space(size)?;
    let s = size as VertexId;
    let edges: Vec<(VertexId, VertexId)> = match name {
        NamedGraph::Path => (1..s).map(|v| (v - 1, v)).collect(),
        NamedGraph::Cycle => (1..s).map(|v| (v - 1, v)).chain([(0, s - 1)]).collect(),
        NamedGraph::Star => (1..s).map(|v| (0, v)).collect(),
        NamedGraph::Complete => (0..s)
            .flat_map(|u| (u + 1..s).map(move |v| (u, v)))
            .collect(),
    };
    Ok(build_from_edges(&edges, Some(size))?.graph)
}
