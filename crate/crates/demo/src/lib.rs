//! WebAssembly entry points for the browser demo in `www/`.
//!
//! Each exported function returns a JSON string; the page parses it and
//! draws the plots. The same computations are exposed as plain Rust functions
//! for native tests.

use netdense::generators::{barabasi_albert, derive_seed};
use netdense::metrics::{
    self, assortativity, avg_local_clustering, fit_power_law, line_avg_degree_exact,
    line_avg_degree_paper, PowerLawFit,
};
use netdense::transforms::predicted_degree_multiplicities;
use netdense::{degree_histogram, densify, Error, Graph, Result};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest seed graph the page will build.
pub const MAX_DEMO_VERTICES: usize = 50_000;

fn seed_graph(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if n > MAX_DEMO_VERTICES {
        return Err(Error::Input(format!("the demo is limited to n <= {MAX_DEMO_VERTICES}")));
    }
    barabasi_albert(n, m, seed)
}

#[derive(Debug, Serialize)]
pub struct Histograms {
    pub seed: Vec<(usize, usize)>,
    pub densified: Vec<(usize, usize)>,
    /// `k → k·n_k` from the seed histogram.
    pub predicted: Vec<(usize, usize)>,
    pub seed_fit: Option<PowerLawFit>,
    pub densified_fit: Option<PowerLawFit>,
    pub seed_mean_degree: f64,
    pub densified_mean_degree: f64,
    pub line_degree_published: f64,
    pub line_degree_exact: f64,
}

pub fn histograms(n: usize, m: usize, seed: u64) -> Result<Histograms> {
    let g = seed_graph(n, m, seed)?;
    let d = densify(&g)?.graph;
    let h = degree_histogram(&g);
    let hd = degree_histogram(&d);
    let mom = metrics::moments(&h)?;
    Ok(Histograms {
        seed: h.iter().collect(),
        densified: hd.iter().collect(),
        predicted: predicted_degree_multiplicities(&h).iter().collect(),
        seed_fit: fit_power_law(&h, None),
        densified_fit: fit_power_law(&hd, None),
        seed_mean_degree: g.average_degree(),
        densified_mean_degree: d.average_degree(),
        line_degree_published: line_avg_degree_paper(&mom)?,
        line_degree_exact: line_avg_degree_exact(&mom)?,
    })
}

#[derive(Debug, Serialize)]
pub struct AssortativityPoint {
    pub n: usize,
    pub r_seed: Option<f64>,
    pub r_densified: Option<f64>,
}

/// Mean `r` and `r'` over `replicates` graphs at each size in `sizes`.
pub fn assortativity_curve(
    sizes: &[usize],
    m: usize,
    replicates: usize,
    seed: u64,
) -> Result<Vec<AssortativityPoint>> {
    let mut out = Vec::with_capacity(sizes.len());
    for (i, &n) in sizes.iter().enumerate() {
        let (mut rs, mut rd) = (Vec::new(), Vec::new());
        for j in 0..replicates.max(1) {
            let g = seed_graph(n, m, derive_seed(seed, (i * 1000 + j) as u64))?;
            rs.extend(assortativity(&g)?.r);
            rd.extend(assortativity(&densify(&g)?.graph)?.r);
        }
        let mean = |v: &[f64]| (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64);
        out.push(AssortativityPoint { n, r_seed: mean(&rs), r_densified: mean(&rd) });
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct ClusteringPoint {
    pub degree: usize,
    pub measured: f64,
    /// `(k − 2)/k`.
    pub closed_form: f64,
}

#[derive(Debug, Serialize)]
pub struct ClusteringProfile {
    pub points: Vec<ClusteringPoint>,
    pub avg_local: f64,
    pub global: f64,
}

pub fn clustering_profile(n: usize, m: usize, seed: u64) -> Result<ClusteringProfile> {
    let d = densify(&seed_graph(n, m, seed)?)?.graph;
    let c = avg_local_clustering(&d);
    let points = c
        .per_degree_c
        .iter()
        .filter(|(&k, _)| k >= 2)
        .map(|(&k, &v)| ClusteringPoint {
            degree: k,
            measured: v,
            closed_form: (k - 2) as f64 / k as f64,
        })
        .collect();
    Ok(ClusteringProfile { points, avg_local: c.avg_local_c, global: c.global_c })
}

fn to_js<T: Serialize>(r: Result<T>) -> std::result::Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = degreeHistograms)]
pub fn degree_histograms_js(n: usize, m: usize, seed: u32) -> std::result::Result<String, JsError> {
    to_js(histograms(n, m, seed as u64))
}

/// `sizes` is a comma-separated list of vertex counts.
#[wasm_bindgen(js_name = assortativityCurve)]
pub fn assortativity_curve_js(
    sizes: &str,
    m: usize,
    replicates: usize,
    seed: u32,
) -> std::result::Result<String, JsError> {
    let sizes: std::result::Result<Vec<usize>, _> =
        sizes.split(',').map(|s| s.trim().parse::<usize>()).collect();
    let sizes = sizes.map_err(|e| JsError::new(&format!("bad size list: {e}")))?;
    to_js(assortativity_curve(&sizes, m, replicates, seed as u64))
}

#[wasm_bindgen(js_name = clusteringProfile)]
pub fn clustering_profile_js(n: usize, m: usize, seed: u32) -> std::result::Result<String, JsError> {
    to_js(clustering_profile(n, m, seed as u64))
}
