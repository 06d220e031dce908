use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusteringReport {
    /// Transitivity: `3 × triangles / connected triples`.
    pub global_c: f64,
    pub avg_local_c: f64,
    /// Mean local coefficient of the vertices of each degree.
    pub per_degree_c: BTreeMap<usize, f64>,
}

/// Number of triangles through each vertex.
///
/// Edges are oriented from lower to higher `(degree, id)` rank and each
/// triangle is found once, by intersecting the sorted out-lists of its two
/// lowest-ranked vertices.
pub fn triangle_counts(g: &Graph) -> Vec<u64> {
    let rank = |v: VertexId| (g.degree(v), v);
    let mut out_offsets = Vec::with_capacity(g.vertex_count() + 1);
    out_offsets.push(0usize);
    let mut out: Vec<VertexId> = Vec::with_capacity(g.edge_count());
    for u in g.vertices() {
        out.extend(g.neighbors(u).iter().copied().filter(|&v| rank(v) > rank(u)));
        out_offsets.push(out.len());
    }
    let out_of = |v: VertexId| &out[out_offsets[v as usize]..out_offsets[v as usize + 1]];

    let mut t = vec![0u64; g.vertex_count()];
    for u in g.vertices() {
        let nu = out_of(u);
        for &v in nu {
            let nv = out_of(v);
            let (mut i, mut j) = (0, 0);
            while i < nu.len() && j < nv.len() {
                match nu[i].cmp(&nv[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        t[u as usize] += 1;
                        t[v as usize] += 1;
                        t[nu[i] as usize] += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    t
}

fn pairs(d: usize) -> u64 {
    (d as u64) * (d as u64).saturating_sub(1) / 2
}

/// `3 × triangles / connected triples`; zero when there are no triples.
pub fn global_clustering(g: &Graph) -> f64 {
    global_from_counts(g, &triangle_counts(g))
}

fn global_from_counts(g: &Graph, t: &[u64]) -> f64 {
    let triples: u64 = g.degrees().map(pairs).sum();
    if triples == 0 {
        return 0.0;
    }
    // Σ_u t_u counts every triangle three times.
    t.iter().sum::<u64>() as f64 / triples as f64
}

/// Per-vertex coefficient `t_u / C(deg(u), 2)`; vertices of degree below 2 get 0.
pub fn local_clustering(g: &Graph) -> Vec<f64> {
    local_from_counts(g, &triangle_counts(g))
}

fn local_from_counts(g: &Graph, t: &[u64]) -> Vec<f64> {
    g.degrees()
        .zip(t)
        .map(|(d, &tu)| if d < 2 { 0.0 } else { tu as f64 / pairs(d) as f64 })
        .collect()
}

pub fn avg_local_clustering(g: &Graph) -> ClusteringReport {
    let t = triangle_counts(g);
    // Per degree: (vertex count, triangle sum). One division per degree keeps
    // the group mean correctly rounded.
    let mut by_degree: BTreeMap<usize, (u64, u64)> = BTreeMap::new();
    for (d, &tu) in g.degrees().zip(&t) {
        let e = by_degree.entry(d).or_insert((0, 0));
        e.0 += 1;
        e.1 += tu;
    }
    let per_degree_c: BTreeMap<usize, f64> = by_degree
        .iter()
        .map(|(&k, &(n, s))| (k, if k < 2 { 0.0 } else { s as f64 / (n * pairs(k)) as f64 }))
        .collect();
    // Summing per-degree groups in key order fixes the reduction order.
    let total: f64 = by_degree
        .iter()
        .map(|(&k, &(n, _))| n as f64 * per_degree_c[&k])
        .sum();
    ClusteringReport {
        global_c: global_from_counts(g, &t),
        avg_local_c: if t.is_empty() { 0.0 } else { total / t.len() as f64 },
        per_degree_c,
    }
}

/// Average local clustering a densified graph attains when every vertex of
/// degree `k` has coefficient `(k − 2)/k`, i.e. `1 − 2 Σ_k P(k)/k` over the
/// vertices of degree at least 2. Degree-1 vertices contribute 0.
pub fn clustering_lower_bound(h: &crate::graph::DegreeHistogram) -> f64 {
    if h.total == 0 {
        return 0.0;
    }
    let s: f64 = h
        .iter()
        .filter(|&(k, _)| k >= 2)
        .map(|(k, c)| c as f64 * (k - 2) as f64 / k as f64)
        .sum();
    s / h.total as f64
}
