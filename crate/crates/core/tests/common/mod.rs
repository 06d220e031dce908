#![allow(dead_code)]

use std::collections::VecDeque;

use netdense::generators::rng_from_seed;
use netdense::Graph;
use rand::Rng;

/// Every labeled simple graph on `n` vertices.
pub fn all_graphs_on(n: u32) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        netdense::build_from_edges(&edges, Some(n as usize)).unwrap().graph
    })
}

/// All labeled graphs on up to six vertices followed by 100 draws of G(50, 0.1).
pub fn corpus() -> Vec<Graph> {
    let mut out: Vec<Graph> = (1..=6).flat_map(all_graphs_on).collect();
    out.extend((0..100).map(|s| gnp(50, 0.1, 1000 + s)));
    out
}

pub fn gnp(n: u32, p: f64, seed: u64) -> Graph {
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    netdense::build_from_edges(&edges, Some(n as usize)).unwrap().graph
}

/// Random connected graph: a random recursive tree plus `extra` random chords.
pub fn random_connected(n: u32, extra: usize, seed: u64) -> Graph {
    let mut rng = rng_from_seed(seed);
    let mut edges: Vec<(u32, u32)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    for _ in 0..extra {
        edges.push((rng.random_range(0..n), rng.random_range(0..n)));
    }
    netdense::build_from_edges(&edges, Some(n as usize)).unwrap().graph
}

/// Diameter by plain BFS from every vertex; `None` if disconnected.
pub fn brute_diameter(g: &Graph) -> Option<u32> {
    let n = g.vertex_count();
    let mut best = 0;
    for s in 0..n {
        let mut dist = vec![u32::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in g.neighbors(u as u32) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = dist[u] + 1;
                    q.push_back(v as usize);
                }
            }
        }
        best = best.max(*dist.iter().max()?);
        if best == u32::MAX {
            return None;
        }
    }
    Some(best)
}

/// Local clustering from adjacency tests over all neighbour pairs.
pub fn brute_local_clustering(g: &Graph, u: u32) -> f64 {
    let nb = g.neighbors(u);
    let k = nb.len();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for i in 0..k {
        for j in i + 1..k {
            if g.has_edge(nb[i], nb[j]) {
                links += 1;
            }
        }
    }
    links as f64 / (k * (k - 1) / 2) as f64
}

/// Modularity from the double-sum definition over all vertex pairs.
pub fn brute_modularity(g: &Graph, labels: &[u32]) -> f64 {
    let two_m = 2.0 * g.edge_count() as f64;
    let n = g.vertex_count() as u32;
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i as usize] != labels[j as usize] {
                continue;
            }
            let a = if g.has_edge(i, j) { 1.0 } else { 0.0 };
            q += a - (g.degree(i) * g.degree(j)) as f64 / two_m;
        }
    }
    q / two_m
}

/// Every set partition of `{0, …, n−1}` as restricted-growth label strings.
pub fn set_partitions(n: usize) -> Vec<Vec<u32>> {
    fn rec(i: usize, n: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max + 1 {
            cur.push(c);
            rec(i + 1, n, max.max(c), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![vec![]];
    }
    let mut cur = vec![0];
    rec(1, n, 0, &mut cur, &mut out);
    out
}

/// Maximum modularity over all partitions.
pub fn exhaustive_max_modularity(g: &Graph) -> f64 {
    set_partitions(g.vertex_count())
        .iter()
        .map(|p| brute_modularity(g, p))
        .fold(f64::NEG_INFINITY, f64::max)
}
