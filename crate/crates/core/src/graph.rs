//! Compact immutable simple undirected graph.
//!
//! Adjacency is stored in compressed sparse row form: `targets[offsets[v]..offsets[v + 1]]`
//! holds the neighbours of `v`, sorted ascending. Every edge appears twice, once per
//! endpoint.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// Dense vertex index in `[0, vertex_count)`.
pub type VertexId = u32;

pub(crate) const UNREACHED: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
}

/// Result of [`build_from_edges`]: the cleaned graph and what had to be dropped.
#[derive(Clone, Debug)]
pub struct Built {
    pub graph: Graph,
    pub dropped_self_loops: usize,
    pub dropped_duplicates: usize,
}

/// Builds a simple graph from an arbitrary edge list.
///
/// Self-loops and repeated pairs (in either orientation) are dropped and counted.
/// When `n` is given every id must be below it; otherwise the vertex count is
/// `max id + 1`.
pub fn build_from_edges(edges: &[(VertexId, VertexId)], n: Option<usize>) -> Result<Built> {
    let max_id = edges.iter().map(|&(u, v)| u.max(v) as usize + 1).max().unwrap_or(0);
    let n = match n {
        Some(n) if max_id > n => {
            return input(format!("vertex id {} out of range for n = {n}", max_id - 1))
        }
        Some(n) => n,
        None => max_id,
    };
    if n > UNREACHED as usize {
        return input(format!("vertex count {n} exceeds the 32-bit id space"));
    }

    let mut canon: Vec<(VertexId, VertexId)> = Vec::with_capacity(edges.len());
    let mut dropped_self_loops = 0;
    for &(u, v) in edges {
        if u == v {
            dropped_self_loops += 1;
        } else {
            canon.push((u.min(v), u.max(v)));
        }
    }
    canon.sort_unstable();
    let before = canon.len();
    canon.dedup();
    let dropped_duplicates = before - canon.len();

    Ok(Built {
        graph: Graph::from_sorted_unique(n, &canon),
        dropped_self_loops,
        dropped_duplicates,
    })
}

impl Graph {
    /// Graph with `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Convenience constructor: vertex count inferred, loops and duplicates dropped silently.
    pub fn from_edges(edges: &[(VertexId, VertexId)]) -> Self {
        build_from_edges(edges, None)
            .expect("inferred vertex count cannot be exceeded")
            .graph
    }

    /// `canon` must be sorted, deduplicated and have `u < v` in every pair.
    pub(crate) fn from_sorted_unique(n: usize, canon: &[(VertexId, VertexId)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in canon {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        // Lexicographic edge order fills every row in ascending order: the lower
        // neighbours of x arrive (as (u, x)) before its upper neighbours (as (x, v)).
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0; 2 * canon.len()];
        for &(u, v) in canon {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        let g = Graph { offsets, targets };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    /// Trusted constructor for callers that already produce sorted symmetric rows.
    pub(crate) fn from_csr(offsets: Vec<usize>, targets: Vec<VertexId>) -> Self {
        let g = Graph { offsets, targets };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Offset of `v`'s row in the half-edge array. Row positions are stable
    /// identifiers for half-edges `(v, neighbors(v)[i])`.
    #[inline]
    pub fn row_start(&self, v: VertexId) -> usize {
        self.offsets[v as usize]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        0..self.vertex_count() as VertexId
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order. The position of an
    /// edge in this iteration is its edge index.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        self.edges().collect()
    }

    pub fn average_degree(&self) -> f64 {
        if self.vertex_count() == 0 {
            0.0
        } else {
            self.targets.len() as f64 / self.vertex_count() as f64
        }
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    /// Verifies simplicity, symmetry, sorting and the handshake identity.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.vertex_count();
        if *self.offsets.last().unwrap() != self.targets.len() {
            return Err("offsets do not cover the target array".into());
        }
        if !self.targets.len().is_multiple_of(2) {
            return Err("odd number of half-edges".into());
        }
        for u in self.vertices() {
            let row = self.neighbors(u);
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("row {u} not strictly ascending"));
            }
            for &v in row {
                if v as usize >= n {
                    return Err(format!("neighbour {v} of {u} out of range"));
                }
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                if !self.has_edge(v, u) {
                    return Err(format!("edge {u}-{v} not mirrored"));
                }
            }
        }
        Ok(())
    }

    /// Hop distances from `source` into `dist`, which must have `vertex_count`
    /// slots set to [`UNREACHED`]. Returns the eccentricity of `source` within its
    /// component and the last vertex dequeued (a farthest vertex).
    pub(crate) fn bfs_into(
        &self,
        source: VertexId,
        dist: &mut [u32],
        queue: &mut VecDeque<VertexId>,
    ) -> (u32, VertexId) {
        queue.clear();
        dist[source as usize] = 0;
        queue.push_back(source);
        let mut last = source;
        while let Some(u) = queue.pop_front() {
            last = u;
            let du = dist[u as usize];
            for &v in self.neighbors(u) {
                if dist[v as usize] == UNREACHED {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        (dist[last as usize], last)
    }

    /// Component label per vertex, labels numbered in order of each component's
    /// smallest vertex.
    pub fn component_labels(&self) -> (Vec<u32>, usize) {
        let n = self.vertex_count();
        let mut label = vec![UNREACHED; n];
        let mut queue = VecDeque::new();
        let mut count = 0u32;
        for s in self.vertices() {
            if label[s as usize] != UNREACHED {
                continue;
            }
            label[s as usize] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if label[v as usize] == UNREACHED {
                        label[v as usize] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (label, count as usize)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.component_labels().1 == 1
    }

    /// Subgraph induced by the vertices with `keep[v]`, relabelled densely in
    /// ascending original order.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (Graph, Vec<Option<VertexId>>) {
        let mut relabel = vec![None; self.vertex_count()];
        let mut next = 0;
        for v in self.vertices() {
            if keep[v as usize] {
                relabel[v as usize] = Some(next);
                next += 1;
            }
        }
        // Relabelling is monotone, so rows stay sorted.
        let mut offsets = vec![0usize];
        let mut targets = Vec::new();
        for u in self.vertices() {
            if relabel[u as usize].is_none() {
                continue;
            }
            targets.extend(self.neighbors(u).iter().filter_map(|&v| relabel[v as usize]));
            offsets.push(targets.len());
        }
        (Graph::from_csr(offsets, targets), relabel)
    }
}

/// Degree counts `k -> n_k`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DegreeHistogram {
    pub counts: BTreeMap<usize, usize>,
    pub total: usize,
}

impl DegreeHistogram {
    pub fn from_values(values: impl IntoIterator<Item = usize>) -> Self {
        let mut h = DegreeHistogram::default();
        for k in values {
            *h.counts.entry(k).or_insert(0) += 1;
            h.total += 1;
        }
        h
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let counts: BTreeMap<usize, usize> = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        let total = counts.values().sum();
        DegreeHistogram { counts, total }
    }

    pub fn count(&self, k: usize) -> usize {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    /// `Σ k·n_k`, twice the edge count for a degree histogram.
    pub fn degree_sum(&self) -> u128 {
        self.counts.iter().map(|(&k, &c)| k as u128 * c as u128).sum()
    }

    pub fn max_value(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k, c))
    }
}

pub fn degree_histogram(g: &Graph) -> DegreeHistogram {
    DegreeHistogram::from_values(g.degrees())
}

/// Shortest-path hop counts from `source`; `None` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, source: VertexId) -> Result<Vec<Option<u32>>> {
    if source as usize >= g.vertex_count() {
        return input(format!(
            "source {source} out of range for {} vertices",
            g.vertex_count()
        ));
    }
    let mut dist = vec![UNREACHED; g.vertex_count()];
    g.bfs_into(source, &mut dist, &mut VecDeque::new());
    Ok(dist
        .into_iter()
        .map(|d| (d != UNREACHED).then_some(d))
        .collect())
}

/// Largest connected component and the old-to-new relabel map. Among equally
/// large components the one containing the smallest original id wins.
pub fn largest_component(g: &Graph) -> (Graph, Vec<Option<VertexId>>) {
    if g.vertex_count() == 0 {
        return (Graph::empty(0), Vec::new());
    }
    let (labels, count) = g.component_labels();
    let mut sizes = vec![0usize; count];
    for &l in &labels {
        sizes[l as usize] += 1;
    }
    // Labels follow smallest-vertex order, so the first maximum is the tie winner.
    let best = sizes
        .iter()
        .enumerate()
        .fold(0, |best, (i, &s)| if s > sizes[best] { i } else { best }) as u32;
    let keep: Vec<bool> = labels.iter().map(|&l| l == best).collect();
    g.induced_subgraph(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p4() -> Graph {
        Graph::from_edges(&[(0, 1), (1, 2), (2, 3)])
    }

    #[test]
    fn triangle() {
        let b = build_from_edges(&[(0, 1), (1, 2), (2, 0)], None).unwrap();
        assert_eq!(b.graph.vertex_count(), 3);
        assert_eq!(b.graph.edge_count(), 3);
        assert_eq!(b.dropped_duplicates + b.dropped_self_loops, 0);
    }

    #[test]
    fn duplicates_in_both_orientations_are_dropped() {
        let b = build_from_edges(&[(0, 1), (0, 1), (1, 0)], None).unwrap();
        assert_eq!(b.graph.edge_count(), 1);
        assert_eq!(b.dropped_duplicates, 2);
    }

    #[test]
    fn self_loops_are_dropped() {
        let b = build_from_edges(&[(0, 0), (0, 1)], None).unwrap();
        assert_eq!(b.graph.edge_list(), vec![(0, 1)]);
        assert_eq!(b.dropped_self_loops, 1);
    }

    #[test]
    fn id_beyond_declared_count_is_rejected() {
        assert!(build_from_edges(&[(0, 3)], Some(3)).is_err());
        let b = build_from_edges(&[(0, 2)], Some(5)).unwrap();
        assert_eq!(b.graph.vertex_count(), 5);
    }

    #[test]
    fn histograms() {
        let k3 = Graph::from_edges(&[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(degree_histogram(&k3), DegreeHistogram::from_counts([(2, 3)]));
        let star = Graph::from_edges(&[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(
            degree_histogram(&star),
            DegreeHistogram::from_counts([(3, 1), (1, 3)])
        );
        assert_eq!(
            degree_histogram(&p4()),
            DegreeHistogram::from_counts([(1, 2), (2, 2)])
        );
    }

    #[test]
    fn bfs_examples() {
        let d = bfs_distances(&p4(), 0).unwrap();
        assert_eq!(d, vec![Some(0), Some(1), Some(2), Some(3)]);
        let k3 = Graph::from_edges(&[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(bfs_distances(&k3, 1).unwrap(), vec![Some(1), Some(0), Some(1)]);
        let two = Graph::from_edges(&[(0, 1), (2, 3)]);
        assert_eq!(
            bfs_distances(&two, 0).unwrap(),
            vec![Some(0), Some(1), None, None]
        );
        assert!(bfs_distances(&two, 4).is_err());
    }

    #[test]
    fn largest_component_examples() {
        let g = build_from_edges(&[(0, 1), (1, 2), (0, 2)], Some(4)).unwrap().graph;
        let (c, map) = largest_component(&g);
        assert_eq!(c.edge_count(), 3);
        assert_eq!(map[3], None);

        let two = Graph::from_edges(&[(3, 4), (4, 5), (3, 5), (0, 1), (1, 2), (0, 2)]);
        let (c, map) = largest_component(&two);
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(map[0], Some(0));
        assert_eq!(map[3], None);

        let (c, _) = largest_component(&p4());
        assert_eq!(c, p4());

        let (c, map) = largest_component(&Graph::empty(0));
        assert_eq!(c.vertex_count(), 0);
        assert!(map.is_empty());
    }

    fn arb_edges() -> impl Strategy<Value = Vec<(u32, u32)>> {
        prop::collection::vec((0u32..30, 0u32..30), 0..120)
    }

    proptest! {
        #[test]
        fn built_graphs_satisfy_invariants(edges in arb_edges()) {
            let g = Graph::from_edges(&edges);
            prop_assert!(g.check_invariants().is_ok());
            let deg_sum: usize = g.degrees().sum();
            prop_assert_eq!(deg_sum, 2 * g.edge_count());
            let h = degree_histogram(&g);
            prop_assert_eq!(h.total, g.vertex_count());
            prop_assert_eq!(h.degree_sum(), 2 * g.edge_count() as u128);
        }

        #[test]
        fn edge_list_round_trip(edges in arb_edges()) {
            let g = Graph::from_edges(&edges);
            let again = build_from_edges(&g.edge_list(), Some(g.vertex_count())).unwrap();
            prop_assert_eq!(again.dropped_duplicates + again.dropped_self_loops, 0);
            prop_assert_eq!(again.graph, g);
        }

        #[test]
        fn bfs_levels_differ_by_at_most_one_across_edges(edges in arb_edges(), s in 0u32..30) {
            let g = build_from_edges(&edges, Some(30)).unwrap().graph;
            let d = bfs_distances(&g, s).unwrap();
            for (u, v) in g.edges() {
                match (d[u as usize], d[v as usize]) {
                    (Some(a), Some(b)) => prop_assert!(a.abs_diff(b) <= 1),
                    (None, None) => {}
                    _ => prop_assert!(false, "edge crosses reachability boundary"),
                }
            }
        }
    }
}
