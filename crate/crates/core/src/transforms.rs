//! Subdivision, line graph and their composition.
//!
//! Edge indices follow the lexicographic `(u, v)`, `u < v` order of
//! [`Graph::edges`]. Line-graph vertex `i` stands for base edge `i`.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::graph::{DegreeHistogram, Graph, VertexId};

/// Default ceiling on the number of edges a transform may allocate.
pub const DEFAULT_EDGE_BUDGET: u128 = 1 << 31;

#[derive(Clone, Debug)]
pub struct SubdivisionResult {
    pub graph: Graph,
    /// Original vertices keep ids `[0, original_count)`; the vertex inserted on
    /// edge `e` is `original_count + e`.
    pub original_count: usize,
    pub edge_of_subvertex: Vec<(VertexId, VertexId)>,
}

impl SubdivisionResult {
    pub fn subdivision_vertices(&self) -> Range<usize> {
        self.original_count..self.graph.vertex_count()
    }
}

#[derive(Clone, Debug)]
pub struct LineGraphResult {
    pub graph: Graph,
    /// `base_edges[i]` is the base edge represented by line vertex `i`.
    pub base_edges: Vec<(VertexId, VertexId)>,
}

impl LineGraphResult {
    /// Line vertex of base edge index `e` (numbering is by edge order).
    pub fn vertex_of_edge(&self, e: usize) -> VertexId {
        e as VertexId
    }
}

#[derive(Clone, Debug)]
pub struct DensifyResult {
    pub graph: Graph,
    pub seed_edges: Vec<(VertexId, VertexId)>,
    /// For base edge `e = (a, b)` with `a < b`: the line vertices of the
    /// half-edges `a–w_e` and `w_e–b`.
    pub line_vertex_of: Vec<[VertexId; 2]>,
    clique_starts: Vec<usize>,
    /// Seed vertices of degree zero, which have no image.
    pub isolated_dropped: usize,
}

impl DensifyResult {
    /// Line vertices forming the clique `K_{deg(u)}` of seed vertex `u`.
    pub fn clique_of_vertex(&self, u: VertexId) -> Range<VertexId> {
        let u = u as usize;
        self.clique_starts[u] as VertexId..self.clique_starts[u + 1] as VertexId
    }

    pub fn seed_vertex_count(&self) -> usize {
        self.clique_starts.len() - 1
    }

    /// Seed vertex owning line vertex `x`.
    pub fn owner_of(&self, x: VertexId) -> VertexId {
        (self.clique_starts.partition_point(|&s| s <= x as usize) - 1) as VertexId
    }
}

/// `half_edge_ids[p]` is the edge index of the half-edge stored at row position
/// `p`. Within each row the ids ascend: lower neighbours' edges were numbered in
/// earlier rows, upper neighbours' edges in this row in neighbour order.
pub(crate) fn half_edge_ids(g: &Graph) -> Vec<u32> {
    let mut ids = vec![0u32; 2 * g.edge_count()];
    let mut lower_cursor: Vec<usize> = g.vertices().map(|v| g.row_start(v)).collect();
    let mut next = 0u32;
    for u in g.vertices() {
        let start = g.row_start(u);
        for (i, &v) in g.neighbors(u).iter().enumerate() {
            if v > u {
                ids[start + i] = next;
                ids[lower_cursor[v as usize]] = next;
                lower_cursor[v as usize] += 1;
                next += 1;
            }
        }
    }
    ids
}

fn check_edge_ids(g: &Graph) -> Result<()> {
    if g.edge_count() >= u32::MAX as usize {
        return Err(Error::EdgeBudget {
            predicted: g.edge_count() as u128,
            budget: u32::MAX as u128 - 1,
        });
    }
    Ok(())
}

/// `Σ_u C(deg(u), 2)`, the edge count of the line graph.
pub fn predicted_line_edges(g: &Graph) -> u128 {
    g.degrees()
        .map(|d| (d as u128) * (d as u128).saturating_sub(1) / 2)
        .sum()
}

/// Inserts one vertex on every edge.
pub fn subdivide(g: &Graph) -> Result<SubdivisionResult> {
    check_edge_ids(g)?;
    let n = g.vertex_count();
    let m = g.edge_count();
    if n + m >= u32::MAX as usize {
        return Err(Error::Input(format!("subdivision of {n} + {m} vertices overflows ids")));
    }
    let ids = half_edge_ids(g);
    let edge_of_subvertex = g.edge_list();

    let mut offsets = Vec::with_capacity(n + m + 1);
    offsets.extend((0..=n).map(|u| if u == n { 2 * m } else { g.row_start(u as VertexId) }));
    offsets.extend((1..=m).map(|e| 2 * m + 2 * e));
    let mut targets = Vec::with_capacity(4 * m);
    targets.extend(ids.iter().map(|&e| n as VertexId + e));
    for &(u, v) in &edge_of_subvertex {
        targets.extend([u, v]);
    }
    Ok(SubdivisionResult {
        graph: Graph::from_csr(offsets, targets),
        original_count: n,
        edge_of_subvertex,
    })
}

/// Line graph with the default edge budget.
pub fn line_graph(g: &Graph) -> Result<LineGraphResult> {
    line_graph_with_budget(g, DEFAULT_EDGE_BUDGET)
}

/// Line graph, failing before allocation when `Σ C(deg, 2)` exceeds `budget`.
pub fn line_graph_with_budget(g: &Graph, budget: u128) -> Result<LineGraphResult> {
    let predicted = predicted_line_edges(g);
    if predicted > budget {
        return Err(Error::EdgeBudget { predicted, budget });
    }
    check_edge_ids(g)?;
    let ids = half_edge_ids(g);
    let base_edges = g.edge_list();
    let incident = |v: VertexId| {
        let s = g.row_start(v);
        &ids[s..s + g.degree(v)]
    };

    let mut offsets = Vec::with_capacity(base_edges.len() + 1);
    offsets.push(0usize);
    let mut targets: Vec<VertexId> = Vec::with_capacity(2 * predicted as usize);
    for (e, &(a, b)) in base_edges.iter().enumerate() {
        let e = e as u32;
        let (xs, ys) = (incident(a), incident(b));
        // Both lists ascend and share only `e` (the graph is simple).
        let (mut i, mut j) = (0, 0);
        while i < xs.len() || j < ys.len() {
            let take_x = j == ys.len() || (i < xs.len() && xs[i] < ys[j]);
            let f = if take_x {
                i += 1;
                xs[i - 1]
            } else {
                j += 1;
                ys[j - 1]
            };
            if f != e {
                targets.push(f);
            }
        }
        offsets.push(targets.len());
    }
    Ok(LineGraphResult {
        graph: Graph::from_csr(offsets, targets),
        base_edges,
    })
}

/// Subdivision followed by the line graph, with the default edge budget.
pub fn densify(g: &Graph) -> Result<DensifyResult> {
    densify_with_budget(g, DEFAULT_EDGE_BUDGET)
}

pub fn densify_with_budget(g: &Graph, budget: u128) -> Result<DensifyResult> {
    let predicted = predicted_line_edges(g) + g.edge_count() as u128;
    if predicted > budget {
        return Err(Error::EdgeBudget { predicted, budget });
    }
    let sub = subdivide(g)?;
    let line = line_graph_with_budget(&sub.graph, budget)?;
    debug_assert_eq!(line.graph.edge_count() as u128, predicted);

    // The subdivided graph's edges are (u, n + e) ordered by u, then by e, so the
    // line vertex of half-edge (u, e) is u's row position in `g`.
    let ids = half_edge_ids(g);
    let mut line_vertex_of = vec![[0 as VertexId; 2]; g.edge_count()];
    for u in g.vertices() {
        let start = g.row_start(u);
        for (i, &v) in g.neighbors(u).iter().enumerate() {
            let e = ids[start + i] as usize;
            line_vertex_of[e][usize::from(u > v)] = (start + i) as VertexId;
        }
    }
    let clique_starts = (0..=g.vertex_count())
        .map(|u| {
            if u == g.vertex_count() {
                2 * g.edge_count()
            } else {
                g.row_start(u as VertexId)
            }
        })
        .collect();

    Ok(DensifyResult {
        graph: line.graph,
        seed_edges: sub.edge_of_subvertex,
        line_vertex_of,
        clique_starts,
        isolated_dropped: g.degrees().filter(|&d| d == 0).count(),
    })
}

/// Degree multiplicities of the densified graph predicted from the seed's:
/// every seed vertex of degree `k` becomes `k` vertices of degree `k`.
pub fn predicted_degree_multiplicities(h: &DegreeHistogram) -> DegreeHistogram {
    DegreeHistogram::from_counts(h.iter().filter(|&(k, _)| k > 0).map(|(k, c)| (k, k * c)))
}
