//! Modularity and Louvain community detection.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::generators::rng_from_seed;
use crate::graph::{DegreeHistogram, Graph};
use crate::metrics::{fit_power_law, PowerLawFit};

/// Vertex-to-community assignment with dense community ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub community_of: Vec<u32>,
    pub community_count: usize,
    /// Degree sum of each community.
    pub degree_sums: Vec<u64>,
}

impl Partition {
    /// Builds a partition from arbitrary labels, renumbering communities in
    /// order of first appearance.
    pub fn from_labels(g: &Graph, labels: &[u32]) -> Result<Partition> {
        if labels.len() != g.vertex_count() {
            return input(format!(
                "partition covers {} vertices but the graph has {}",
                labels.len(),
                g.vertex_count()
            ));
        }
        let mut remap = std::collections::HashMap::new();
        let community_of: Vec<u32> = labels
            .iter()
            .map(|&l| {
                let next = remap.len() as u32;
                *remap.entry(l).or_insert(next)
            })
            .collect();
        let community_count = remap.len();
        let mut degree_sums = vec![0u64; community_count];
        for (v, &c) in community_of.iter().enumerate() {
            degree_sums[c as usize] += g.degree(v as u32) as u64;
        }
        Ok(Partition {
            community_of,
            community_count,
            degree_sums,
        })
    }

    pub fn singletons(g: &Graph) -> Partition {
        let labels: Vec<u32> = (0..g.vertex_count() as u32).collect();
        Partition::from_labels(g, &labels).expect("sizes agree")
    }

    pub fn one_block(g: &Graph) -> Partition {
        Partition::from_labels(g, &vec![0; g.vertex_count()]).expect("sizes agree")
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![0usize; self.community_count];
        for &c in &self.community_of {
            s[c as usize] += 1;
        }
        s
    }

    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut m = vec![Vec::new(); self.community_count];
        for (v, &c) in self.community_of.iter().enumerate() {
            m[c as usize].push(v as u32);
        }
        m
    }
}

/// `Q = Σ_c [e_c/|E| − (d_c/2|E|)²]`, with `e_c` the edges inside community
/// `c` and `d_c` its degree sum.
pub fn modularity(g: &Graph, p: &Partition) -> Result<f64> {
    if p.community_of.len() != g.vertex_count() {
        return input(format!(
            "partition covers {} vertices but the graph has {}",
            p.community_of.len(),
            g.vertex_count()
        ));
    }
    let m = g.edge_count();
    if m == 0 {
        return input("modularity of an edgeless graph is undefined");
    }
    let mut inside = vec![0u64; p.community_count];
    for (u, v) in g.edges() {
        let cu = p.community_of[u as usize];
        if cu == p.community_of[v as usize] {
            inside[cu as usize] += 1;
        }
    }
    let m = m as f64;
    Ok(inside
        .iter()
        .zip(&p.degree_sums)
        .map(|(&e, &d)| e as f64 / m - (d as f64 / (2.0 * m)).powi(2))
        .sum())
}

/// Weighted multigraph used between Louvain levels. `self_weight[i]` is
/// `Σ A_jk` over ordered pairs inside the merged node, so a node's strength is
/// its adjacency weight plus its self weight.
#[derive(Clone, Debug)]
pub(crate) struct WeightedGraph {
    pub(crate) adj: Vec<Vec<(u32, f64)>>,
    pub(crate) self_weight: Vec<f64>,
    pub(crate) strength: Vec<f64>,
    pub(crate) total: f64,
}

impl WeightedGraph {
    fn from_graph(g: &Graph) -> Self {
        let adj: Vec<Vec<(u32, f64)>> = g
            .vertices()
            .map(|u| g.neighbors(u).iter().map(|&v| (v, 1.0)).collect())
            .collect();
        let strength: Vec<f64> = g.degrees().map(|d| d as f64).collect();
        WeightedGraph {
            self_weight: vec![0.0; adj.len()],
            total: strength.iter().sum(),
            strength,
            adj,
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Modularity of `membership` (node → community in `[0, count)`).
    #[cfg(test)]
    pub(crate) fn modularity(&self, membership: &[u32], count: usize) -> f64 {
        let mut inside = vec![0.0; count];
        let mut tot = vec![0.0; count];
        for (i, &c) in membership.iter().enumerate() {
            tot[c as usize] += self.strength[i];
            inside[c as usize] += self.self_weight[i];
            for &(j, w) in &self.adj[i] {
                if membership[j as usize] == c {
                    inside[c as usize] += w;
                }
            }
        }
        inside
            .iter()
            .zip(&tot)
            .map(|(&a, &t)| a / self.total - (t / self.total).powi(2))
            .sum()
    }

    /// Collapses each community into a node. Communities must be dense ids.
    fn aggregate(&self, membership: &[u32], count: usize) -> WeightedGraph {
        let mut self_weight = vec![0.0; count];
        let mut strength = vec![0.0; count];
        let mut links: Vec<(u32, u32, f64)> = Vec::new();
        for i in 0..self.len() {
            let ci = membership[i];
            self_weight[ci as usize] += self.self_weight[i];
            strength[ci as usize] += self.strength[i];
            for &(j, w) in &self.adj[i] {
                let cj = membership[j as usize];
                if ci == cj {
                    self_weight[ci as usize] += w;
                } else {
                    links.push((ci, cj, w));
                }
            }
        }
        links.sort_unstable_by_key(|&(a, b, _)| (a, b));
        let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); count];
        for (a, b, w) in links {
            let row = &mut adj[a as usize];
            match row.last_mut() {
                Some((last, acc)) if *last == b => *acc += w,
                _ => row.push((b, w)),
            }
        }
        WeightedGraph {
            adj,
            self_weight,
            strength,
            total: self.total,
        }
    }
}

/// State after the local-move phase of one level.
#[derive(Clone, Debug)]
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) struct Level {
    pub(crate) graph: WeightedGraph,
    pub(crate) membership: Vec<u32>,
    pub(crate) count: usize,
    /// Original vertex → community at this level.
    pub(crate) assignment: Vec<u32>,
}

const GAIN_EPS: f64 = 1e-10;

/// Moves nodes between communities in the given order until a full pass makes
/// no strictly improving move. Returns dense memberships and whether anything moved.
fn local_moves(wg: &WeightedGraph, order: &[u32]) -> (Vec<u32>, usize, bool) {
    let n = wg.len();
    let mut comm: Vec<u32> = (0..n as u32).collect();
    let mut tot = wg.strength.clone();
    let mut link_to = vec![0.0f64; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut moved_any = false;

    loop {
        let mut moved = false;
        for &i in order {
            let i = i as usize;
            let ci = comm[i];
            let ki = wg.strength[i];
            for &(j, w) in &wg.adj[i] {
                let cj = comm[j as usize];
                if link_to[cj as usize] == 0.0 {
                    touched.push(cj);
                }
                link_to[cj as usize] += w;
            }
            tot[ci as usize] -= ki;
            let gain = |c: u32| link_to[c as usize] - tot[c as usize] * ki / wg.total;
            let stay = gain(ci);
            let mut best = ci;
            let mut best_gain = stay;
            for &c in &touched {
                let g = gain(c);
                if c == ci || g <= stay + GAIN_EPS {
                    continue;
                }
                let tie = (g - best_gain).abs() <= GAIN_EPS;
                if best == ci || (g > best_gain && !tie) || (tie && c < best) {
                    best = c;
                    best_gain = g;
                }
            }
            tot[best as usize] += ki;
            if best != ci {
                comm[i] = best;
                moved = true;
            }
            for &c in &touched {
                link_to[c as usize] = 0.0;
            }
            touched.clear();
        }
        if !moved {
            break;
        }
        moved_any = true;
    }

    // Dense renumbering in order of each community's smallest node.
    let mut remap = vec![u32::MAX; n];
    let mut count = 0u32;
    for c in comm.iter_mut() {
        if remap[*c as usize] == u32::MAX {
            remap[*c as usize] = count;
            count += 1;
        }
        *c = remap[*c as usize];
    }
    (comm, count as usize, moved_any)
}

pub(crate) fn louvain_levels(g: &Graph, seed: u64) -> Result<Vec<Level>> {
    if g.edge_count() == 0 {
        return input("louvain needs at least one edge");
    }
    let mut rng = rng_from_seed(seed);
    let mut wg = WeightedGraph::from_graph(g);
    let mut assignment: Vec<u32> = (0..g.vertex_count() as u32).collect();
    let mut levels = Vec::new();
    loop {
        let mut order: Vec<u32> = (0..wg.len() as u32).collect();
        order.shuffle(&mut rng);
        let (membership, count, moved) = local_moves(&wg, &order);
        if !moved {
            break;
        }
        for a in assignment.iter_mut() {
            *a = membership[*a as usize];
        }
        let next = wg.aggregate(&membership, count);
        levels.push(Level {
            graph: wg,
            membership,
            count,
            assignment: assignment.clone(),
        });
        wg = next;
    }
    Ok(levels)
}

/// Louvain modularity maximisation (resolution 1). Visit order is shuffled
/// once per level from `seed`; a node moves only for a strictly positive gain,
/// equal gains going to the smallest community id.
pub fn louvain_maximize(g: &Graph, seed: u64) -> Result<Partition> {
    let levels = louvain_levels(g, seed)?;
    match levels.last() {
        Some(level) => Partition::from_labels(g, &level.assignment),
        None => Ok(Partition::singletons(g)),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommunitySizeDistribution {
    /// Community sizes, ascending.
    pub sizes: Vec<usize>,
    /// Decaying power law `P(s) ∝ s^{−γ}` fitted to the size tail.
    pub fit: Option<PowerLawFit>,
}

pub fn community_sizes(_g: &Graph, p: &Partition) -> CommunitySizeDistribution {
    let mut sizes = p.sizes();
    sizes.sort_unstable();
    let fit = fit_power_law(&DegreeHistogram::from_values(sizes.iter().copied()), None);
    CommunitySizeDistribution { sizes, fit }
}
