use std::collections::VecDeque;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::generators::rng_from_seed;
use crate::graph::{Graph, VertexId, UNREACHED};

/// Largest vertex count for which [`diameter`] runs all-source BFS.
pub const DEFAULT_EXACT_DIAMETER_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterReport {
    /// Maximum eccentricity, present when computed exactly.
    pub diameter: Option<u32>,
    /// Eccentricity reached by the double sweep (equals `diameter` when exact).
    pub lower_bound: u32,
    pub exact: bool,
}

impl DiameterReport {
    pub fn best(&self) -> u32 {
        self.diameter.unwrap_or(self.lower_bound)
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if !g.is_connected() {
        return input("diameter needs a connected, non-empty graph");
    }
    Ok(())
}

/// Maximum over all BFS eccentricities. Sources run in parallel; the max
/// reduction makes the result independent of thread count.
pub fn diameter_exact(g: &Graph) -> Result<DiameterReport> {
    require_connected(g)?;
    let n = g.vertex_count();
    let d = (0..n as VertexId)
        .into_par_iter()
        .map_init(
            || (vec![UNREACHED; n], VecDeque::new()),
            |(dist, queue), s| {
                dist.fill(UNREACHED);
                g.bfs_into(s, dist, queue).0
            },
        )
        .max()
        .unwrap_or(0);
    Ok(DiameterReport {
        diameter: Some(d),
        lower_bound: d,
        exact: true,
    })
}

/// BFS from a seeded random vertex, then from the farthest vertex found; the
/// second eccentricity is a lower bound on the diameter, exact on trees.
pub fn diameter_double_sweep(g: &Graph, seed: u64) -> Result<DiameterReport> {
    require_connected(g)?;
    let n = g.vertex_count();
    let start = rng_from_seed(seed).random_range(0..n as u64) as VertexId;
    let mut dist = vec![UNREACHED; n];
    let mut queue = VecDeque::new();
    let (_, far) = g.bfs_into(start, &mut dist, &mut queue);
    dist.fill(UNREACHED);
    let (ecc, _) = g.bfs_into(far, &mut dist, &mut queue);
    Ok(DiameterReport {
        diameter: None,
        lower_bound: ecc,
        exact: false,
    })
}

/// Exact diameter up to `exact_limit` vertices, double-sweep bound beyond.
pub fn diameter(g: &Graph, exact_limit: usize, seed: u64) -> Result<DiameterReport> {
    if g.vertex_count() <= exact_limit {
        diameter_exact(g)
    } else {
        diameter_double_sweep(g, seed)
    }
}
