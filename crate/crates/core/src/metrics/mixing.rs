use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssortativityReport {
    /// Pearson degree correlation; `None` when the degree variance over edge
    /// endpoints vanishes.
    pub r: Option<f64>,
    pub defined: bool,
}

/// Pearson correlation of endpoint degrees over the edge list, with every edge
/// counted once and symmetrised through `½(k_i + k_j)` and `½(k_i² + k_j²)`.
///
/// Numerator and denominator are scaled by `4|E|²` and evaluated in exact
/// integer arithmetic before the final division.
pub fn assortativity(g: &Graph) -> Result<AssortativityReport> {
    let m = g.edge_count() as i128;
    if m == 0 {
        return input("assortativity of an edgeless graph is undefined");
    }
    let (mut prod, mut sum, mut sq) = (0i128, 0i128, 0i128);
    for (u, v) in g.edges() {
        let (a, b) = (g.degree(u) as i128, g.degree(v) as i128);
        prod += a * b;
        sum += a + b;
        sq += a * a + b * b;
    }
    let num = 4 * m * prod - sum * sum;
    let den = 2 * m * sq - sum * sum;
    // Variance below 1e-12 of the mean squared degree counts as zero.
    let variance = den as f64 / (4.0 * (m * m) as f64);
    let scale = sq as f64 / (2.0 * m as f64);
    if den <= 0 || variance < 1e-12 * scale {
        return Ok(AssortativityReport { r: None, defined: false });
    }
    Ok(AssortativityReport {
        r: Some(num as f64 / den as f64),
        defined: true,
    })
}
