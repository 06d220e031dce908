//! Scalar and distributional graph statistics.

mod clustering;
mod distance;
mod mixing;
mod powerlaw;

pub use clustering::{
    avg_local_clustering, clustering_lower_bound, global_clustering, local_clustering,
    triangle_counts, ClusteringReport,
};
pub use distance::{
    diameter, diameter_double_sweep, diameter_exact, DiameterReport, DEFAULT_EXACT_DIAMETER_LIMIT,
};
pub use mixing::{assortativity, AssortativityReport};
pub use powerlaw::{fit_power_law, fit_power_law_at, PowerLawFit, MIN_TAIL};

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::graph::{DegreeHistogram, Graph};

/// Degree moments and the matching generating-function derivatives at 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentSummary {
    pub mean_degree: f64,
    pub second_moment: f64,
    /// `G'(1) = ⟨k⟩`.
    pub gf_first: f64,
    /// `G''(1) = ⟨k²⟩ − ⟨k⟩`.
    pub gf_second: f64,
}

pub fn moments(h: &DegreeHistogram) -> Result<MomentSummary> {
    if h.total == 0 {
        return input("moments of an empty histogram are undefined");
    }
    let (s1, s2) = h.iter().fold((0u128, 0u128), |(s1, s2), (k, c)| {
        let (k, c) = (k as u128, c as u128);
        (s1 + k * c, s2 + k * k * c)
    });
    let n = h.total as f64;
    let mean = s1 as f64 / n;
    let second = s2 as f64 / n;
    Ok(MomentSummary {
        mean_degree: mean,
        second_moment: second,
        gf_first: mean,
        gf_second: (s2 - s1) as f64 / n,
    })
}

fn require_positive_mean(m: &MomentSummary) -> Result<()> {
    if !(m.mean_degree > 0.0) {
        return input("line-graph average degree needs a positive mean degree");
    }
    Ok(())
}

/// `(⟨k²⟩ − ⟨k⟩)/⟨k⟩ = G''(1)/G'(1)`, the published expression for the
/// line graph's average degree.
pub fn line_avg_degree_paper(m: &MomentSummary) -> Result<f64> {
    require_positive_mean(m)?;
    Ok(m.gf_second / m.gf_first)
}

/// `2⟨k²⟩/⟨k⟩ − 2`, the exact average degree of the line graph: it has `|E|`
/// vertices and `Σ C(k, 2)` edges.
pub fn line_avg_degree_exact(m: &MomentSummary) -> Result<f64> {
    require_positive_mean(m)?;
    Ok(2.0 * m.gf_second / m.gf_first)
}

/// `Σ_{i=vmin}^{vmax} 1/i`, summed from the small terms up with Neumaier
/// compensation.
pub fn harmonic_partial_sum(vmin: u64, vmax: u64) -> Result<f64> {
    if vmin == 0 || vmin > vmax {
        return input(format!("harmonic sum needs 1 <= vmin <= vmax, got [{vmin}, {vmax}]"));
    }
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for i in (vmin..=vmax).rev() {
        let x = 1.0 / i as f64;
        let t = sum + x;
        comp += if sum.abs() >= x { (sum - t) + x } else { (x - t) + sum };
        sum = t;
    }
    Ok(sum + comp)
}

/// Average degree predicted for a dense graph with exponent `γ' ∈ (1, 2]` and
/// largest degree `kmax`: `kmax^{2−γ'}/(2−γ')` below 2, the harmonic sum over
/// `[kmin, kmax]` at exactly 2.
pub fn predicted_dense_avg_degree(gamma_prime: f64, kmax: u64, kmin: u64) -> Result<f64> {
    if !(gamma_prime > 1.0 && gamma_prime <= 2.0) {
        return input(format!("gamma' must lie in (1, 2], got {gamma_prime}"));
    }
    if kmin == 0 || kmin > kmax {
        return input(format!("need 1 <= kmin <= kmax, got kmin = {kmin}, kmax = {kmax}"));
    }
    if gamma_prime == 2.0 {
        harmonic_partial_sum(kmin, kmax)
    } else {
        Ok((kmax as f64).powf(2.0 - gamma_prime) / (2.0 - gamma_prime))
    }
}

pub fn max_degree(g: &Graph) -> usize {
    g.max_degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named_graph, NamedGraph};
    use crate::graph::degree_histogram;
    use crate::transforms::line_graph;

    fn hist(counts: &[(usize, usize)]) -> DegreeHistogram {
        DegreeHistogram::from_counts(counts.iter().copied())
    }

    #[test]
    fn moment_examples() {
        let m = moments(&hist(&[(2, 4)])).unwrap();
        assert_eq!((m.mean_degree, m.second_moment, m.gf_second), (2.0, 4.0, 2.0));
        let m = moments(&hist(&[(3, 1), (1, 3)])).unwrap();
        assert_eq!((m.mean_degree, m.second_moment), (1.5, 3.0));
        let m = moments(&hist(&[(4, 5)])).unwrap();
        assert_eq!((m.mean_degree, m.second_moment), (4.0, 16.0));
        assert!(moments(&DegreeHistogram::default()).is_err());
    }

    #[test]
    fn published_line_degree_expression() {
        let c4 = moments(&hist(&[(2, 4)])).unwrap();
        assert_eq!(line_avg_degree_paper(&c4).unwrap(), 1.0);
        let k5 = moments(&hist(&[(4, 5)])).unwrap();
        assert_eq!(line_avg_degree_paper(&k5).unwrap(), 3.0);
        for d in 1..20 {
            let m = moments(&hist(&[(d, 30)])).unwrap();
            assert_eq!(line_avg_degree_paper(&m).unwrap(), (d - 1) as f64);
        }
        assert!(line_avg_degree_paper(&moments(&hist(&[(0, 3)])).unwrap()).is_err());
    }

    #[test]
    fn exact_line_degree_matches_constructed_line_graphs() {
        for g in [
            named_graph(NamedGraph::Cycle, 4).unwrap(),
            named_graph(NamedGraph::Complete, 3).unwrap(),
            named_graph(NamedGraph::Star, 6).unwrap(),
        ] {
            let exact = line_avg_degree_exact(&moments(&degree_histogram(&g)).unwrap()).unwrap();
            let l = line_graph(&g).unwrap().graph;
            assert!((exact - l.average_degree()).abs() < 1e-12);
        }
        let c4 = moments(&hist(&[(2, 4)])).unwrap();
        assert_eq!(line_avg_degree_exact(&c4).unwrap(), 2.0);
    }

    #[test]
    fn four_cycle_with_two_isolated_vertices() {
        // ⟨k⟩ = 4/3 and the line graph (again C4) has average degree 2.
        let m = moments(&hist(&[(2, 4), (0, 2)])).unwrap();
        assert!((m.mean_degree - 4.0 / 3.0).abs() < 1e-15);
        assert!((line_avg_degree_exact(&m).unwrap() - 2.0).abs() < 1e-12);
        assert!((line_avg_degree_paper(&m).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic_partial_sum(1, 1).unwrap(), 1.0);
        assert!((harmonic_partial_sum(1, 4).unwrap() - 25.0 / 12.0).abs() < 1e-15);
        assert!(harmonic_partial_sum(5, 4).is_err());
        assert!(harmonic_partial_sum(0, 4).is_err());
    }

    #[test]
    fn harmonic_matches_euler_maclaurin() {
        let n = 1e6f64;
        let euler_gamma = 0.577_215_664_901_532_9;
        let h_n = n.ln() + euler_gamma + 1.0 / (2.0 * n) - 1.0 / (12.0 * n * n);
        let oracle = h_n - 1.0;
        assert!((harmonic_partial_sum(2, 1_000_000).unwrap() - oracle).abs() < 1e-6);
    }

    #[test]
    fn dense_average_degree_prediction() {
        assert!((predicted_dense_avg_degree(1.5, 100, 1).unwrap() - 20.0).abs() < 1e-12);
        assert!((predicted_dense_avg_degree(2.0, 4, 1).unwrap() - 25.0 / 12.0).abs() < 1e-15);
        let a = predicted_dense_avg_degree(1.5, 100, 1).unwrap();
        let b = predicted_dense_avg_degree(1.5, 400, 1).unwrap();
        assert!((b / a - 2.0).abs() < 1e-12);
        assert!(predicted_dense_avg_degree(1.0, 100, 1).is_err());
        assert!(predicted_dense_avg_degree(2.5, 100, 1).is_err());
        assert!(predicted_dense_avg_degree(1.5, 1, 2).is_err());
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(max_degree(&named_graph(NamedGraph::Star, 4).unwrap()), 3);
        assert_eq!(max_degree(&named_graph(NamedGraph::Cycle, 4).unwrap()), 2);
    }
}
