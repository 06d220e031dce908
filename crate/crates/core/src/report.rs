//! Structured analysis reports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::community::{community_sizes, louvain_maximize, modularity};
use crate::error::{input, Error, Result};
use crate::generators::{GenSpec, RNG_FAMILY};
use crate::graph::{degree_histogram, largest_component, Graph};
use crate::metrics::{
    self, assortativity, avg_local_clustering, fit_power_law, AssortativityReport,
    ClusteringReport, DiameterReport, MomentSummary, PowerLawFit,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Moments,
    Powerlaw,
    Assortativity,
    Clustering,
    Diameter,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::Moments,
        Metric::Powerlaw,
        Metric::Assortativity,
        Metric::Clustering,
        Metric::Diameter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Moments => "moments",
            Metric::Powerlaw => "powerlaw",
            Metric::Assortativity => "assortativity",
            Metric::Clustering => "clustering",
            Metric::Diameter => "diameter",
        }
    }

    /// Parses `all` or a comma-separated list of metric names.
    pub fn parse_list(s: &str) -> Result<Vec<Metric>> {
        if s.trim() == "all" {
            return Ok(Metric::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let m: Metric = part.parse()?;
            if !out.contains(&m) {
                out.push(m);
            }
        }
        if out.is_empty() {
            return input("empty metric list");
        }
        Ok(out)
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Metric::ALL.iter().map(|m| m.name()).collect();
                Error::Input(format!(
                    "unknown metric '{s}'; valid metrics: {}, all",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    /// Input file or generator description.
    pub source: String,
    pub gen_spec: Option<GenSpec>,
    pub seed: u64,
    pub rng_family: String,
}

impl Provenance {
    pub fn new(source: impl Into<String>, gen_spec: Option<GenSpec>, seed: u64) -> Self {
        Provenance {
            tool_version: TOOL_VERSION.to_string(),
            source: source.into(),
            gen_spec,
            seed,
            rng_family: RNG_FAMILY.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub mean_degree: f64,
    pub max_degree: usize,
    pub isolated_vertices: usize,
    pub components: usize,
}

/// Both expressions for the line graph's average degree, side by side.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LineDegreeComparison {
    /// `(⟨k²⟩ − ⟨k⟩)/⟨k⟩` as published.
    pub published: f64,
    /// `2⟨k²⟩/⟨k⟩ − 2`, the exact value.
    pub exact: f64,
}

/// Which graph distance-based metrics were computed on.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentDisclosure {
    pub largest_component_used: bool,
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommunityReport {
    pub communities: usize,
    pub modularity: f64,
    pub sizes: Vec<usize>,
    pub size_fit: Option<PowerLawFit>,
    /// The size law is fitted as decaying, `P(s) ∝ s^{−γ}`.
    pub size_exponent_convention: String,
    pub louvain_seed: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub provenance: Provenance,
    pub summary: GraphSummary,
    pub moments: Option<MomentSummary>,
    pub line_avg_degree: Option<LineDegreeComparison>,
    pub power_law: Option<PowerLawFit>,
    pub assortativity: Option<AssortativityReport>,
    pub clustering: Option<ClusteringReport>,
    pub diameter: Option<DiameterReport>,
    pub component: Option<ComponentDisclosure>,
    pub community: Option<CommunityReport>,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub metrics: Vec<Metric>,
    pub community: bool,
    pub seed: u64,
    pub exact_diameter_limit: usize,
    pub kmin: Option<usize>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            metrics: Metric::ALL.to_vec(),
            community: false,
            seed: 0,
            exact_diameter_limit: metrics::DEFAULT_EXACT_DIAMETER_LIMIT,
            kmin: None,
        }
    }
}

pub fn analyze(g: &Graph, opts: &AnalyzeOptions, provenance: Provenance) -> AnalysisReport {
    let want = |m: Metric| opts.metrics.contains(&m);
    let hist = degree_histogram(g);
    let (_, components) = g.component_labels();
    let summary = GraphSummary {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        mean_degree: g.average_degree(),
        max_degree: g.max_degree(),
        isolated_vertices: hist.count(0),
        components,
    };

    let moments = if want(Metric::Moments) { metrics::moments(&hist).ok() } else { None };
    let line_avg_degree = moments.and_then(|m| {
        Some(LineDegreeComparison {
            published: metrics::line_avg_degree_paper(&m).ok()?,
            exact: metrics::line_avg_degree_exact(&m).ok()?,
        })
    });
    let power_law = if want(Metric::Powerlaw) { fit_power_law(&hist, opts.kmin) } else { None };
    let clustering = want(Metric::Clustering).then(|| avg_local_clustering(g));

    let needs_component = want(Metric::Assortativity) || want(Metric::Diameter);
    let (giant, component) = if needs_component && components > 1 {
        let (c, _) = largest_component(g);
        let d = ComponentDisclosure {
            largest_component_used: true,
            vertices: c.vertex_count(),
            edges: c.edge_count(),
        };
        (Some(c), Some(d))
    } else if needs_component {
        let d = ComponentDisclosure {
            largest_component_used: false,
            vertices: g.vertex_count(),
            edges: g.edge_count(),
        };
        (None, Some(d))
    } else {
        (None, None)
    };
    let target = giant.as_ref().unwrap_or(g);
    let assortativity = if want(Metric::Assortativity) { assortativity(target).ok() } else { None };
    let diameter = if want(Metric::Diameter) {
        metrics::diameter(target, opts.exact_diameter_limit, opts.seed).ok()
    } else {
        None
    };

    let community = if opts.community {
        louvain_maximize(g, opts.seed).ok().map(|p| {
            let dist = community_sizes(g, &p);
            CommunityReport {
                communities: p.community_count,
                modularity: modularity(g, &p).unwrap_or(0.0),
                sizes: dist.sizes,
                size_fit: dist.fit,
                size_exponent_convention: "P(s) ~ s^-gamma (decaying); a positive exponent s^+gamma is not fitted".into(),
                louvain_seed: opts.seed,
            }
        })
    } else {
        None
    };

    AnalysisReport {
        schema_version: SCHEMA_VERSION,
        provenance,
        summary,
        moments,
        line_avg_degree,
        power_law,
        assortativity,
        clustering,
        diameter,
        component,
        community,
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| format!("{x:.6}"))
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.summary;
        writeln!(f, "graph: n={} |E|={} <k>={:.6} k_max={}", s.vertices, s.edges, s.mean_degree, s.max_degree)?;
        writeln!(f, "  isolated={} components={}", s.isolated_vertices, s.components)?;
        if let Some(m) = &self.moments {
            writeln!(
                f,
                "moments: <k>={:.6} <k^2>={:.6} G'(1)={:.6} G''(1)={:.6}",
                m.mean_degree, m.second_moment, m.gf_first, m.gf_second
            )?;
        }
        if let Some(l) = &self.line_avg_degree {
            writeln!(
                f,
                "line-graph <k'>: published (<k^2>-<k>)/<k> = {:.6}, exact 2<k^2>/<k>-2 = {:.6}",
                l.published, l.exact
            )?;
        }
        if let Some(p) = &self.power_law {
            writeln!(
                f,
                "power law: gamma={:.4} kmin={} ks={:.4} n_tail={} valid={}",
                p.gamma_hat, p.kmin_used, p.ks_distance, p.n_tail, p.valid
            )?;
        }
        if let Some(c) = &self.component {
            if c.largest_component_used {
                writeln!(f, "largest component used: n={} |E|={}", c.vertices, c.edges)?;
            }
        }
        if let Some(a) = &self.assortativity {
            writeln!(f, "assortativity: r={}", opt(a.r))?;
        }
        if let Some(c) = &self.clustering {
            writeln!(f, "clustering: global={:.6} avg_local={:.6}", c.global_c, c.avg_local_c)?;
            let shown: Vec<String> = c
                .per_degree_c
                .iter()
                .take(12)
                .map(|(k, v)| format!("{k}:{v:.4}"))
                .collect();
            let more = if c.per_degree_c.len() > 12 { " ..." } else { "" };
            writeln!(f, "  per degree: {}{more}", shown.join(" "))?;
        }
        if let Some(d) = &self.diameter {
            if d.exact {
                writeln!(f, "diameter: {} (exact)", d.best())?;
            } else {
                writeln!(f, "diameter: >= {} (double sweep)", d.lower_bound)?;
            }
        }
        if let Some(c) = &self.community {
            writeln!(f, "communities: {} Q={:.6}", c.communities, c.modularity)?;
            if let Some(fit) = &c.size_fit {
                writeln!(f, "  size law P(s) ~ s^-gamma: gamma={:.4} kmin={} valid={}", fit.gamma_hat, fit.kmin_used, fit.valid)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named_graph, NamedGraph};
    use crate::transforms::densify;

    fn run(g: &Graph) -> AnalysisReport {
        analyze(g, &AnalyzeOptions::default(), Provenance::new("test", None, 0))
    }

    #[test]
    fn four_cycle() {
        let r = run(&named_graph(NamedGraph::Cycle, 4).unwrap());
        assert_eq!(r.summary.mean_degree, 2.0);
        assert!(!r.assortativity.unwrap().defined);
        assert_eq!(r.clustering.as_ref().unwrap().global_c, 0.0);
        assert_eq!(r.diameter.unwrap().diameter, Some(2));
        let text = r.to_string();
        assert!(text.contains("published"));
        assert!(text.contains("r=undefined"));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["schema_version"], 1);
        assert!(json["assortativity"]["r"].is_null());
    }

    #[test]
    fn densified_star() {
        let d = densify(&named_graph(NamedGraph::Star, 4).unwrap()).unwrap();
        let r = run(&d.graph);
        let c = r.clustering.unwrap();
        assert!((c.per_degree_c[&3] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn disconnected_graph_uses_largest_component() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (5, 6)]);
        let r = run(&g);
        let c = r.component.unwrap();
        assert!(c.largest_component_used);
        assert_eq!(c.vertices, 4);
        assert_eq!(r.diameter.unwrap().diameter, Some(3));
    }

    #[test]
    fn metric_names() {
        assert_eq!(Metric::parse_list("all").unwrap().len(), 5);
        assert_eq!(
            Metric::parse_list("moments,diameter").unwrap(),
            vec![Metric::Moments, Metric::Diameter]
        );
        let err = Metric::parse_list("nonsense").unwrap_err().to_string();
        assert!(err.contains("assortativity"));
    }
}
