use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use netdense::experiments::{
    csv_sink, run_sweep, worker_count, SweepConfig, SweepKind, SweepReport, SweepRow,
};
use netdense::generators::{GenSpec, Model, NamedGraph};
use netdense::io::{read_edge_list_file, write_edge_list_file};
use netdense::metrics::{fit_power_law, DEFAULT_EXACT_DIAMETER_LIMIT};
use netdense::report::{analyze, AnalyzeOptions, Metric, Provenance};
use netdense::transforms::{densify_with_budget, line_graph_with_budget, subdivide, DEFAULT_EDGE_BUDGET};
use netdense::{degree_histogram, Error, Graph};

type Result<T> = std::result::Result<T, Error>;

#[derive(Parser)]
#[command(name = "netdense", version, about = "Densify sparse scale-free graphs and measure what changes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seed graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Subdivide, take the line graph of, or densify an edge list.
    Transform(TransformArgs),
    /// Print structural metrics of an edge list.
    Analyze(AnalyzeArgs),
    /// Degree correlation of Barabási–Albert graphs before and after densifying.
    SweepAssortativity(SweepArgs),
    /// Exponents, largest degree and density of densified Barabási–Albert graphs.
    ScalingStudy(ScalingArgs),
    /// Fit a discrete power law to the degree sequence of an edge list.
    Fit(FitArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Ba,
    ConfigPowerLaw,
    Copying,
    Named,
}

#[derive(clap::Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    model: ModelKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    kmin: Option<usize>,
    #[arg(long)]
    name: Option<NamedGraph>,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Also write the generator settings as JSON.
    #[arg(long)]
    spec_json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Subdivide,
    Line,
    Densify,
}

#[derive(clap::Args)]
struct TransformArgs {
    #[arg(long, value_enum)]
    op: Op,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Write the origin of every output vertex to this file.
    #[arg(long)]
    provenance: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EDGE_BUDGET)]
    max_edges: u128,
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Comma-separated metric names, or "all".
    #[arg(long, default_value = "all")]
    metrics: String,
    /// Also run Louvain community detection.
    #[arg(long)]
    community: bool,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_EXACT_DIAMETER_LIMIT)]
    exact_diameter_limit: usize,
    /// Fix the lower cutoff of the power-law fit instead of scanning.
    #[arg(long)]
    kmin: Option<usize>,
}

#[derive(clap::Args)]
struct SweepCommon {
    #[arg(long, value_delimiter = ',', default_values_t = [1_000usize, 10_000, 100_000])]
    n_list: Vec<usize>,
    /// Replicates per (n, m) cell.
    #[arg(long, default_value_t = 5)]
    seeds: usize,
    /// Master seed; each cell derives its own stream from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EDGE_BUDGET)]
    max_edges: u128,
}

#[derive(clap::Args)]
struct SweepArgs {
    #[command(flatten)]
    common: SweepCommon,
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3, 4, 5, 6])]
    m_list: Vec<usize>,
}

#[derive(clap::Args)]
struct ScalingArgs {
    #[command(flatten)]
    common: SweepCommon,
    #[arg(long, default_value_t = 3)]
    m: usize,
    #[arg(long, default_value_t = DEFAULT_EXACT_DIAMETER_LIMIT)]
    exact_diameter_limit: usize,
}

#[derive(clap::Args)]
struct FitArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    kmin: Option<usize>,
    #[arg(long)]
    json: Option<PathBuf>,
}

fn required<T>(v: Option<T>, flag: &str, model: &str) -> Result<T> {
    v.ok_or_else(|| Error::Input(format!("--{flag} is required for --model {model}")))
}

fn gen_spec(a: &GenerateArgs) -> Result<GenSpec> {
    let model = match a.model {
        ModelKind::Ba => Model::Ba {
            n: required(a.n, "n", "ba")?,
            m: required(a.m, "m", "ba")?,
        },
        ModelKind::ConfigPowerLaw => Model::ConfigPowerLaw {
            n: required(a.n, "n", "config-power-law")?,
            gamma: required(a.gamma, "gamma", "config-power-law")?,
            kmin: required(a.kmin, "kmin", "config-power-law")?,
        },
        ModelKind::Copying => Model::Copying {
            n: required(a.n, "n", "copying")?,
            p: required(a.p, "p", "copying")?,
        },
        ModelKind::Named => Model::Named {
            name: required(a.name, "name", "named")?,
            size: required(a.size, "size", "named")?,
        },
    };
    Ok(GenSpec { model, seed: a.seed })
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn write_json<T: serde::Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn read_graph(path: &Path) -> Result<Graph> {
    let built = read_edge_list_file(path)?;
    if built.dropped_self_loops + built.dropped_duplicates > 0 {
        eprintln!(
            "note: dropped {} self-loops and {} duplicate edges from {}",
            built.dropped_self_loops,
            built.dropped_duplicates,
            path.display()
        );
    }
    Ok(built.graph)
}

fn summary_line(g: &Graph) -> String {
    format!("n={} |E|={} <k>={:.6}", g.vertex_count(), g.edge_count(), g.average_degree())
}

fn generate(a: GenerateArgs) -> Result<()> {
    let spec = gen_spec(&a)?;
    spec.validate()?;
    let generated = spec.generate()?;
    write_edge_list_file(&generated.graph, &a.out)?;
    if let Some(path) = &a.spec_json {
        write_json(&spec, path)?;
    }
    let mut line = summary_line(&generated.graph);
    if generated.dropped_stubs > 0 {
        line.push_str(&format!(" dropped_stubs={}", generated.dropped_stubs));
    }
    println!("{line}");
    Ok(())
}

fn transform(a: TransformArgs) -> Result<()> {
    let g = read_graph(&a.input)?;
    if g.edge_count() == 0 {
        return Err(Error::Input(format!("{} has no edges", a.input.display())));
    }
    let mut prov: Vec<String> = Vec::new();
    let out = match a.op {
        Op::Subdivide => {
            let s = subdivide(&g)?;
            if a.provenance.is_some() {
                prov.push("# vertex kind origin".into());
                prov.extend((0..s.original_count).map(|v| format!("{v} original {v}")));
                prov.extend(
                    s.edge_of_subvertex
                        .iter()
                        .enumerate()
                        .map(|(i, (u, v))| format!("{} edge {u}-{v}", s.original_count + i)),
                );
            }
            s.graph
        }
        Op::Line => {
            let l = line_graph_with_budget(&g, a.max_edges)?;
            if a.provenance.is_some() {
                prov.push("# line_vertex edge".into());
                prov.extend(l.base_edges.iter().enumerate().map(|(i, (u, v))| format!("{i} {u}-{v}")));
            }
            l.graph
        }
        Op::Densify => {
            let d = densify_with_budget(&g, a.max_edges)?;
            if a.provenance.is_some() {
                prov.push("# line_vertex seed_vertex edge".into());
                let mut rows = vec![String::new(); d.graph.vertex_count()];
                for (&(u, v), ends) in d.seed_edges.iter().zip(&d.line_vertex_of) {
                    rows[ends[0] as usize] = format!("{} {u} {u}-{v}", ends[0]);
                    rows[ends[1] as usize] = format!("{} {v} {u}-{v}", ends[1]);
                }
                prov.extend(rows);
            }
            d.graph
        }
    };
    write_edge_list_file(&out, &a.out)?;
    if let Some(path) = &a.provenance {
        let mut w = create(path)?;
        for line in &prov {
            writeln!(w, "{line}")?;
        }
        w.flush()?;
    }
    println!("{}", summary_line(&out));
    Ok(())
}

fn analyze_cmd(a: AnalyzeArgs) -> Result<()> {
    let metrics = Metric::parse_list(&a.metrics)?;
    let g = read_graph(&a.input)?;
    let opts = AnalyzeOptions {
        metrics,
        community: a.community,
        seed: a.seed,
        exact_diameter_limit: a.exact_diameter_limit,
        kmin: a.kmin,
    };
    let report = analyze(&g, &opts, Provenance::new(a.input.display().to_string(), None, a.seed));
    print!("{report}");
    if let Some(path) = &a.json {
        write_json(&report, path)?;
    }
    Ok(())
}

fn sweep(config: SweepConfig, common: &SweepCommon) -> Result<()> {
    let rows: Vec<SweepRow> = run_sweep(&config, worker_count(), csv_sink(create(&common.out)?))?;
    let report = SweepReport::new(config, rows);
    if let Some(path) = &common.json {
        write_json(&report, path)?;
    }
    let s = &report.summary;
    println!("rows={} rows_with_violations={}", s.rows, s.rows_with_violations);
    for &(m, a, b) in &s.r_densified_trend_breaks {
        println!("trend break: mean r' decreased for m={m} from n={a} to n={b}");
    }
    for &(m, a, b) in &s.density_trend_breaks {
        println!("trend break: mean <k'> did not grow for m={m} from n={a} to n={b}");
    }
    if let Some(slope) = s.kmax_slope {
        println!("ln k_max vs ln n slope={slope:.4}");
    }
    if let Some(shift) = s.mean_exponent_shift {
        println!("mean exponent shift={shift:.4}");
    }
    Ok(())
}

fn sweep_assortativity(a: SweepArgs) -> Result<()> {
    let c = &a.common;
    let config = SweepConfig {
        kind: SweepKind::Assortativity,
        n_list: c.n_list.clone(),
        m_list: a.m_list,
        seeds: c.seeds,
        master_seed: c.seed,
        edge_budget: c.max_edges,
        exact_diameter_limit: DEFAULT_EXACT_DIAMETER_LIMIT,
    };
    sweep(config, c)
}

fn scaling_study(a: ScalingArgs) -> Result<()> {
    let c = &a.common;
    let config = SweepConfig {
        kind: SweepKind::Scaling,
        n_list: c.n_list.clone(),
        m_list: vec![a.m],
        seeds: c.seeds,
        master_seed: c.seed,
        edge_budget: c.max_edges,
        exact_diameter_limit: a.exact_diameter_limit,
    };
    sweep(config, c)
}

fn fit(a: FitArgs) -> Result<()> {
    let g = read_graph(&a.input)?;
    let hist = degree_histogram(&g);
    let fit = fit_power_law(&hist, a.kmin)
        .ok_or_else(|| Error::Input("no degree tail to fit (need positive degrees at or above kmin)".into()))?;
    println!(
        "gamma={:.6} kmin={} kmax={} ks={:.6} n_tail={} valid={}",
        fit.gamma_hat, fit.kmin_used, fit.kmax_observed, fit.ks_distance, fit.n_tail, fit.valid
    );
    if let Some(path) = &a.json {
        write_json(&fit, path)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Transform(a) => transform(a),
        Command::Analyze(a) => analyze_cmd(a),
        Command::SweepAssortativity(a) => sweep_assortativity(a),
        Command::ScalingStudy(a) => scaling_study(a),
        Command::Fit(a) => fit(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
