use std::io::Write as _;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use privmst::bounds::{compare_bounds, BoundInputs};
use privmst::clustering::DbmstcluConfig;
use privmst::dp::{compose, graph_laplace, BudgetLedger};
use privmst::experiment::{
    cluster_graph, generate_shape_dataset, partition_csv, partition_json, render, run_experiment, write_outputs,
    ExperimentConfig, Mechanism, OutputFormat, PipelineParams, Shape,
};
use privmst::graph::{
    approximation_error, epsilon_graph, mst_kruskal, mst_prim, parse_graph, parse_point_cloud, tree_weight,
    write_graph, write_point_cloud, Graph, TreeTopology,
};
use privmst::pamst::{pamst, release_weighted_tree, w_star, UtilityConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "privmst", version, about = "Weight-differentially-private minimum spanning trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact minimum spanning tree of an edge-list graph.
    Mst {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Prim)]
        algorithm: Algorithm,
    },
    /// Adds Laplace(1/eps) noise to every edge weight.
    Sanitize {
        graph: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Private approximate MST.
    Pamst {
        graph: PathBuf,
        #[arg(long)]
        eps: f64,
        /// Utility sensitivity 1/|E| instead of 1.
        #[arg(long)]
        normalize: bool,
        /// Also release the tree weights with Laplace noise at this budget.
        #[arg(long, value_name = "EPS2")]
        release_weights: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        start: Option<usize>,
        /// Write the per-step trace as JSON.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// Compares the Laplace and PAMST error bounds.
    Bounds {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        json: bool,
    },
    /// Private MST followed by DBMSTClu.
    Cluster {
        /// Point-cloud CSV when --radius is given, edge-list graph otherwise.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        radius: Option<f64>,
        /// The point cloud's last column holds integer labels.
        #[arg(long)]
        labeled: bool,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value = "pamst")]
        mechanism: Mechanism,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// PAMST utility sensitivity 1 instead of 1/|E|.
        #[arg(long)]
        raw_sensitivity: bool,
        /// Accept only strictly improving cuts.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Generates a labeled two-cluster point cloud.
    Shape {
        #[arg(value_enum)]
        kind: ShapeKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Runs an experiment config. Relative output and input paths resolve
    /// against the config's directory.
    Experiment {
        config: PathBuf,
        #[arg(long, env = "PRIVMST_WORKERS")]
        workers: Option<NonZeroUsize>,
        /// Print this format to stdout in addition to the configured outputs.
        #[arg(long, value_enum)]
        print: Option<Format>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Prim,
    Kruskal,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeKind {
    Blobs,
    Moons,
    Circles,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

type CliResult = Result<(), Box<dyn std::error::Error>>;

fn read(path: &Path) -> Result<String, Box<dyn std::error::Error>> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn load_graph(path: &Path) -> Result<Graph, Box<dyn std::error::Error>> {
    parse_graph(&read(path)?).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn print_tree(graph: &Graph, tree: &TreeTopology, weights: &[f64], header: &str) -> CliResult {
    let edges = tree.edges().iter().map(|&e| graph.edge(e)).collect();
    let out = Graph::new(graph.node_count(), edges, weights.to_vec())?;
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{header}")?;
    write!(stdout, "{}", write_graph(&out))?;
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Mst { graph, algorithm } => {
            let g = load_graph(&graph)?;
            let tree = match algorithm {
                Algorithm::Prim => mst_prim(&g),
                Algorithm::Kruskal => mst_kruskal(&g),
            };
            let weights: Vec<f64> = tree.edges().iter().map(|&e| g.weight(e)).collect();
            print_tree(&g, &tree, &weights, &format!("# mst weight {}", tree_weight(&tree, &g)?))
        }
        Command::Sanitize { graph, eps, seed } => {
            let g = load_graph(&graph)?;
            let noisy = graph_laplace(&g, eps, &mut ChaCha8Rng::seed_from_u64(seed))?;
            print!("# laplace eps {eps}\n{}", write_graph(&noisy));
            Ok(())
        }
        Command::Pamst { graph, eps, normalize, release_weights, seed, start, trace } => {
            let g = load_graph(&graph)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cfg = if normalize { UtilityConfig::normalized(&g) } else { UtilityConfig::raw() };
            let (tree, steps) = pamst(&g, eps, cfg, start, &mut rng)?;
            let mut ledger = BudgetLedger::new();
            steps.record_into(&mut ledger);
            let released = match release_weights {
                Some(eps2) => Some(release_weighted_tree(&g, &tree, eps2, &mut ledger, &mut rng)?.weights),
                None => None,
            };
            if let Some(path) = trace {
                std::fs::write(&path, serde_json::to_string_pretty(&steps)? + "\n")?;
            }
            eprintln!(
                "non-private diagnostics: weight {} w_star {} error {}",
                tree_weight(&tree, &g)?,
                w_star(&steps),
                approximation_error(&g, &tree)?
            );
            let header = format!("# pamst eps {}", compose(&ledger)?.epsilon);
            match released {
                Some(weights) => print_tree(&g, &tree, &weights, &header),
                None => {
                    // Topology only: the true weights are not part of the release.
                    let mut out = format!("{header}\nn {}\n", g.node_count());
                    for &e in tree.edges() {
                        let (u, v) = g.edge(e);
                        out.push_str(&format!("{u} {v}\n"));
                    }
                    print!("{out}");
                    Ok(())
                }
            }
        }
        Command::Bounds { nodes, edges, eps, gamma, json } => {
            let c = compare_bounds(&BoundInputs::new(nodes, edges, eps, gamma)?);
            if json {
                println!("{}", serde_json::to_string_pretty(&c)?);
            } else {
                let crossover = c.crossover_alpha.map_or("none".to_string(), |a| format!("{a:.6}"));
                println!("alpha            {:.6}", c.alpha);
                println!("laplace_bound    {:.6}", c.laplace_bound);
                println!("pamst_bound      {:.6}", c.pamst_bound);
                println!("crossover_alpha  {crossover}");
                println!("sufficient_alpha {}", c.sufficient_alpha);
                println!("headline_alpha   {}", c.headline_alpha);
                println!("winner           {}", c.winner);
            }
            Ok(())
        }
        Command::Cluster { input, radius, labeled, eps, mechanism, seed, raw_sensitivity, strict, csv, json } => {
            let text = read(&input)?;
            let (graph, labels) = match radius {
                Some(r) => {
                    let cloud = parse_point_cloud(&text, labeled)?;
                    (epsilon_graph(&cloud, r)?, cloud.labels().map(<[usize]>::to_vec))
                }
                None => (parse_graph(&text)?, None),
            };
            let params = PipelineParams {
                epsilon: eps,
                mechanism,
                normalize: !raw_sensitivity,
                clustering: DbmstcluConfig { strict },
            };
            let out = cluster_graph(&graph, labels.as_deref(), &params, &mut ChaCha8Rng::seed_from_u64(seed))?;
            let ari = out.metrics.ari.map_or("n/a".to_string(), |a| format!("{a:.6}"));
            eprintln!(
                "clusters {} dbcvi {:.6} ari {ari} epsilon {}",
                out.metrics.cluster_count,
                out.metrics.dbcvi,
                compose(&out.ledger)?.epsilon
            );
            if let Some(p) = &json {
                std::fs::write(p, partition_json(&out.partition)?)?;
            }
            if let Some(p) = &csv {
                std::fs::write(p, partition_csv(&out.partition))?;
            }
            if csv.is_none() && json.is_none() {
                print!("{}", partition_csv(&out.partition));
            }
            Ok(())
        }
        Command::Shape { kind, n, noise, seed } => {
            let shape = match kind {
                ShapeKind::Blobs => Shape::blobs(),
                ShapeKind::Moons => Shape::moons(),
                ShapeKind::Circles => Shape::circles(),
            };
            print!("{}", write_point_cloud(&generate_shape_dataset(&shape, n, noise, seed)?));
            Ok(())
        }
        Command::Experiment { config, workers, print } => {
            let cfg = ExperimentConfig::from_json(&read(&config)?)?;
            let base = config.parent().filter(|p| !p.as_os_str().is_empty());
            let own = std::fs::canonicalize(&config)?;
            for out in [&cfg.output.csv, &cfg.output.json].into_iter().flatten() {
                let target = base.map_or_else(|| out.clone(), |b| b.join(out));
                if std::fs::canonicalize(&target).is_ok_and(|t| t == own) {
                    return Err(format!("output {} would overwrite the config", out.display()).into());
                }
            }
            let report = run_experiment(&cfg, base, workers.map(NonZeroUsize::get))?;
            write_outputs(&report, base)?;
            let format = match print {
                Some(Format::Csv) => Some(OutputFormat::Csv),
                Some(Format::Json) => Some(OutputFormat::Json),
                None if cfg.output.csv.is_none() && cfg.output.json.is_none() => Some(OutputFormat::Csv),
                None => None,
            };
            if let Some(f) = format {
                std::io::stdout().write_all(&render(&report, f)?)?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
