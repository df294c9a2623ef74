//! `frg` — link prediction on large undirected networks from the command
//! line: dataset stats, model training, ROC/AUC evaluation, and single-pair
//! prediction.
//!
//! All randomness flows from `--seed`; identical invocations produce
//! byte-identical artifacts.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use frg_core::experiment::{
    evaluate_model, sample_dataset, ModelSpec, SamplingConfig, TrainedModel,
};
use frg_core::graph::UndirectedGraph;
use frg_core::model_io::{read_model, write_model, ModelMeta};
use frg_core::spectral::SolverOptions;
use frg_core::NodePair;

#[derive(Parser)]
#[command(
    name = "frg",
    version,
    about = "Conditional link prediction on undirected networks"
)]
struct Cli {
    /// Worker threads for parallel sections (defaults to the logical cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    Frg,
    Mrg,
    Hrg,
    Cws,
    Cba,
}

#[derive(Args)]
struct SharedModelArgs {
    /// Kernel bandwidth override for the FRG model (default: rule of thumb).
    #[arg(long)]
    bandwidth: Option<f64>,
    /// Largest k for the Markov ERG k-star statistics.
    #[arg(long, default_value_t = 3)]
    kmax: usize,
    /// Damping parameter of the alternating ERG statistics.
    #[arg(long, default_value_t = 2.0)]
    rho: f64,
    /// Halve the estimated mean endpoint degree when fitting the CWS lattice
    /// half-degree.
    #[arg(long, default_value_t = false)]
    cws_halve_delta: bool,
    /// Largest matrix order handled by the dense eigensolver; larger
    /// neighborhoods use the iterative solver.
    #[arg(long, default_value_t = 2048)]
    dense_threshold: usize,
}

impl SharedModelArgs {
    fn spec(&self, kind: ModelKind) -> Result<ModelSpec> {
        if self.kmax < 2 {
            bail!("--kmax must be at least 2");
        }
        if self.rho < 1.0 {
            bail!("--rho must be at least 1");
        }
        if self.dense_threshold < 2 {
            bail!("--dense-threshold must be at least 2");
        }
        Ok(match kind {
            ModelKind::Frg => ModelSpec::Frg {
                bandwidth_override: self.bandwidth,
            },
            ModelKind::Mrg => ModelSpec::MarkovErg {
                k_max: self.kmax,
                rho: self.rho,
            },
            ModelKind::Hrg => ModelSpec::HigherOrderErg {
                k_max: self.kmax,
                rho: self.rho,
            },
            ModelKind::Cws => ModelSpec::Cws {
                halve_delta: self.cws_halve_delta,
            },
            ModelKind::Cba => ModelSpec::Cba,
        })
    }

    fn solver(&self) -> SolverOptions {
        SolverOptions {
            dense_threshold: self.dense_threshold,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print node, edge, mean degree, and component counts of an edge list.
    Stats {
        /// Edge-list file: two whitespace-separated integer ids per line,
        /// '#' comments ignored.
        #[arg(long)]
        graph: PathBuf,
    },
    /// Sample a training split, fit a model, and write it to a model file.
    Train {
        #[arg(long)]
        graph: PathBuf,
        /// Which model to fit.
        #[arg(long, value_enum)]
        model: ModelKind,
        /// Training pairs to sample.
        #[arg(long, default_value_t = 10_000)]
        train: usize,
        /// Master seed; the train and test streams are derived from it.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Warn when the train split has fewer linked pairs than this.
        #[arg(long, default_value_t = 10)]
        min_positives: usize,
        /// Force this fraction of linked pairs per split (stratified mode).
        #[arg(long)]
        stratify: Option<f64>,
        /// Output model file.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        shared: SharedModelArgs,
    },
    /// Sample a test split disjoint from the model's train split, score it,
    /// and print the AUC.
    Evaluate {
        #[arg(long)]
        graph: PathBuf,
        /// Model file written by `train`.
        #[arg(long)]
        model_file: PathBuf,
        /// Test pairs to sample.
        #[arg(long, default_value_t = 10_000)]
        test: usize,
        /// Master seed; defaults to the seed recorded in the model file so
        /// the test split avoids the exact train pairs.
        #[arg(long)]
        seed: Option<u64>,
        /// Train split size used for disjointness reconstruction; defaults
        /// to the size recorded in the model file.
        #[arg(long)]
        train: Option<usize>,
        /// Force this fraction of linked pairs per split (stratified mode).
        #[arg(long)]
        stratify: Option<f64>,
        /// Write the ROC curve to this CSV file.
        #[arg(long)]
        roc: Option<PathBuf>,
        #[command(flatten)]
        shared: SharedModelArgs,
    },
    /// Print the conditional link probability of one node pair.
    Predict {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        model_file: PathBuf,
        /// First endpoint (external id from the edge-list file).
        u: u64,
        /// Second endpoint (external id from the edge-list file).
        v: u64,
        #[command(flatten)]
        shared: SharedModelArgs,
    },
}

fn load_graph(path: &Path) -> Result<UndirectedGraph> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    frg_core::load_edge_list(BufReader::new(file))
        .with_context(|| format!("cannot parse {}", path.display()))
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        // Ignore the error if a pool already exists (e.g. under tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    if let Err(error) = run(cli.command) {
        eprintln!("error: {error:#}");
        std::process::exit(1);
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Stats { graph } => stats(&graph),
        Command::Train {
            graph,
            model,
            train,
            seed,
            min_positives,
            stratify,
            out,
            shared,
        } => cmd_train(
            &graph,
            model,
            train,
            seed,
            min_positives,
            stratify,
            &out,
            &shared,
        ),
        Command::Evaluate {
            graph,
            model_file,
            test,
            seed,
            train,
            stratify,
            roc,
            shared,
        } => cmd_evaluate(
            &graph,
            &model_file,
            test,
            seed,
            train,
            stratify,
            roc.as_deref(),
            &shared,
        ),
        Command::Predict {
            graph,
            model_file,
            u,
            v,
            shared,
        } => cmd_predict(&graph, &model_file, u, v, &shared),
    }
}

fn stats(path: &Path) -> Result<()> {
    let graph = load_graph(path)?;
    let nodes = graph.node_count();
    let edges = graph.edge_count();
    let mean_degree = if nodes == 0 {
        0.0
    } else {
        2.0 * edges as f64 / nodes as f64
    };
    let components = if nodes == 0 {
        0
    } else {
        graph.connected_components().0
    };
    println!("nodes={nodes} edges={edges} mean_degree={mean_degree:.6} components={components}");
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_train(
    graph_path: &Path,
    kind: ModelKind,
    train_size: usize,
    seed: u64,
    min_positives: usize,
    stratify: Option<f64>,
    out: &Path,
    shared: &SharedModelArgs,
) -> Result<()> {
    if train_size == 0 {
        bail!("--train must be at least 1");
    }
    let graph = load_graph(graph_path)?;
    let spec = shared.spec(kind)?;
    // Sampling both splits keeps the pair streams identical to `evaluate`;
    // only the train half is used here.
    let mut config = SamplingConfig::new(train_size, 0, seed);
    config.min_positive = min_positives;
    config.stratify_positive_fraction = stratify;
    let (train, _) = sample_dataset(&graph, &config)?;
    let positives = train.iter().filter(|s| s.label).count();

    let model = TrainedModel::train(&spec, &train, shared.solver())
        .context("training failed")?;
    let meta = ModelMeta { seed, train_size };
    let file = File::create(out).with_context(|| format!("cannot create {}", out.display()))?;
    let mut writer = BufWriter::new(file);
    write_model(&mut writer, &model, &meta)?;
    writer.flush()?;

    println!("model={} positives={positives} train_size={train_size} seed={seed}", spec.name());
    match &model {
        TrainedModel::Frg(frg) => println!(
            "prior={:.6} bandwidth_pos={:.6} bandwidth_neg={:.6}",
            frg.prior_edge(),
            frg.kde_pos().bandwidth(),
            frg.kde_neg().bandwidth()
        ),
        TrainedModel::Erg(erg) => {
            let rendered: Vec<String> = erg.theta.iter().map(|t| format!("{t:.6}")).collect();
            println!("theta=[{}]", rendered.join(", "));
        }
        TrainedModel::Cws(cws) => {
            println!("delta={} theta_beta={:.6} beta={:.6}", cws.delta, cws.theta_beta, cws.beta())
        }
        TrainedModel::Cba(cba) => println!("alpha={:.6}", cba.alpha),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_evaluate(
    graph_path: &Path,
    model_path: &Path,
    test_size: usize,
    seed: Option<u64>,
    train_size: Option<usize>,
    stratify: Option<f64>,
    roc_path: Option<&Path>,
    shared: &SharedModelArgs,
) -> Result<()> {
    if test_size == 0 {
        bail!("--test must be at least 1");
    }
    let graph = load_graph(graph_path)?;
    let file = File::open(model_path)
        .with_context(|| format!("cannot open {}", model_path.display()))?;
    let (model, meta) = read_model(BufReader::new(file))
        .with_context(|| format!("cannot parse {}", model_path.display()))?;

    // Re-deriving the train pairs from the recorded seed and size keeps the
    // test split disjoint from what the model saw.
    let mut config = SamplingConfig::new(
        train_size.unwrap_or(meta.train_size),
        test_size,
        seed.unwrap_or(meta.seed),
    );
    config.stratify_positive_fraction = stratify;
    let (_, test) = sample_dataset(&graph, &config)?;

    let result = evaluate_model(&model, &test, shared.solver())?;
    if let Some(path) = roc_path {
        let file =
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        let mut writer = BufWriter::new(file);
        writeln!(writer, "fpr,tpr")?;
        for (fpr, tpr) in &result.roc_points {
            writeln!(writer, "{fpr:.9},{tpr:.9}")?;
        }
        writer.flush()?;
    }
    let positives = test.iter().filter(|s| s.label).count();
    println!("auc={:.6} positives={positives} scored={}", result.auc, result.scored.len());
    Ok(())
}

fn cmd_predict(
    graph_path: &Path,
    model_path: &Path,
    external_u: u64,
    external_v: u64,
    shared: &SharedModelArgs,
) -> Result<()> {
    let graph = load_graph(graph_path)?;
    let file = File::open(model_path)
        .with_context(|| format!("cannot open {}", model_path.display()))?;
    let (model, _) = read_model(BufReader::new(file))?;

    let resolve = |external: u64| {
        graph
            .resolve_external(external)
            .with_context(|| format!("node id {external} does not appear in the graph"))
    };
    let u = resolve(external_u)?;
    let v = resolve(external_v)?;
    if u == v {
        bail!("pair endpoints must differ");
    }
    let sample = frg_core::LabeledSample::from_graph(&graph, NodePair::new(u, v));
    let probability = model.score_sample(&sample, shared.solver())?;
    println!("probability={probability:.6}");
    Ok(())
}
