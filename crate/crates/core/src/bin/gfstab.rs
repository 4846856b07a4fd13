use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use gfstab::experiments::{
    self, detect_table, read_consistency_csv, read_csv, summarize, summarize_consistency,
    with_workers, write_consistency_csv, write_consistency_summary_csv, write_csv,
    write_summary_csv, ExperimentConfig, TableKind,
};
use gfstab::filters::FilterSpec;
use gfstab::graph::{load_edge_list, Graph, Gso};
use gfstab::spectral::eigh;
use gfstab::stability::{theorem1_bound, EtaMode};
use gfstab::{Error, Result};

#[derive(Parser)]
#[command(
    name = "gfstab",
    version,
    about = "Graph filter stability under edge rewiring"
)]
struct Cli {
    /// Overrides the master seed of the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; all cores by default.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// 20 trials and no graph above 1000 nodes.
    #[arg(long)]
    quick: bool,
    /// Append a wall-clock column (output is then run-dependent).
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Planted-partition Monte Carlo.
    Synthetic(RunArgs),
    /// Count-preserving rewiring of a network with communities.
    Real {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        edges: Option<PathBuf>,
        #[arg(long)]
        communities: Option<PathBuf>,
    },
    /// Filter distance and bound breakdown between two edge lists.
    Distance {
        #[arg(long)]
        edges: PathBuf,
        #[arg(long)]
        edges2: PathBuf,
        #[arg(long, default_value = "unnorm")]
        gso: Gso,
        /// Filter as JSON, e.g. '{"kind":"resolvent","alpha":1}'.
        #[arg(long)]
        filter: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value = "empirical")]
        eta_mode: EtaMode,
    },
    /// Eigenvector, eigenvalue and normalized-Laplacian drift versus n.
    Consistency(RunArgs),
    /// Group statistics of a results or consistency table.
    Summarize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load_config(run: &RunArgs, seed: Option<u64>) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::load(&run.config)?;
    if let Some(s) = seed {
        cfg.master_seed = s;
    }
    if run.quick {
        cfg = cfg.quick();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn reconcile(a: Graph, b: Graph) -> Result<(Graph, Graph)> {
    let n = a.n().max(b.n());
    let widen = |g: Graph| {
        if g.n() == n {
            Ok(g)
        } else {
            Graph::new(n, g.edges().iter().copied())
        }
    };
    Ok((widen(a)?, widen(b)?))
}

fn distance(
    edges: &Path,
    edges2: &Path,
    gso: Gso,
    filter: &str,
    k: usize,
    eta_mode: EtaMode,
) -> Result<()> {
    let f: FilterSpec =
        serde_json::from_str(filter).map_err(|e| Error::Config(format!("--filter: {e}")))?;
    f.validate()?;
    let (g, ghat) = reconcile(load_edge_list(edges, true)?, load_edge_list(edges2, true)?)?;
    let e = eigh(&gso.build(&g)?)?;
    let ehat = eigh(&gso.build(&ghat)?)?;
    let b = theorem1_bound(&f, &e, &ehat, k, eta_mode, g.n())?;
    println!("distance {}", experiments::format_f64(b.distance));
    println!(
        "{}",
        serde_json::to_string_pretty(&b).expect("breakdown is serializable")
    );
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let threads = cli.threads;
    match cli.command {
        Command::Synthetic(run) => {
            let cfg = load_config(&run, cli.seed)?;
            let t = with_workers(threads, || experiments::run_synthetic(&cfg))??;
            write_csv(&t, &run.out, run.timings)?;
            info!("wrote {} rows to {}", t.len(), run.out.display());
        }
        Command::Real {
            run,
            edges,
            communities,
        } => {
            let cfg = load_config(&run, cli.seed)?;
            let edges = edges
                .or_else(|| cfg.edges.clone())
                .ok_or_else(|| Error::Config("no edge list given".into()))?;
            let communities = communities
                .or_else(|| cfg.communities.clone())
                .ok_or_else(|| Error::Config("no community file given".into()))?;
            let (g, membership) = experiments::load_real(&edges, &communities)?;
            info!("loaded {} nodes, {} edges", g.n(), g.num_edges());
            let t = with_workers(threads, || experiments::run_real(&cfg, &g, &membership))??;
            write_csv(&t, &run.out, run.timings)?;
            info!("wrote {} rows to {}", t.len(), run.out.display());
        }
        Command::Distance {
            edges,
            edges2,
            gso,
            filter,
            k,
            eta_mode,
        } => distance(&edges, &edges2, gso, &filter, k, eta_mode)?,
        Command::Consistency(run) => {
            let cfg = load_config(&run, cli.seed)?;
            let t = with_workers(threads, || experiments::run_consistency(&cfg))??;
            write_consistency_csv(&t, &run.out, run.timings)?;
            info!("wrote {} rows to {}", t.len(), run.out.display());
        }
        Command::Summarize { input, out } => match detect_table(&input)? {
            TableKind::Results => write_summary_csv(&summarize(&read_csv(&input)?), &out)?,
            TableKind::Consistency => write_consistency_summary_csv(
                &summarize_consistency(&read_consistency_csv(&input)?),
                &out,
            )?,
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = if cli.verbose { "debug" } else { "info" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
