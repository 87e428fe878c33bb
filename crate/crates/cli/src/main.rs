use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use w2pack::bench::{
    emit_performance_profiles, generate_weights, read_metis, read_records, run_once, summarize,
    write_metis, write_records, write_solution, RunSettings, SolverChoice, WeightKind,
};
use w2pack::mem::CountingAlloc;
use w2pack::reductions::ConfigName;
use w2pack::{reduce_and_transform, WeightedGraph};

#[global_allocator]
static ALLOC: CountingAlloc = CountingAlloc;

#[derive(Parser)]
#[command(name = "w2pack", version, about = "Maximum weight 2-packing set solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one graph and report the result.
    Run(RunArgs),
    /// Performance profile CSV from JSON-lines run records.
    Profile {
        /// Record files; all records are pooled.
        #[arg(required = true)]
        records: Vec<PathBuf>,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a graph and write the squared kernel as METIS.
    Transform {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "file")]
        weights: String,
        #[arg(long, default_value = "strong")]
        config: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    /// METIS graph file.
    #[arg(long)]
    graph: PathBuf,
    /// unit, uniform, geometric, degree, hybrid or file.
    #[arg(long, default_value = "file")]
    weights: String,
    /// full, fast, strong, core or transform.
    #[arg(long, default_value = "strong")]
    config: String,
    /// peel, drp-ls, drp-exact, drp-nocore, exact-pipeline or oracle.
    #[arg(long, default_value = "drp-ls")]
    solver: String,
    /// Seconds per run.
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON-lines record output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Solution output, one vertex id per line.
    #[arg(long)]
    solution_out: Option<PathBuf>,
    /// Runs with seeds `seed..seed+repeat`.
    #[arg(long, default_value_t = 1)]
    repeat: u64,
}

/// A run that produced an infeasible solution.
#[derive(Debug)]
struct Infeasible(String);

impl std::fmt::Display for Infeasible {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "infeasible solution: {}", self.0)
    }
}

impl std::error::Error for Infeasible {}

fn load_graph(path: &Path, weights: &str, seed: u64) -> Result<WeightedGraph> {
    let kind: WeightKind = weights.parse()?;
    let parsed = read_metis(path)?;
    let g = generate_weights(&parsed.graph, kind, seed, parsed.has_vertex_weights)
        .with_context(|| format!("{}", path.display()))?;
    Ok(g)
}

fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn run(args: RunArgs) -> Result<()> {
    let config: ConfigName = args.config.parse()?;
    let solver: SolverChoice = args.solver.parse()?;
    if !(args.time_limit.is_finite() && args.time_limit > 0.0) {
        bail!("--time-limit must be a positive number of seconds");
    }
    if args.repeat == 0 {
        bail!("--repeat must be at least 1");
    }
    let g = load_graph(&args.graph, &args.weights, args.seed)?;
    let name = instance_name(&args.graph);
    let mut records = Vec::new();
    let mut best = None;
    for seed in args.seed..args.seed + args.repeat {
        let settings = RunSettings::new(config, solver, Duration::from_secs_f64(args.time_limit), seed);
        let out = run_once(&g, &name, &settings)?;
        let r = &out.record;
        println!(
            "{} {} {} seed={} weight={} time_to_best={:.3}s total={:.3}s n_kernel={} m_kernel_square={} offset={} fully_reduced={} proven_optimal={} verified={}",
            r.instance, r.solver, r.config, r.seed, r.weight, r.time_to_best, r.total_seconds,
            r.n_kernel, r.m_kernel_square, r.offset, r.fully_reduced, r.proven_optimal, r.verified
        );
        if !r.verified {
            return Err(Infeasible(format!("{} seed {}", solver, seed)).into());
        }
        if best.as_ref().is_none_or(|(w, _)| r.weight > *w) {
            best = Some((r.weight, out.solution.clone()));
        }
        records.push(out.record);
    }
    if args.repeat > 1 {
        let s = summarize(&records);
        println!(
            "summary runs={} geomean_weight={:.3} geomean_time_to_best={:.3}s geomean_total={:.3}s",
            s.runs, s.weight, s.time_to_best, s.total_seconds
        );
    }
    if let Some(path) = &args.out {
        let mut w = create(path)?;
        write_records(&mut w, &records)?;
        w.flush()?;
    }
    if let (Some(path), Some((_, solution))) = (&args.solution_out, best) {
        std::fs::write(path, write_solution(solution.vertices()))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn profile(paths: &[PathBuf], out: Option<&Path>) -> Result<()> {
    let mut records = Vec::new();
    for p in paths {
        let f = File::open(p).with_context(|| format!("cannot open {}", p.display()))?;
        records.extend(read_records(BufReader::new(f)).with_context(|| format!("{}", p.display()))?);
    }
    let csv = emit_performance_profiles(&records)?;
    match out {
        Some(path) => std::fs::write(path, csv).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn transform(graph: &Path, weights: &str, config: &str, seed: u64, out: &Path) -> Result<()> {
    let config: ConfigName = config.parse()?;
    let g = load_graph(graph, weights, seed)?;
    let (inst, _, stats) = reduce_and_transform(g, config, seed);
    std::fs::write(out, write_metis(&inst.graph, true))
        .with_context(|| format!("cannot write {}", out.display()))?;
    println!(
        "config={} n_square={} m_square={} n_kernel_square={} m_kernel_square={} offset={} fully_reduced={} reduce={:.3}s transform={:.3}s",
        stats.config, stats.n_g2, stats.m_g2, stats.n_k2, stats.m_k2, stats.offset,
        stats.fully_reduced, stats.reduce_time.as_secs_f64(), stats.transform_time.as_secs_f64()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Profile { records, out } => profile(&records, out.as_deref()),
        Command::Transform {
            graph,
            weights,
            config,
            seed,
            out,
        } => transform(&graph, &weights, &config, seed, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Infeasible>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
