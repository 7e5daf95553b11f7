//! `queuelab` command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification or cache check fails,
//! 2 on usage or input errors.

use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use queuelab::bounds::{self, FactorialForm, KQUEUE_PROOF_CONSTANT};
use queuelab::census::{self, Census, CensusCache, CensusKind, CensusTable};
use queuelab::experiment::{self, ExperimentConfig};
use queuelab::layout::{self, SearchOptions, DEFAULT_NODE_BUDGET};
use queuelab::{verify, Execution, LabelledGraph, OrderedGraph};

#[derive(Parser)]
#[command(name = "queuelab", version, about = "Queue layouts of graphs")]
struct Cli {
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Largest rainbow of an ordered graph, with a certificate.
    Rainbow(GraphArg),
    /// Optimal queue partition of an ordered graph.
    Partition(GraphArg),
    /// Queue-number of a simple labelled graph.
    QueueNumber(QueueNumberArgs),
    /// Exact counts of ordered graphs by edges and rainbow size.
    Census(CensusArgs),
    /// Exhaustive checks of the counting lemmas.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Largest queue on n vertices.
    MaxEdges {
        #[arg(long)]
        n: u32,
    },
    /// Nesting-free edge patterns between two doubled vertices.
    DoublingPatterns {
        /// Patterns inside a single doubled vertex instead.
        #[arg(long = "loop")]
        is_loop: bool,
    },
    /// Random simple regular graph from the pairing model.
    GenRegular {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        delta: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Closed-form bounds at the given parameters.
    Bounds(BoundsArgs),
    /// Queue-numbers of random regular graphs as CSV.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GraphArg {
    /// Edge-list file: vertex count, then one `u v` pair per line.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct QueueNumberArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Exact branch and bound instead of the heuristic.
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 100)]
    restarts: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, requires = "m")]
    k: Option<u32>,
    /// Exact class sizes, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["m", "k"])]
    sizes: Option<Vec<u32>>,
    /// Cache file.
    #[arg(long, env = "QUEUELAB_CACHE", default_value = "census.cache")]
    cache: PathBuf,
    /// Recompute even when cached, and check the cached value.
    #[arg(long)]
    recompute: bool,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Counting lemmas on all ordered graphs up to `--max-n` vertices.
    Lemmas {
        #[arg(long, default_value_t = 5)]
        max_n: u32,
    },
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    delta: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, requires = "m")]
    k: Option<u32>,
    /// The absolute constant.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    delta: u32,
    /// Vertex counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<u32>,
    #[arg(long, default_value_t = 1)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 12)]
    exact_limit: u32,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 200)]
    restarts: u32,
    /// Fill the runtime column (output is then no longer reproducible).
    #[arg(long)]
    timing: bool,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

/// A check ran and failed; exit status 1.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match run(cli.command, exec) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let failed = e.downcast_ref::<CheckFailed>().is_some()
                || matches!(e.downcast_ref::<queuelab::Error>(), Some(queuelab::Error::CacheMismatch { .. }));
            ExitCode::from(if failed { 1 } else { 2 })
        }
    }
}

fn run(command: Command, exec: Execution) -> anyhow::Result<()> {
    let census = Census { execution: exec, ..Census::default() };
    match command {
        Command::Rainbow(a) => rainbow(&a.graph),
        Command::Partition(a) => partition(&a.graph),
        Command::QueueNumber(a) => queue_number(&a, exec),
        Command::Census(a) => census_cmd(&a, &census),
        Command::Verify { what: VerifyCommand::Lemmas { max_n } } => verify_lemmas(&census, max_n),
        Command::MaxEdges { n } => max_edges(&census, n),
        Command::DoublingPatterns { is_loop } => doubling_patterns(is_loop),
        Command::GenRegular { n, delta, seed } => gen_regular(n, delta, seed),
        Command::Bounds(a) => bounds_cmd(&a),
        Command::Experiment(a) => experiment_cmd(&a, exec),
    }
}

fn open(path: &Path) -> anyhow::Result<BufReader<File>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(BufReader::new(file))
}

fn read_ordered(path: &Path) -> anyhow::Result<OrderedGraph> {
    queuelab::read_ordered(open(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_simple(path: &Path) -> anyhow::Result<LabelledGraph> {
    queuelab::read_labelled(open(path)?, true).with_context(|| format!("in {}", path.display()))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn rainbow(path: &Path) -> anyhow::Result<()> {
    let g = read_ordered(path)?;
    let (size, cert) = queuelab::max_rainbow(&g);
    println!("max rainbow: {size}");
    println!("certificate: {}", join(&cert.edges, " "));
    Ok(())
}

fn partition(path: &Path) -> anyhow::Result<()> {
    let g = read_ordered(path)?;
    let a = queuelab::greedy_partition(&g);
    if !queuelab::validate_assignment(&a) {
        return Err(CheckFailed("greedy partition has a nested pair".into()).into());
    }
    println!("queues: {}", a.k());
    for q in 1..=a.k() {
        println!("queue {q}: {}", join(a.queue(q), " "));
    }
    Ok(())
}

fn queue_number(a: &QueueNumberArgs, exec: Execution) -> anyhow::Result<()> {
    let g = read_simple(&a.graph)?;
    let r = if a.exact {
        let opts = SearchOptions { node_budget: a.budget, execution: exec, ..SearchOptions::default() };
        layout::exact_queue_number_with(&g, &opts)?
    } else {
        layout::heuristic_queue_number(&g, a.restarts, a.seed)?
    };
    let status = match (a.exact, r.exact) {
        (true, true) => "exact",
        (true, false) => "upper bound, node budget exhausted",
        _ => "upper bound, heuristic",
    };
    println!("queue-number: {} ({status})", r.queue_number);
    println!("order: {}", join(&r.witness_order, " "));
    if a.exact {
        println!("nodes: {}", r.nodes);
    }
    for q in 1..=r.witness_assignment.k() {
        println!("queue {q}: {}", join(r.witness_assignment.queue(q), " "));
    }
    Ok(())
}

fn census_cmd(a: &CensusArgs, census: &Census) -> anyhow::Result<()> {
    let n = a.n;
    let (probe, label) = match (&a.sizes, a.m, a.k) {
        (Some(sizes), _, _) => (
            CensusTable::new(CensusKind::KqueuesBySizes, n, 0u32.into(), "partition search").with_sizes(sizes),
            format!("g({n}; {})", join(sizes, ",")),
        ),
        (None, Some(m), Some(k)) => (
            CensusTable::new(CensusKind::KqueuesByNMK, n, 0u32.into(), "rainbow table").with_m(m).with_k(k),
            format!("g({n},{m},{k})"),
        ),
        (None, Some(m), None) => (
            CensusTable::new(CensusKind::QueuesByNM, n, 0u32.into(), "queue backtracking").with_m(m),
            format!("g({n},{m})"),
        ),
        (None, None, _) => (
            CensusTable::new(CensusKind::QueuesByN, n, 0u32.into(), "queue backtracking"),
            format!("g({n})"),
        ),
    };
    let mut cache = CensusCache::open(&a.cache)?;
    if !a.recompute {
        if let Some(hit) = cache.lookup(&probe) {
            println!("{label} = {} (cached)", hit.count);
            return Ok(());
        }
    }
    let count = match probe.kind {
        CensusKind::KqueuesBySizes => census.count_kqueues_with_sizes(n, probe.sizes.as_deref().unwrap_or(&[]))?,
        CensusKind::KqueuesByNMK => census.count_kqueues(n, a.m.unwrap_or(0), a.k.unwrap_or(0))?,
        CensusKind::QueuesByNM => census.count_queues_by_edges(n, a.m.unwrap_or(0))?,
        _ => census.enumerate_queues(n)?,
    };
    println!("{label} = {count}");
    cache.record(CensusTable { count, ..probe })?;
    Ok(())
}

fn verify_lemmas(census: &Census, max_n: u32) -> anyhow::Result<()> {
    let report = verify::verify_lemmas(census, max_n)?;
    for check in &report.checks {
        println!("{check}");
    }
    if report.all_passed() {
        println!("all checks passed, n <= {max_n}");
        Ok(())
    } else {
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        Err(CheckFailed(format!("{failed} lemma check(s) failed")).into())
    }
}

fn max_edges(census: &Census, n: u32) -> anyhow::Result<()> {
    let r = census::max_queue_edges(census, n)?;
    println!("max edges: {} (2n-1 = {})", r.max_edges, 2 * n - 1);
    println!("witness: {}", join(r.witness.edges(), " "));
    println!("edge sums distinct: {}", r.sums_distinct);
    if r.holds() {
        Ok(())
    } else {
        Err(CheckFailed(format!("counterexample: n={n} max_edges={}", r.max_edges)).into())
    }
}

fn doubling_patterns(is_loop: bool) -> anyhow::Result<()> {
    let patterns = census::doubling_patterns(is_loop);
    println!("{} patterns", patterns.len());
    for p in &patterns {
        println!("{}", join(&p.edges, " "));
    }
    Ok(())
}

fn gen_regular(n: u32, delta: u32, seed: u64) -> anyhow::Result<()> {
    let s = queuelab::gen_regular(n, delta, seed)?;
    if !queuelab::degree_check(&s.graph, delta) {
        return Err(CheckFailed("generated graph is not regular".into()).into());
    }
    println!("# {delta}-regular, seed {seed}, {} rejected pairings", s.rejections);
    print!("{}", s.graph.to_text());
    Ok(())
}

fn bounds_cmd(a: &BoundsArgs) -> anyhow::Result<()> {
    let (n, c) = (a.n, a.c);
    if !c.is_finite() || c <= 0.0 {
        bail!("--c must be positive");
    }
    if n == 0 {
        bail!("--n must be positive");
    }
    println!("n = {n}, c = {c}");
    if let Some(delta) = a.delta {
        if delta == 0 {
            bail!("--delta must be positive");
        }
        println!("delta = {delta}");
        println!("ln regular lower bound (n/3delta)^(delta n/2): {:.6}", bounds::regular_count_lower_bound_log(n, delta));
        println!("universal upper bound e*sqrt(delta n/2): {:.6}", bounds::universal_upper(n, delta));
        if delta >= 3 {
            println!("closed-form lower bound: {:.6}", bounds::theorem_lower(n, delta, c));
            println!("smallest k, n^n form: {}", bounds::solve_min_k(n, delta, c));
            println!("smallest k, n! form: {}", bounds::solve_min_k_with(n, delta, c, FactorialForm::Exact));
        }
    }
    if let Some(m) = a.m {
        println!("m = {m}");
        println!("ln C(n,2m) c^(2m) or c^n: {:.6}", bounds::queue_edges_bound_log(n, m, c));
        if let Some(k) = a.k {
            let kq = bounds::kqueue_count_bound_log(n, m, k, c)?;
            println!("k = {k}");
            println!("ln (ckn/m)^(2m): {kq:.6}");
            println!("ln (ckn/m)^(2m) n!: {:.6}", bounds::labelled_count_bound_log(n, m, k, c)?);
            println!("proof constant 2e*121 = {KQUEUE_PROOF_CONSTANT:.6}");
        }
    }
    Ok(())
}

fn experiment_cmd(a: &ExperimentArgs, exec: Execution) -> anyhow::Result<()> {
    let config = ExperimentConfig {
        exact_limit: a.exact_limit,
        node_budget: a.budget,
        restarts: a.restarts,
        timing: a.timing,
        execution: exec,
        ..ExperimentConfig::new(a.delta, a.n_list.clone(), a.samples, a.seed)
    };
    let rows = experiment::run_experiment(&config)?;
    let csv = experiment::to_csv(&rows);
    match &a.out {
        Some(path) => fs::write(path, &csv).with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().write_all(csv.as_bytes())?,
    }
    if let Some(path) = &a.svg {
        fs::write(path, experiment::to_svg(&rows)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    if let Some(r) = rows.iter().find(|r| !r.within_upper()) {
        return Err(CheckFailed(format!(
            "counterexample: n={} seed={} queue_number={} upper={:.6}",
            r.n,
            r.seed,
            r.queue_number.unwrap_or(0),
            r.universal_upper
        ))
        .into());
    }
    if a.out.is_some() {
        let failed = rows.iter().filter(|r| r.queue_number.is_none()).count();
        eprintln!("{} rows, {failed} without a queue-number", rows.len());
    }
    Ok(())
}
