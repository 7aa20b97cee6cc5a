//! Command-line front end: generate, analyze, verify, tabulate, export.
//!
//! Contract: human text goes to stderr, machine output (JSON/CSV) to
//! stdout or `--out`, so pipelines compose. Exit codes are stable: 0 for
//! success (including a passing verification), 1 for runtime failures and
//! failed verifications, 2 for usage errors. Option precedence is
//! flag > config file > RIGLAB_SEED (seed only) > built-in default.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algorithms::{stats_for_family, stats_for_graph};
use crate::core::{graph_from_intervals, Graph, IntervalFamily};
use crate::error::Error;
use crate::generators::{
    gen_dot_product_dim, gen_gnp, gen_matching, gen_prisner, gen_scheinerman, gen_threshold,
};
use crate::montecarlo::{
    derive_trial_seed, empirical_cdf, run_experiment, Experiment, ExperimentConfig, Options,
};
use crate::oracle;
use crate::theory::{tabulate, CurveKind};

pub const ENV_SEED: &str = "RIGLAB_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "riglab",
    version,
    about = "Random interval graph laboratory: generators, exact invariants, and Monte Carlo verification"
)]
pub struct Cli {
    /// Flat key=value config file; explicit flags win over its entries.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Worker threads for Monte Carlo trials (default: all cores). Results
    /// do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Scheinerman,
    Matching,
    Prisner,
    Gnp,
    Dotprod,
    Threshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Edgelist,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample one family or graph and write it out.
    Gen {
        model: ModelName,
        #[arg(long)]
        n: Option<usize>,
        /// G(n,p) edge probability.
        #[arg(long)]
        p: Option<f64>,
        /// Prisner domain length (m >= 1).
        #[arg(long)]
        m: Option<f64>,
        /// Dot-product exponent (r >= 0).
        #[arg(long)]
        r: Option<f64>,
        /// Dot-product latent dimension; only 1 is supported.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Invariants of a stored family or graph, as JSON.
    Stats {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Also compute the exact diameter (all-pairs BFS; costly on large
        /// inputs).
        #[arg(long)]
        diameter: bool,
    },
    /// Run one Monte Carlo experiment against its theory value.
    Verify {
        experiment: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Override the experiment's default pass tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Write retained per-trial statistics as CSV.
        #[arg(long, value_name = "FILE")]
        samples: Option<PathBuf>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        epsilon: Option<f64>,
        /// Confidence level (0.95 or 0.99).
        #[arg(long)]
        level: Option<f64>,
        /// KS evaluation grid size.
        #[arg(long)]
        grid: Option<usize>,
        /// Total sampled triples for dotprod-clustering.
        #[arg(long)]
        triples: Option<u64>,
        /// Per-trial sample retention cap.
        #[arg(long = "sample-cap")]
        sample_cap: Option<u64>,
    },
    /// Exact matching-enumeration results as JSON (n <= 7).
    Oracle {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Tabulate a limit law as CSV, optionally overlaying an empirical CDF.
    Curve {
        #[arg(long)]
        which: Option<String>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Samples CSV from `verify --samples` to overlay as F_empirical.
        #[arg(long, value_name = "FILE")]
        empirical: Option<PathBuf>,
    },
}

/// CLI failure modes, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config entries, or argument validation: exit 2.
    Usage(String),
    /// Runtime failure (I/O, malformed inputs, trial failure): exit 1.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

const CONFIG_KEYS: [&str; 17] = [
    "n",
    "trials",
    "seed",
    "tolerance",
    "p",
    "m",
    "r",
    "d",
    "epsilon",
    "level",
    "grid",
    "triples",
    "sample-cap",
    "points",
    "format",
    "which",
    "threads",
];

/// Parses a flat key=value config: one pair per line, `#` comments and
/// blank lines ignored, keys restricted to the known option names.
pub fn parse_config_str(text: &str) -> Result<BTreeMap<String, String>, Error> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!(
                "config line {}: expected key=value, got '{line}'",
                lineno + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        if !CONFIG_KEYS.contains(&key) {
            return Err(Error::Parse(format!(
                "config line {}: unknown key '{key}' (known: {})",
                lineno + 1,
                CONFIG_KEYS.join(", ")
            )));
        }
        if value.is_empty() {
            return Err(Error::Parse(format!(
                "config line {}: empty value for '{key}'",
                lineno + 1
            )));
        }
        map.insert(key.to_string(), value.to_string());
    }
    Ok(map)
}

/// Option resolution across flag, config file, and environment.
struct Resolver {
    config: BTreeMap<String, String>,
}

impl Resolver {
    fn load(path: Option<&Path>) -> Result<Resolver, CliError> {
        let config = match path {
            None => BTreeMap::new(),
            Some(p) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| usage(format!("cannot read config {}: {e}", p.display())))?;
                parse_config_str(&text).map_err(usage)?
            }
        };
        Ok(Resolver { config })
    }

    fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.config.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| usage(format!("config key '{key}': {e}"))),
        }
    }

    fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.get(flag, key)?
            .ok_or_else(|| usage(format!("missing required option --{key}")))
    }

    /// Seed resolution: flag, then config, then RIGLAB_SEED, then 0.
    fn seed(&self, flag: Option<u64>) -> Result<u64, CliError> {
        if let Some(s) = self.get(flag, "seed")? {
            return Ok(s);
        }
        match std::env::var(ENV_SEED) {
            Ok(raw) => raw
                .parse::<u64>()
                .map_err(|e| usage(format!("{ENV_SEED}: {e}"))),
            Err(_) => Ok(0),
        }
    }
}

fn write_output(out: Option<&Path>, data: &str) -> Result<(), CliError> {
    // exactly one trailing newline whether the payload carries one or not
    let data = data.strip_suffix('\n').unwrap_or(data);
    match out {
        Some(path) => fs::write(path, format!("{data}\n"))
            .map_err(|e| runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{data}");
            Ok(())
        }
    }
}

fn edgelist(graph: &Graph) -> String {
    let mut out = format!("n {}\n", graph.n());
    for (i, j) in graph.edges() {
        writeln!(out, "{i} {j}").expect("writing to String cannot fail");
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    resolver: &Resolver,
    model: ModelName,
    n: Option<usize>,
    p: Option<f64>,
    m: Option<f64>,
    r: Option<f64>,
    d: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Option<OutputFormat>,
) -> Result<(), CliError> {
    let n = resolver.require(n, "n")?;
    let master = resolver.seed(seed)?;
    let format = match format {
        Some(f) => f,
        None => match resolver.get::<String>(None, "format")?.as_deref() {
            None | Some("json") => OutputFormat::Json,
            Some("edgelist") => OutputFormat::Edgelist,
            Some(other) => return Err(usage(format!("unknown format '{other}'"))),
        },
    };
    let trial_seed = derive_trial_seed(master, 0);

    enum Generated {
        Family(IntervalFamily),
        Graph(Graph),
    }
    let generated = match model {
        ModelName::Scheinerman => Generated::Family(gen_scheinerman(n, trial_seed).map_err(usage_or_runtime)?),
        ModelName::Matching => Generated::Family(gen_matching(n, trial_seed).map_err(usage_or_runtime)?),
        ModelName::Prisner => {
            let m = resolver.require(m, "m")?;
            Generated::Family(gen_prisner(n, m, trial_seed).map_err(usage_or_runtime)?)
        }
        ModelName::Gnp => {
            let p = resolver.require(p, "p")?;
            Generated::Graph(gen_gnp(n, p, trial_seed).map_err(usage_or_runtime)?)
        }
        ModelName::Dotprod => {
            let r = resolver.get(r, "r")?.unwrap_or(1.0);
            let d = resolver.get(d, "d")?.unwrap_or(1);
            Generated::Graph(
                gen_dot_product_dim(n, r, d, trial_seed)
                    .map_err(usage_or_runtime)?
                    .graph,
            )
        }
        ModelName::Threshold => Generated::Graph(gen_threshold(n, trial_seed).map_err(usage_or_runtime)?),
    };

    let (data, summary) = match (&generated, format) {
        (Generated::Family(f), OutputFormat::Json) => (
            crate::core::family_to_json(f),
            format!("{} intervals", f.n()),
        ),
        (Generated::Family(f), OutputFormat::Edgelist) => {
            let g = graph_from_intervals(f);
            let s = format!("{} vertices, {} edges", g.n(), g.edge_count());
            (edgelist(&g), s)
        }
        (Generated::Graph(g), OutputFormat::Json) => (
            crate::core::graph_to_json(g),
            format!("{} vertices, {} edges", g.n(), g.edge_count()),
        ),
        (Generated::Graph(g), OutputFormat::Edgelist) => (
            edgelist(g),
            format!("{} vertices, {} edges", g.n(), g.edge_count()),
        ),
    };
    let target = out
        .as_deref()
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "stdout".to_string());
    write_output(out.as_deref(), &data)?;
    eprintln!(
        "gen {} n={n} seed={master} -> {target} ({summary})",
        model_name(model)
    );
    Ok(())
}

fn model_name(m: ModelName) -> &'static str {
    match m {
        ModelName::Scheinerman => "scheinerman",
        ModelName::Matching => "matching",
        ModelName::Prisner => "prisner",
        ModelName::Gnp => "gnp",
        ModelName::Dotprod => "dotprod",
        ModelName::Threshold => "threshold",
    }
}

/// Library errors raised while validating generator parameters are usage
/// errors; anything else is a runtime failure.
fn usage_or_runtime(e: Error) -> CliError {
    match e {
        Error::Domain(_) | Error::TooLarge { .. } | Error::UnknownName { .. } => usage(e),
        other => runtime(other),
    }
}

fn cmd_stats(input: &Path, with_diameter: bool) -> Result<(), CliError> {
    let text = fs::read_to_string(input)
        .map_err(|e| runtime(format!("cannot read {}: {e}", input.display())))?;
    // parse structurally first so syntax errors carry line/column info
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| runtime(format!("{}: {e}", input.display())))?;
    let report = if value.get("intervals").is_some() {
        let family: IntervalFamily = serde_json::from_value(value)
            .map_err(|e| runtime(format!("{}: {e}", input.display())))?;
        stats_for_family(&family, with_diameter)
    } else if value.get("edges").is_some() {
        let graph: Graph = serde_json::from_value(value)
            .map_err(|e| runtime(format!("{}: {e}", input.display())))?;
        stats_for_graph(&graph, with_diameter)
    } else {
        return Err(runtime(format!(
            "{}: neither an interval family (no \"intervals\") nor a graph (no \"edges\")",
            input.display()
        )));
    };
    println!(
        "{}",
        serde_json::to_string(&report).expect("stats serialize")
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    resolver: &Resolver,
    experiment: &str,
    n: Option<usize>,
    trials: Option<u64>,
    seed: Option<u64>,
    tolerance: Option<f64>,
    out: Option<PathBuf>,
    samples: Option<PathBuf>,
    options: Options,
) -> Result<bool, CliError> {
    let experiment = Experiment::parse(experiment).map_err(usage)?;
    let cfg = ExperimentConfig {
        experiment,
        n: resolver.require(n, "n")?,
        trials: resolver.require(trials, "trials")?,
        master_seed: resolver.seed(seed)?,
        tolerance: resolver.get(tolerance, "tolerance")?,
        options: Options {
            p: resolver.get(options.p, "p")?,
            r: resolver.get(options.r, "r")?,
            epsilon: resolver.get(options.epsilon, "epsilon")?,
            level: resolver.get(options.level, "level")?,
            grid: resolver.get(options.grid, "grid")?,
            triples: resolver.get(options.triples, "triples")?,
            sample_cap: resolver.get(options.sample_cap, "sample-cap")?,
        },
    };
    let report = run_experiment(&cfg).map_err(usage_or_runtime)?;
    if let Some(path) = samples {
        match report.samples_csv() {
            Some(csv) => fs::write(&path, csv)
                .map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))?,
            None => eprintln!(
                "note: {} retains no per-trial samples; {} not written",
                report.experiment,
                path.display()
            ),
        }
    }
    let json = serde_json::to_string(&report).expect("report serialize");
    write_output(out.as_deref(), &json)?;
    eprintln!("{}", report.human_line());
    Ok(report.pass)
}

fn cmd_oracle(resolver: &Resolver, n: Option<usize>) -> Result<(), CliError> {
    let n = resolver.require(n, "n")?;
    let p_universal = oracle::exact_prob_universal(n).map_err(usage_or_runtime)?;
    let dist = oracle::exact_edge_count_distribution(n).map_err(usage_or_runtime)?;
    let (pu_num, pu_den) = oracle::rational_parts(&p_universal);
    let (mean_num, mean_den) = oracle::rational_parts(&dist.mean());
    let (var_num, var_den) = oracle::rational_parts(&dist.variance());
    let out = json!({
        "n": n,
        "matchings": oracle::double_factorial_odd(n),
        "p_universal": { "num": pu_num, "den": pu_den },
        "edge_mean": { "num": mean_num, "den": mean_den },
        "edge_var": { "num": var_num, "den": var_den },
    });
    println!("{out}");
    Ok(())
}

/// Parses a samples CSV as written by `verify --samples`: a `trial,value`
/// header followed by one row per trial.
pub fn parse_samples_csv(text: &str) -> Result<Vec<f64>, Error> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header.trim() == "trial,value" => {}
        other => {
            return Err(Error::Parse(format!(
                "samples CSV must start with 'trial,value', got {other:?}"
            )))
        }
    }
    let mut values = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (_, value) = line.split_once(',').ok_or_else(|| {
            Error::Parse(format!("samples CSV row {}: missing comma", lineno + 2))
        })?;
        let v: f64 = value.trim().parse().map_err(|e| {
            Error::Parse(format!("samples CSV row {}: {e}", lineno + 2))
        })?;
        if !v.is_finite() {
            return Err(Error::Parse(format!(
                "samples CSV row {}: non-finite value {v}",
                lineno + 2
            )));
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::Parse("samples CSV holds no rows".to_string()));
    }
    Ok(values)
}

fn cmd_curve(
    resolver: &Resolver,
    which: Option<String>,
    points: Option<usize>,
    out: Option<PathBuf>,
    empirical: Option<PathBuf>,
) -> Result<(), CliError> {
    let which = resolver.require(which, "which")?;
    let kind = CurveKind::parse(&which).map_err(usage)?;
    let points = resolver.get(points, "points")?.unwrap_or(101);
    let curve = tabulate(kind, points).map_err(usage)?;
    let data = match empirical {
        None => curve.to_csv(),
        Some(path) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| runtime(format!("cannot read {}: {e}", path.display())))?;
            let values = parse_samples_csv(&text).map_err(runtime)?;
            let ecdf = empirical_cdf(&values);
            let mut csv = String::from("x,F_theory,F_empirical\n");
            for &(x, f) in &curve.points {
                writeln!(csv, "{x:.16e},{f:.16e},{:.16e}", ecdf.eval(x))
                    .expect("writing to String cannot fail");
            }
            csv
        }
    };
    write_output(out.as_deref(), &data)?;
    eprintln!("curve {} ({} points)", kind.name(), points);
    Ok(())
}

/// Dispatches a parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let resolver = match Resolver::load(cli.config.as_deref()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return e.exit_code();
        }
    };
    let threads = match resolver.get(cli.threads, "threads") {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return e.exit_code();
        }
    };
    if let Some(k) = threads {
        if k == 0 {
            eprintln!("error: --threads must be at least 1");
            return 2;
        }
        // global pool; ignore the error when a pool already exists (tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
    let result: Result<bool, CliError> = match cli.command {
        Command::Gen {
            model,
            n,
            p,
            m,
            r,
            d,
            seed,
            out,
            format,
        } => cmd_gen(&resolver, model, n, p, m, r, d, seed, out, format).map(|_| true),
        Command::Stats { input, diameter } => cmd_stats(&input, diameter).map(|_| true),
        Command::Verify {
            experiment,
            n,
            trials,
            seed,
            tolerance,
            out,
            samples,
            p,
            r,
            epsilon,
            level,
            grid,
            triples,
            sample_cap,
        } => cmd_verify(
            &resolver,
            &experiment,
            n,
            trials,
            seed,
            tolerance,
            out,
            samples,
            Options {
                p,
                r,
                epsilon,
                level,
                grid,
                triples,
                sample_cap,
            },
        ),
        Command::Oracle { n } => cmd_oracle(&resolver, n).map(|_| true),
        Command::Curve {
            which,
            points,
            out,
            empirical,
        } => cmd_curve(&resolver, which, points, out, empirical).map(|_| true),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1, // verification ran and failed
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}
