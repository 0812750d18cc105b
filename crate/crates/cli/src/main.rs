use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use posetprod::antichain::max_antichain_within;
use posetprod::entropy::greedy_point;
use posetprod::families::{multiselection, Family};
use posetprod::frank_wolfe::{entropy_exact, EntropyMode, SolverOptions};
use posetprod::linext::{count_linear_extensions, itlb, BRUTE_FORCE_LIMIT};
use posetprod::oracle::parse_permutation;
use posetprod::report::{run_bench, BenchConfig, BenchReport};
use posetprod::{
    greedy_antichain_decomposition, verify_production, ComparisonOracle, PivotRule, Poset, Producer,
};

/// Produce partial orders from unknown totally ordered data with few comparisons.
#[derive(Parser)]
#[command(name = "posetprod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a poset of a named family in the text format.
    Gen(GenArgs),
    /// Print the greedy-point entropy and, for small posets, the exact entropy.
    Entropy {
        #[arg(long)]
        poset: PathBuf,
        /// Duality-gap tolerance in bits.
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long, default_value_t = 200_000)]
        iters: usize,
    },
    /// Compute the greedy weak-order extension and its trace.
    Extend {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Produce the poset from a hidden order given as a file or drawn from a seed.
    Produce {
        #[arg(long)]
        poset: PathBuf,
        /// Permutation file: element i of T has rank hidden[i]. The seed
        /// still drives pivot choice.
        #[arg(long)]
        hidden: Option<PathBuf>,
        #[arg(long, env = "POSET_PRODUCE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Pivot::Random)]
        pivot: Pivot,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run production trials over family specs and report comparisons against bounds.
    Bench {
        /// Family specs such as chain:8, heap:3, selection:9:3,
        /// multiselection:10:3,5, random:12:0.3:7, gk:3.
        #[arg(long = "family", required = true, num_args = 1..)]
        families: Vec<String>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Pivot::Random)]
        pivot: Pivot,
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the core invariants over a built-in corpus of small posets.
    Selfcheck {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
}

#[derive(clap::Args)]
struct GenArgs {
    /// Family kind, or a full spec such as random:12:0.3:7.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    /// Rank for selection, level for gk.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    depth: Option<u32>,
    /// Comma-separated cut ranks for multiselection.
    #[arg(long, value_delimiter = ',')]
    ranks: Vec<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pivot {
    Random,
    Mom,
}

impl Pivot {
    fn rule(self, seed: u64) -> PivotRule {
        match self {
            Pivot::Random => PivotRule::Random { seed },
            Pivot::Mom => PivotRule::MedianOfMedians,
        }
    }
}

/// A broken internal invariant, as opposed to bad input.
#[derive(Debug)]
struct Internal(String);

impl std::fmt::Display for Internal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "internal check failed: {}", self.0)
    }
}

impl std::error::Error for Internal {}

fn ensure_internal(cond: bool, what: impl FnOnce() -> String) -> anyhow::Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Internal(what()).into())
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
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Internal>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn read_poset(path: &Path) -> anyhow::Result<Poset> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Poset::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Gen(args) => gen(args),
        Command::Entropy { poset, tol, iters } => entropy(&poset, tol, iters),
        Command::Extend { poset, format } => extend(&poset, format),
        Command::Produce {
            poset,
            hidden,
            seed,
            pivot,
            format,
        } => produce(&poset, hidden.as_deref(), seed, pivot, format),
        Command::Bench {
            families,
            trials,
            seed,
            pivot,
            format,
            out,
        } => bench(&families, trials, seed, pivot, format, out.as_deref()),
        Command::Selfcheck { max_n } => selfcheck(max_n),
    }
}

fn gen(args: GenArgs) -> anyhow::Result<()> {
    let need_n = || args.n.ok_or_else(|| anyhow!("--n is required for {}", args.family));
    let family = match args.family.as_str() {
        "chain" => Family::Chain(need_n()?),
        "antichain" => Family::Antichain(need_n()?),
        "selection" => Family::Selection {
            n: need_n()?,
            k: args.k.ok_or_else(|| anyhow!("--k is required for selection"))?,
        },
        "multiselection" => {
            let n = need_n()?;
            multiselection(n, &args.ranks)?;
            Family::Multiselection { n, ranks: args.ranks.clone() }
        }
        "heap" => Family::Heap(args.depth.ok_or_else(|| anyhow!("--depth is required for heap"))?),
        "random" => Family::Random {
            n: need_n()?,
            p: args.p.ok_or_else(|| anyhow!("--p is required for random"))?,
            seed: args.seed,
        },
        "gk" => Family::Gk(args.k.ok_or_else(|| anyhow!("--k is required for gk"))? as u32),
        spec => spec.parse::<Family>()?,
    };
    let text = format!("# {family}\n{}", family.build()?.to_text());
    emit(args.out.as_deref(), &text)
}

fn entropy(path: &Path, tol: f64, iters: usize) -> anyhow::Result<()> {
    if tol.is_nan() || tol <= 0.0 {
        bail!("--tol must be positive");
    }
    let p = read_poset(path)?;
    let dec = greedy_antichain_decomposition(&p);
    println!("n {}", p.len());
    println!("greedy {:.4}", greedy_point(&dec).entropy());
    if p.len() <= BRUTE_FORCE_LIMIT {
        let opts = SolverOptions {
            max_iters: iters,
            tol,
            ..SolverOptions::default()
        };
        let est = entropy_exact(&p, EntropyMode::Comparability, &opts)?;
        println!("exact {:.4}", est.value);
        println!("gap {:.2e}", est.gap);
        if !est.converged {
            println!("converged false");
        }
        println!("itlb {:.4}", itlb(&p)?);
    } else {
        println!("exact skipped (n above {BRUTE_FORCE_LIMIT})");
    }
    Ok(())
}

fn extend(path: &Path, format: Format) -> anyhow::Result<()> {
    let p = read_poset(path)?;
    let producer = Producer::new(p)?;
    let ext = producer.extension();
    ensure_internal(ext.weak.extends_poset(producer.poset()), || {
        "weak order does not extend the poset".into()
    })?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&ext.summary())?),
        Format::Text => {
            let list = |sets: &[Vec<usize>]| {
                sets.iter()
                    .map(|s| format!("{s:?}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            for (i, layer) in ext.weak.layers().iter().enumerate() {
                println!("layer {i}: {layer:?}");
            }
            println!("entropy greedy {:.4} weak {:.4}", ext.trace.point.entropy(), ext.weak.entropy());
            println!("first {}", list(ext.trace.first.sets()));
            for v in 0..ext.interval.len() {
                println!("interval {v} ({}, {})", ext.interval.left()[v], ext.interval.right()[v]);
            }
            println!("second {}", list(ext.trace.second.sets()));
            println!("sigma {:?}", ext.sigma);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ProduceOutput {
    pi: Vec<usize>,
    comparisons: u64,
    verified: bool,
}

fn produce(path: &Path, hidden: Option<&Path>, seed: u64, pivot: Pivot, format: Format) -> anyhow::Result<()> {
    let p = read_poset(path)?;
    let mut oracle = match hidden {
        Some(file) => {
            let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let perm = parse_permutation(&text).with_context(|| format!("parsing {}", file.display()))?;
            if perm.len() != p.len() {
                bail!("hidden order has {} elements, poset has {}", perm.len(), p.len());
            }
            ComparisonOracle::new(perm)?
        }
        None => ComparisonOracle::from_seed(p.len(), seed),
    };
    let producer = Producer::new(p)?;
    let prod = producer.run(&mut oracle, pivot.rule(seed))?;
    let verified = verify_production(producer.poset(), oracle.hidden(), &prod.pi)?;
    ensure_internal(verified, || "production violates the poset".into())?;
    ensure_internal(prod.comparisons == oracle.count(), || "comparison count mismatch".into())?;
    let out = ProduceOutput {
        pi: prod.pi,
        comparisons: prod.comparisons,
        verified,
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string(&out)?),
        Format::Text => {
            let pi: Vec<String> = out.pi.iter().map(usize::to_string).collect();
            println!("pi {}", pi.join(" "));
            println!("comparisons {}", out.comparisons);
            println!("verified {}", out.verified);
        }
    }
    Ok(())
}

fn bench(
    specs: &[String],
    trials: usize,
    seed: u64,
    pivot: Pivot,
    format: ReportFormat,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let families = specs
        .iter()
        .map(|s| s.parse::<Family>())
        .collect::<Result<Vec<_>, _>>()?;
    let config = BenchConfig {
        trials,
        seed,
        median_of_medians: matches!(pivot, Pivot::Mom),
    };
    let report = run_bench(&families, &config)?;
    let text = match format {
        ReportFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
        ReportFormat::Csv => to_csv(&report)?,
    };
    emit(out, &text)
}

fn to_csv(report: &BenchReport) -> anyhow::Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in &report.rows {
        writer.serialize(row)?;
    }
    Ok(String::from_utf8(writer.into_inner()?)?)
}

fn selfcheck(max_n: usize) -> anyhow::Result<()> {
    if max_n > 9 {
        bail!("--max-n above 9 makes the exhaustive checks too slow");
    }
    let mut posets = Vec::new();
    for n in 1..=max_n {
        posets.push(Poset::chain(n));
        posets.push(Poset::antichain(n));
        for seed in 0..10 {
            posets.push(posetprod::families::random(n, 0.1 * (seed % 8 + 1) as f64, seed)?);
        }
    }
    let mut runs = 0;
    for p in &posets {
        let dec = greedy_antichain_decomposition(p);
        let mut rest: Vec<usize> = (0..p.len()).collect();
        for set in dec.sets() {
            let best = max_antichain_within(p, &rest, None, BRUTE_FORCE_LIMIT)?;
            ensure_internal(p.is_antichain(set) && set.len() as f64 == best.weight, || {
                format!("decomposition is not greedy maximum on {}", p.to_text())
            })?;
            rest.retain(|v| !set.contains(v));
        }
        let producer = Producer::new(p.clone())?;
        let w = producer.weak().to_poset();
        ensure_internal(w.extends(p)?, || format!("extension fails on {}", p.to_text()))?;
        ensure_internal(
            count_linear_extensions(&w)?.value() <= count_linear_extensions(p)?.value(),
            || "extension has more linear extensions".into(),
        )?;
        for seed in 0..20 {
            let mut oracle = ComparisonOracle::from_seed(p.len(), seed);
            let prod = producer.run(&mut oracle, PivotRule::Random { seed })?;
            ensure_internal(verify_production(p, oracle.hidden(), &prod.pi)?, || {
                format!("production fails on {}", p.to_text())
            })?;
            runs += 1;
        }
    }
    println!("selfcheck ok: {} posets, {runs} productions", posets.len());
    Ok(())
}
