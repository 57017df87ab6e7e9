//! `dmap` — exact computations with cycles of the circle maps x ↦ dx (mod 1).
//!
//! Machine-readable output: JSON objects for single results, JSON lines for
//! streams, CSV (with a schema_version column) for tables. Exit codes:
//! 0 success, 1 domain error, 2 usage error.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::str::FromStr;
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dmap_core::record::{CycleRecord, FitRecord, PrecycleRecord};
use dmap_core::*;

const CSV_SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "dmap", version, about = "Exact arithmetic for cycles of x ↦ dx (mod 1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Forward orbit of a rational point.
    Orbit(OrbitArgs),
    /// Crossing number (= degree) of a cycle or precycle.
    Degree(PointSetArgs),
    /// Digit portrait and digit count of a cycle or precycle.
    Portrait(PointSetArgs),
    /// Generated partition of a cycle or precycle.
    Partition(PointSetArgs),
    /// Stream all cycles (or precycles) of one size.
    Enumerate(EnumerateArgs),
    /// Degree histograms with counting-bound ratios, as CSV.
    Census(CensusArgs),
    /// Build a degree-m cycle near a prefix over a digit set.
    Construct(ConstructArgs),
    /// Rebuild a cycle from its (partition, i1, portrait) key.
    Reconstruct(ReconstructArgs),
    /// Box counts and log-log slope fits.
    Dimension(DimensionArgs),
}

#[derive(Args)]
struct OrbitArgs {
    /// Expansion base (the map multiplies by this).
    #[arg(long)]
    d: u32,
    /// Starting point, as num/den.
    #[arg(long)]
    point: String,
}

#[derive(Args)]
struct PointSetArgs {
    #[arg(long)]
    d: u32,
    /// Comma-separated points, e.g. 1/5,2/5,3/5,4/5.
    #[arg(long)]
    cycle: String,
    /// Accept any single forward orbit, not only cycles.
    #[arg(long)]
    precycle: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    d: u32,
    /// Number of points in each emitted orbit.
    #[arg(long)]
    n: usize,
    /// Keep only orbits of this degree.
    #[arg(long)]
    degree: Option<usize>,
    /// Enumerate precycles instead of cycles.
    #[arg(long)]
    precycles: bool,
    #[arg(long)]
    work_limit: Option<u128>,
    /// jsonl streams one record per line; json emits a single array.
    #[arg(long, value_enum, default_value_t = StreamFormat::Jsonl)]
    format: StreamFormat,
}

#[derive(Copy, Clone, ValueEnum)]
enum StreamFormat {
    Jsonl,
    Json,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    d: u32,
    /// Censuses are emitted for every size 1..=n_max.
    #[arg(long)]
    n_max: usize,
    /// Census precycles instead of cycles.
    #[arg(long)]
    precycles: bool,
    #[arg(long)]
    work_limit: Option<u128>,
    /// Parallel shard workers per size (cycles only).
    #[arg(long, default_value_t = 1)]
    jobs: u32,
    /// Compute a single shard, as index/count (for external merging).
    #[arg(long)]
    shard: Option<String>,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    d: u32,
    /// Digit set, e.g. 0,1.
    #[arg(long)]
    digits: String,
    /// Target prefix over the digit set (digit string for d <= 10).
    #[arg(long)]
    prefix: String,
    /// Pad length; must exceed every digit's multiplicity in the prefix.
    #[arg(long)]
    pad: usize,
}

#[derive(Args)]
struct ReconstructArgs {
    #[arg(long)]
    d: u32,
    /// Expected degree (number of partition blocks).
    #[arg(long)]
    m: usize,
    /// Expected cycle size.
    #[arg(long)]
    n: usize,
    /// Blocks as semicolon-separated, comma-joined positions: "3;1,2,4,5".
    #[arg(long)]
    blocks: String,
    /// Position of the first crossing.
    #[arg(long)]
    i1: usize,
    /// Portrait values F(0),...,F(d-1), comma-separated.
    #[arg(long)]
    portrait: String,
}

#[derive(Args)]
struct DimensionArgs {
    #[arg(long, value_enum)]
    mode: DimensionMode,
    #[arg(long)]
    d: u32,
    /// Digit count (cantor mode) or cycle degree (cycles mode).
    #[arg(long)]
    m: usize,
    /// Finest scale exponent: boxes have width d^-k for k = 1..=depth.
    #[arg(long, default_value_t = 10)]
    depth: u32,
    /// Largest cycle size included (cycles mode).
    #[arg(long)]
    n_max: Option<usize>,
    /// auto drops saturated scales before fitting; none fits every scale.
    /// Defaults: none for cantor mode, auto for cycles mode.
    #[arg(long, value_enum)]
    filter: Option<ScaleFilter>,
    #[arg(long)]
    work_limit: Option<u128>,
}

#[derive(Copy, Clone, ValueEnum)]
enum DimensionMode {
    Cantor,
    Cycles,
}

#[derive(Copy, Clone, ValueEnum)]
enum ScaleFilter {
    Auto,
    None,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Orbit(args) => cmd_orbit(args),
        Command::Degree(args) => cmd_degree(args),
        Command::Portrait(args) => cmd_portrait(args),
        Command::Partition(args) => cmd_partition(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Census(args) => cmd_census(args),
        Command::Construct(args) => cmd_construct(args),
        Command::Reconstruct(args) => cmd_reconstruct(args),
        Command::Dimension(args) => cmd_dimension(args),
    }
}

fn work_budget(flag: Option<u128>) -> WorkBudget {
    flag.or_else(|| {
        std::env::var("DMAP_WORK_LIMIT")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .map(WorkBudget::new)
    .unwrap_or_default()
}

fn parse_points(list: &str) -> Result<Vec<Rational>> {
    list.split(',')
        .map(|s| Rational::from_str(s.trim()))
        .collect()
}

fn parse_digits(list: &str) -> Result<Vec<u32>> {
    list.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidInput(format!("bad digit {s:?}")))
        })
        .collect()
}

/// Either a validated cycle or a validated single forward orbit, the shared
/// input shape of degree/portrait/partition.
enum OrbitSet {
    Cycle(Cycle),
    Precycle(Precycle),
}

impl OrbitSet {
    fn from_args(args: &PointSetArgs) -> Result<Self> {
        let points = parse_points(&args.cycle)?;
        if args.precycle {
            Ok(Self::Precycle(Precycle::from_points(&points, args.d)?))
        } else {
            Ok(Self::Cycle(Cycle::from_points(&points, args.d)?))
        }
    }
}

fn cmd_orbit(args: OrbitArgs) -> Result<()> {
    let point = Rational::from_str(&args.point)?;
    let orb = orbit(&point, args.d)?;
    println!(
        "{}",
        serde_json::to_string(&PrecycleRecord::from(&orb)).unwrap()
    );
    Ok(())
}

fn cmd_degree(args: PointSetArgs) -> Result<()> {
    let out = match OrbitSet::from_args(&args)? {
        OrbitSet::Cycle(c) => json!({
            "degree": c.degree(),
            "crossings": c.crossings().indices(),
        }),
        OrbitSet::Precycle(p) => json!({
            "degree": p.degree(),
            "crossings": p.crossings().indices(),
            "degree_basis": "crossing-number",
        }),
    };
    println!("{out}");
    Ok(())
}

fn cmd_portrait(args: PointSetArgs) -> Result<()> {
    let portrait = match OrbitSet::from_args(&args)? {
        OrbitSet::Cycle(c) => c.digit_portrait(),
        OrbitSet::Precycle(p) => p.digit_portrait(),
    };
    println!(
        "{}",
        json!({ "portrait": portrait.values(), "dig": portrait.dig() })
    );
    Ok(())
}

fn cmd_partition(args: PointSetArgs) -> Result<()> {
    let (partition, crossings) = match OrbitSet::from_args(&args)? {
        OrbitSet::Cycle(c) => (c.partition()?, c.crossings()),
        OrbitSet::Precycle(p) => (p.partition()?, p.crossings()),
    };
    println!(
        "{}",
        json!({
            "blocks": partition.blocks(),
            "i1": partition.i1(),
            "crossings": crossings.indices(),
        })
    );
    Ok(())
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<()> {
    let budget = work_budget(args.work_limit);
    let mut lines: Vec<String> = Vec::new();
    if args.precycles {
        for pre in enumerate_precycles(args.d, args.n, budget)? {
            if args.degree.is_some_and(|m| pre.degree() != m) {
                continue;
            }
            lines.push(serde_json::to_string(&PrecycleRecord::from(&pre)).unwrap());
        }
    } else {
        for cycle in enumerate_cycles(args.d, args.n, budget)? {
            if args.degree.is_some_and(|m| cycle.degree() != m) {
                continue;
            }
            lines.push(serde_json::to_string(&CycleRecord::from(&cycle)).unwrap());
        }
    }
    match args.format {
        StreamFormat::Jsonl => {
            for line in lines {
                println!("{line}");
            }
        }
        StreamFormat::Json => println!("[{}]", lines.join(",")),
    }
    Ok(())
}

fn parse_shard(s: &str) -> Result<ShardSpec> {
    let (index, count) = s
        .split_once('/')
        .ok_or_else(|| Error::InvalidInput(format!("shard spec {s:?} is not index/count")))?;
    let index = index
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad shard index in {s:?}")))?;
    let count = count
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad shard count in {s:?}")))?;
    ShardSpec::new(index, count)
}

fn census_row_parallel(d: u32, n: usize, budget: WorkBudget, jobs: u32) -> Result<CensusRow> {
    if jobs <= 1 {
        return census(d, n, budget);
    }
    let shards: Vec<CensusRow> = thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|index| {
                scope.spawn(move || {
                    census_sharded(d, n, budget, Some(ShardSpec::new(index, jobs)?))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect::<Result<_>>()
    })?;
    let mut merged = shards[0].clone();
    for row in &shards[1..] {
        merged.merge(row);
    }
    Ok(merged)
}

fn cmd_census(args: CensusArgs) -> Result<()> {
    let budget = work_budget(args.work_limit);
    let shard = args.shard.as_deref().map(parse_shard).transpose()?;
    println!("schema_version,d,n,m,count,bound,ratio");
    for n in 1..=args.n_max {
        let row = if args.precycles {
            if shard.is_some() || args.jobs > 1 {
                return Err(Error::InvalidInput(
                    "precycle censuses run single-shard".into(),
                ));
            }
            precycle_census(args.d, n, budget)?
        } else if let Some(spec) = shard {
            census_sharded(args.d, n, budget, Some(spec))?
        } else {
            census_row_parallel(args.d, n, budget, args.jobs)?
        };
        for (&m, &count) in &row.counts_by_degree {
            let (bound, ratio) = match (row.bound_ratio(m), row.bound_ratio_f64(m)) {
                (Some((_, bound)), Some(ratio)) => {
                    (bound.to_string(), format!("{ratio:.6e}"))
                }
                _ => ("0".into(), String::new()),
            };
            println!(
                "{CSV_SCHEMA_VERSION},{},{},{},{},{},{}",
                args.d, n, m, count, bound, ratio
            );
        }
    }
    Ok(())
}

fn cmd_construct(args: ConstructArgs) -> Result<()> {
    let digits = parse_digits(&args.digits)?;
    let prefix = DigitWord::parse(args.d, &args.prefix)?;
    let request = ApproximationRequest::new(args.d, digits, prefix.digits().to_vec(), args.pad)?;
    let (c, cycle) = approximate_with_cycle(&request)?;
    println!(
        "{}",
        json!({ "c": c.to_string(), "cycle": CycleRecord::from(&cycle) })
    );
    Ok(())
}

fn cmd_reconstruct(args: ReconstructArgs) -> Result<()> {
    let blocks: Vec<Vec<usize>> = args
        .blocks
        .split(';')
        .map(|block| {
            block
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidInput(format!("bad block element {s:?}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let portrait_values: Vec<usize> = args
        .portrait
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad portrait value {s:?}")))
        })
        .collect::<Result<_>>()?;
    let partition = PartitionSpec::new(blocks, args.i1);
    let portrait = DigitPortrait::new(args.d, portrait_values)?;
    match reconstruct_cycle(args.d, args.m, args.n, &partition, &portrait)? {
        Some(cycle) => println!(
            "{}",
            serde_json::to_string(&CycleRecord::from(&cycle)).unwrap()
        ),
        None => println!("null"),
    }
    Ok(())
}

fn print_reports_csv(reports: &[CoverReport]) {
    println!("schema_version,k,boxes,log_boxes");
    for r in reports {
        println!(
            "{CSV_SCHEMA_VERSION},{},{},{:.12}",
            r.scale_exponent,
            r.box_count,
            (r.box_count as f64).ln()
        );
    }
}

fn cmd_dimension(args: DimensionArgs) -> Result<()> {
    let budget = work_budget(args.work_limit);
    // The staged digit construction is exactly self-similar, so every scale
    // is informative; finite cycle families saturate and default to auto.
    let (reports, point_count, default_filter) = match args.mode {
        DimensionMode::Cantor => {
            let m = u32::try_from(args.m)
                .map_err(|_| Error::InvalidInput("digit count out of range".into()))?;
            let reports = (1..=args.depth)
                .map(|k| cantor_boxes(m, args.d, k))
                .collect::<Result<Vec<_>>>()?;
            (reports, usize::MAX, ScaleFilter::None)
        }
        DimensionMode::Cycles => {
            let n_max = args
                .n_max
                .ok_or_else(|| Error::InvalidInput("cycles mode needs --n-max".into()))?;
            let points: BTreeSet<Rational> = build_e_approx(args.d, args.m, n_max, budget)?;
            let reports = (1..=args.depth)
                .map(|k| pointset_boxcount(points.iter(), args.d, k))
                .collect::<Result<Vec<_>>>()?;
            (reports, points.len(), ScaleFilter::Auto)
        }
    };
    let used = match args.filter.unwrap_or(default_filter) {
        ScaleFilter::Auto => unsaturated_reports(&reports, point_count),
        ScaleFilter::None => reports.clone(),
    };
    print_reports_csv(&reports);
    let fit = fit_dimension(&used)?;
    println!("{}", serde_json::to_string(&FitRecord::from(&fit)).unwrap());
    Ok(())
}
