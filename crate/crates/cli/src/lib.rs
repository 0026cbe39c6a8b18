//! `geospanner` commands: `gen`, `build`, `verify`, `stats` and `render`.
//!
//! Each command writes machine-readable JSON to the given writer and returns
//! a process exit code: 0 on success, 1 when a certified property fails, 2
//! for usage and input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use geospanner_core::exec::Execution;
use geospanner_core::generate::{generate_instance, GenParams, WeightDist};
use geospanner_core::instance::{BuildMode, InstanceFile, SpannerFile};
use geospanner_core::render::render_svg;
use geospanner_core::verify::{certify_stretch, metric_matrix, size_scaling_report, Budget, StretchReport};
use geospanner_core::{Error, GeodesicOracle, Instance, SpannerParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "geospanner", version, about = "Vertex fault-tolerant geodesic spanners")]
pub struct Cli {
    /// Run everything on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance.
    Gen(GenArgs),
    /// Build a spanner for an instance.
    Build(BuildArgs),
    /// Certify the stretch of a spanner.
    Verify(VerifyArgs),
    /// Edge counts over a range of sizes.
    Stats(StatsArgs),
    /// Draw an instance, optionally with a spanner, as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WeightArg {
    Zero,
    Uniform01,
    Exp,
}

impl From<WeightArg> for WeightDist {
    fn from(w: WeightArg) -> Self {
        match w {
            WeightArg::Zero => WeightDist::Zero,
            WeightArg::Uniform01 => WeightDist::Uniform01,
            WeightArg::Exp => WeightDist::Exp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Simple,
    Domain,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub holes: usize,
    #[arg(long, default_value_t = 20)]
    pub polygon_vertices: usize,
    #[arg(long, value_enum, default_value_t = WeightArg::Zero)]
    pub weight_dist: WeightArg,
    #[arg(long, env = "GEOSPANNER_SEED")]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub spanner: PathBuf,
    #[arg(long, conflicts_with = "samples")]
    pub exhaustive: bool,
    /// Check this many random fault sets of size k instead of all of them.
    #[arg(long)]
    pub samples: Option<usize>,
    /// `auto` or a number.
    #[arg(long, default_value = "auto")]
    pub target: String,
    /// Seed for sampled fault sets.
    #[arg(long, env = "GEOSPANNER_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long, env = "GEOSPANNER_SEED")]
    pub seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "64,128,256,512,1024")]
    pub n_list: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    #[arg(long, default_value_t = 0)]
    pub holes: usize,
    #[arg(long, default_value_t = 20)]
    pub polygon_vertices: usize,
    #[arg(long, value_enum, default_value_t = WeightArg::Zero)]
    pub weight_dist: WeightArg,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub spanner: Option<PathBuf>,
    /// Comma-separated point ids to cross out.
    #[arg(long, value_delimiter = ',')]
    pub faults: Vec<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = match &e {
            Error::BudgetTooLarge { .. } => format!("{e}; rerun with --samples N for a sampled check"),
            _ => e.to_string(),
        };
        CliError::usage(message)
    }
}

type CmdResult = std::result::Result<i32, CliError>;

fn read(path: &Path) -> std::result::Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> std::result::Result<(InstanceFile, Instance), CliError> {
    let file =
        InstanceFile::from_json(&read(path)?).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let inst = file.to_instance().map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    Ok((file, inst))
}

fn load_spanner(path: &Path, file: &InstanceFile) -> std::result::Result<SpannerFile, CliError> {
    let s = SpannerFile::from_json(&read(path)?).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    if s.provenance.instance_hash != file.hash() {
        return Err(CliError::usage(format!("{}: instance hash mismatch", path.display())));
    }
    Ok(s)
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> std::result::Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    writeln!(out, "{text}").map_err(|e| CliError::usage(e.to_string()))
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> CmdResult {
    let params = GenParams {
        n: args.n,
        holes: args.holes,
        polygon_vertices: args.polygon_vertices,
        weights: args.weight_dist.into(),
        seed: args.seed,
    };
    let file = generate_instance(&params)?;
    let text = file.to_json();
    match &args.out {
        Some(path) => {
            write_file(path, &text)?;
            emit(out, &serde_json::json!({ "out": path, "n": args.n, "holes": args.holes, "hash": file.hash() }))?;
        }
        None => writeln!(out, "{text}").map_err(|e| CliError::usage(e.to_string()))?,
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
pub struct BuildSummary {
    pub n: usize,
    pub h: usize,
    pub k: usize,
    pub epsilon: f64,
    pub mode: BuildMode,
    pub edges: usize,
    pub wall_ms: f64,
}

pub fn cmd_build(args: &BuildArgs, exec: Execution, out: &mut dyn Write) -> CmdResult {
    let params = SpannerParams::new(args.k, args.eps)?;
    let (file, inst) = load_instance(&args.input)?;
    let mode = match args.mode {
        ModeArg::Auto => BuildMode::auto(&inst),
        ModeArg::Simple => BuildMode::Simple,
        ModeArg::Domain => BuildMode::Domain,
    };
    let start = Instant::now();
    let g = inst.build(params, mode, exec)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let spanner = SpannerFile::new(&g, &inst, params, mode, &file);
    let summary = BuildSummary {
        n: g.n(),
        h: inst.domain.hole_count(),
        k: params.k,
        epsilon: params.epsilon,
        mode,
        edges: g.edge_count(),
        wall_ms,
    };
    match &args.out {
        Some(path) => {
            write_file(path, &spanner.to_json())?;
            emit(out, &summary)?;
        }
        None => {
            writeln!(out, "{}", spanner.to_json()).map_err(|e| CliError::usage(e.to_string()))?;
            eprintln!("{}", serde_json::to_string(&summary).expect("serializable"));
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
pub struct VerifyOutput {
    pub target: f64,
    pub pass: bool,
    pub report: StretchReport,
}

pub fn cmd_verify(args: &VerifyArgs, exec: Execution, out: &mut dyn Write) -> CmdResult {
    let (file, inst) = load_instance(&args.instance)?;
    let spanner = load_spanner(&args.spanner, &file)?;
    let params = spanner.params()?;
    let target = match args.target.as_str() {
        "auto" => spanner.mode.target(params.epsilon),
        t => {
            t.parse::<f64>().map_err(|_| CliError::usage(format!("--target: expected auto or a number, got {t:?}")))?
        }
    };
    let g = spanner.to_graph(&inst)?;
    let budget = match args.samples {
        Some(count) => Budget::Sampled { count, seed: args.seed },
        None => Budget::Exhaustive,
    };
    let oracle = GeodesicOracle::new(inst.domain.clone());
    let metric = metric_matrix(&oracle, &inst.points, exec)?;
    let report = certify_stretch(&g, &inst.weights(), &metric, params.k, budget, exec)?;
    let pass = report.passes(target);
    emit(out, &VerifyOutput { target, pass, report })?;
    Ok(if pass { EXIT_OK } else { EXIT_VIOLATION })
}

pub fn cmd_stats(args: &StatsArgs, exec: Execution, out: &mut dyn Write) -> CmdResult {
    let family = GenParams {
        n: 0,
        holes: args.holes,
        polygon_vertices: args.polygon_vertices,
        weights: args.weight_dist.into(),
        seed: args.seed,
    };
    let rows = size_scaling_report(family, &args.n_list, args.k, args.eps, exec)?;
    let ratios: Vec<f64> = rows.iter().map(|r| r.ratio).filter(|&r| r > 0.0).collect();
    let spread = match (ratios.iter().copied().reduce(f64::max), ratios.iter().copied().reduce(f64::min)) {
        (Some(hi), Some(lo)) => hi / lo,
        _ => 1.0,
    };
    emit(out, &serde_json::json!({ "rows": rows, "ratio_spread": spread }))?;
    Ok(EXIT_OK)
}

pub fn cmd_render(args: &RenderArgs, out: &mut dyn Write) -> CmdResult {
    let (file, inst) = load_instance(&args.instance)?;
    let g = match &args.spanner {
        Some(p) => Some(load_spanner(p, &file)?.to_graph(&inst)?),
        None => None,
    };
    if let Some(&bad) = args.faults.iter().find(|&&f| f >= inst.points.len()) {
        return Err(CliError::usage(format!("--faults: no point {bad}")));
    }
    let svg = render_svg(&inst, g.as_ref(), &args.faults)?;
    write_file(&args.out, &svg)?;
    emit(out, &serde_json::json!({ "out": args.out, "edges": g.map_or(0, |g| g.edge_count()) }))?;
    Ok(EXIT_OK)
}

/// Dispatches a parsed command line and reports errors on stderr.
pub fn run(cli: Cli, out: &mut dyn Write) -> i32 {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Build(a) => cmd_build(a, exec, out),
        Command::Verify(a) => cmd_verify(a, exec, out),
        Command::Stats(a) => cmd_stats(a, exec, out),
        Command::Render(a) => cmd_render(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
