//! `hdx`: generate random complexes, analyze them, sweep thresholds, estimate overlap.

mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hdx_core::overlap::{affine_overlap, PointCloud, SearchMethod, DEFAULT_RESOLUTION};
use hdx_core::random::{
    generate, stream_rng, threshold_sweep, Model, ModelSpec, Predicate, SweepSpec, DEFAULT_DELTA0,
    DEFAULT_RETRY_CAP,
};
use hdx_core::report::{analyze, AnalysisOptions};
use hdx_core::{HdxError, SimplicialComplex};

/// Seed used when neither --seed nor HDX_SEED is given.
const DEFAULT_SEED: u64 = 1;

const EXIT_HELP: &str = "\
Exit codes:
  0  success
  2  usage or specification error (bad flags, invalid model parameters, dimension mismatch)
  3  generator aborted (W model greedy stage failed after all retries)
  4  exact computation required (--require-exact) but over the exhaustive cap";

#[derive(Debug, Parser)]
#[command(name = "hdx", version, about = "High-dimensional expander toolkit", after_help = EXIT_HELP)]
struct Cli {
    /// Base seed for every random choice [env: HDX_SEED]
    #[arg(long, global = true, env = "HDX_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for sweeps and overlap grids (output does not depend on it)
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random complex and write it as MFL-JSON
    Gen(GenArgs),
    /// Analyze an MFL-JSON complex: F2 expansion constants and spectral data
    Analyze(AnalyzeArgs),
    /// Estimate P[predicate] over a parameter grid
    Sweep(SweepArgs),
    /// Estimate the geometric overlap of an affine placement
    Overlap(OverlapArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Er,
    Lm,
    Y,
    W,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Er => Model::Er,
            ModelArg::Lm => Model::Lm,
            ModelArg::Y => Model::Y,
            ModelArg::W => Model::W,
        }
    }
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    n: usize,
    /// Dimension (defaults to 1 for er, 2 otherwise)
    #[arg(long)]
    d: Option<usize>,
    /// Cell probability (er, lm)
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    /// Partitions (y) or greedy copies (w)
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Stopping exponent of the greedy stage (w)
    #[arg(long, default_value_t = DEFAULT_DELTA0)]
    delta0: f64,
    /// Greedy attempts per copy before aborting (w)
    #[arg(long, default_value_t = DEFAULT_RETRY_CAP)]
    retry_cap: usize,
}

impl ModelArgs {
    fn spec(&self, seed: u64) -> ModelSpec {
        let model = Model::from(self.model);
        let d = self.d.unwrap_or(if model == Model::Er { 1 } else { 2 });
        let mut s = ModelSpec::new(model, self.n, d)
            .with_p(self.p)
            .with_k(self.k)
            .with_delta0(self.delta0)
            .with_seed(seed);
        s.retry_cap = self.retry_cap;
        s
    }
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Output file (stdout when absent)
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// MFL-JSON complex
    input: PathBuf,
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Skip F2 cohomology and expansion constants
    #[arg(long)]
    no_f2: bool,
    /// Skip spectral gaps and graph checks
    #[arg(long)]
    no_spectral: bool,
    #[arg(long)]
    no_garland: bool,
    #[arg(long)]
    no_ramanujan: bool,
    /// Largest cochain space minimized exhaustively
    #[arg(long, default_value_t = hdx_core::f2::DEFAULT_EXHAUSTIVE_CAP)]
    cap: usize,
    /// Fail (exit 4) instead of reporting estimates above the cap
    #[arg(long)]
    require_exact: bool,
    /// Report whether every spectral gap is at least this value
    #[arg(long)]
    epsilon: Option<f64>,
    /// Random starts of the sampled expansion estimator
    #[arg(long, default_value_t = 256)]
    samples: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PredicateArg {
    /// The 1-skeleton is connected
    Connected,
    /// H^{d-1}(X; F2) = 0
    Homological,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Comma-separated values of p (er, lm) or k (y, w)
    #[arg(long, value_delimiter = ',', required_unless_present = "range")]
    grid: Vec<f64>,
    /// Evenly spaced grid START:STOP:POINTS
    #[arg(long, conflicts_with = "grid")]
    range: Option<String>,
    /// Interpret grid values as multiples of the threshold d·ln(n)/n
    #[arg(long)]
    relative: bool,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Defaults to connected for er, homological otherwise
    #[arg(long, value_enum)]
    predicate: Option<PredicateArg>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Also draw p̂ against the parameter as SVG
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OverlapArgs {
    /// MFL-JSON complex
    #[arg(
        long,
        required_unless_present = "complete",
        conflicts_with = "complete"
    )]
    complex: Option<PathBuf>,
    /// Use the complete d-complex on N vertices instead of a file
    #[arg(long, value_name = "N")]
    complete: Option<usize>,
    /// Dimension of --complete
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Placement CSV: vertex,x,y[,z] with 1-based vertices
    #[arg(
        long,
        required_unless_present = "random_points",
        conflicts_with = "random_points"
    )]
    placement: Option<PathBuf>,
    /// Place the vertices uniformly at random in the unit cube
    #[arg(long)]
    random_points: bool,
    /// Grid points per axis
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    resolution: usize,
    /// Search uniform samples instead of a grid
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn exit_code(e: &HdxError) -> u8 {
    match e {
        HdxError::AbortedGreedy { .. } => 3,
        HdxError::ExactnessUnavailable { .. } => 4,
        _ => 2,
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), HdxError> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn cmd_gen(args: &GenArgs, seed: u64) -> Result<(), HdxError> {
    let spec = args.model.spec(seed);
    let g = generate(&spec)?;
    let counts: Vec<String> = (0..=g.complex.dim() as isize)
        .map(|i| format!("{}", g.complex.count(i)))
        .collect();
    eprintln!(
        "cells per dimension (0..={}): {}",
        g.complex.dim(),
        counts.join(" ")
    );
    if spec.model == Model::W {
        let total: usize = g.uncovered.iter().sum();
        eprintln!(
            "uncovered (d-1)-cells per copy: {:?} (total {total}); attempts per copy: {:?}",
            g.uncovered, g.attempts
        );
    }
    let mut text = g.complex.to_mfl_json();
    text.push('\n');
    emit(args.out.as_deref(), &text)
}

fn read_complex(path: &Path) -> Result<SimplicialComplex, HdxError> {
    SimplicialComplex::from_mfl_json(&fs::read_to_string(path)?)
}

fn cmd_analyze(args: &AnalyzeArgs, seed: u64) -> Result<(), HdxError> {
    let x = read_complex(&args.input)?;
    let opts = AnalysisOptions {
        f2: !args.no_f2,
        spectral: !args.no_spectral,
        garland: !args.no_garland,
        ramanujan: !args.no_ramanujan,
        cap: args.cap,
        require_exact: args.require_exact,
        epsilon: args.epsilon,
        samples: args.samples,
        seed,
    };
    let report = analyze(&x, &opts)?;
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    emit(args.out.as_deref(), &text)
}

fn parse_range(s: &str) -> Result<Vec<f64>, HdxError> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || HdxError::InvalidSpec(format!("--range expects START:STOP:POINTS, got {s:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].parse().map_err(|_| bad())?;
    let b: f64 = parts[1].parse().map_err(|_| bad())?;
    let m: usize = parts[2].parse().map_err(|_| bad())?;
    Ok(match m {
        0 => return Err(bad()),
        1 => vec![a],
        _ => (0..m)
            .map(|i| a + (b - a) * i as f64 / (m - 1) as f64)
            .collect(),
    })
}

fn threshold(model: Model, n: usize, d: usize) -> Option<f64> {
    matches!(model, Model::Er | Model::Lm).then(|| d as f64 * (n as f64).ln() / n as f64)
}

fn cmd_sweep(args: &SweepArgs, seed: u64, workers: usize) -> Result<(), HdxError> {
    let template = args.model.spec(seed);
    let mut grid = match &args.range {
        Some(r) => parse_range(r)?,
        None => args.grid.clone(),
    };
    let line = threshold(template.model, template.n, template.d);
    if args.relative {
        let t = line
            .ok_or_else(|| HdxError::InvalidSpec("--relative applies to er and lm only".into()))?;
        grid.iter_mut().for_each(|v| *v *= t);
    }
    let predicate = match args.predicate {
        Some(PredicateArg::Connected) => Predicate::Connected,
        Some(PredicateArg::Homological) => Predicate::HomologicallyConnected,
        None if template.model == Model::Er => Predicate::Connected,
        None => Predicate::HomologicallyConnected,
    };
    // surface spec errors up front rather than as per-trial failures
    let mut probe = template.clone();
    match probe.model {
        Model::Er | Model::Lm => probe.p = grid.first().copied().unwrap_or(0.0),
        Model::Y | Model::W => probe.k = grid.first().map_or(1, |v| v.round() as usize),
    }
    probe.validate()?;
    let spec = SweepSpec {
        template,
        grid,
        trials: args.trials,
        predicate,
    };
    let result = threshold_sweep(&spec, workers)?;
    for p in &result.points {
        if p.failures > 0 {
            eprintln!(
                "value {}: {} of {} trials failed to generate",
                p.value, p.failures, args.trials
            );
        }
    }
    let text = match args.format {
        Format::Csv => result.to_csv()?,
        Format::Json => result.to_json()? + "\n",
    };
    emit(args.out.as_deref(), &text)?;
    if let Some(path) = &args.svg {
        fs::write(path, svg::sweep_plot(&result, line))?;
    }
    Ok(())
}

fn cmd_overlap(args: &OverlapArgs, seed: u64) -> Result<(), HdxError> {
    let x = match (&args.complex, args.complete) {
        (Some(p), _) => read_complex(p)?,
        (None, Some(n)) => SimplicialComplex::complete(n, args.dim)?,
        (None, None) => unreachable!("clap requires one of --complex, --complete"),
    };
    let placement = match &args.placement {
        Some(p) => PointCloud::from_csv(fs::File::open(p)?)?,
        None => PointCloud::uniform(x.n_vertices(), x.dim(), &mut stream_rng(seed, &[]))?,
    };
    let method = match args.samples {
        Some(samples) => SearchMethod::Sampled { samples, seed },
        None => SearchMethod::Grid {
            resolution: args.resolution,
        },
    };
    let est = affine_overlap(&x, &placement, method)?;
    let mut text = serde_json::to_string_pretty(&est)?;
    text.push('\n');
    emit(args.out.as_deref(), &text)
}

fn run(cli: &Cli) -> Result<(), HdxError> {
    let workers = cli
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1);
    // overlap grids run on the global pool; the builder fails only if it was already set
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global();
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, cli.seed),
        Command::Analyze(a) => cmd_analyze(a, cli.seed),
        Command::Sweep(a) => cmd_sweep(a, cli.seed, workers),
        Command::Overlap(a) => cmd_overlap(a, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
