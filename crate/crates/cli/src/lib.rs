//! Command-line front end for the `divmoment` library.

pub mod commands;
pub mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use divmoment::Error;

pub use output::{Output, Table, SCHEMA_VERSION};

/// Environment fallback for `--workers`.
pub const WORKERS_ENV: &str = "DIVMOMENT_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "divmoment", version, about = "Divisor-problem error terms, spacing counts and power moments")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file, or `-` for standard output.
    #[arg(long, global = true, default_value = "-")]
    pub output: String,
    /// Worker threads; falls back to the environment, then to all cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
    #[arg(long, global = true, default_value_t = 600, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_seconds: u64,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Delta,
    DeltaStar,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Delta,
    DeltaStar,
    Circle,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Exact,
    Atkinson,
    Proxy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridArg {
    Dyadic,
    Linear,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// d(n), μ(n) and squarefree kernel for n ≤ limit.
    Tables {
        #[arg(long, default_value_t = 100)]
        limit: u64,
    },
    /// Exact error-term values at random points.
    Delta {
        #[arg(long, value_enum, default_value_t = KindArg::Delta)]
        kind: KindArg,
        #[arg(long, default_value_t = 2.0)]
        x_min: f64,
        #[arg(long, default_value_t = 1e6)]
        x_max: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// `Δ*(t/2π)` and the proxy `2πΔ*(t/2π)` for `E(t)`, optionally with exact `E`.
    Estar {
        #[arg(long, default_value_t = 10.0)]
        t_min: f64,
        #[arg(long, default_value_t = 1e4)]
        t_max: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        exact: bool,
    },
    /// Quadruple counts with `|√n₁ + √n₂ ± √n₃ − √n₄| < Δ`.
    Spacing {
        #[arg(long, default_value = "++--", allow_hyphen_values = true)]
        pattern: String,
        /// Dyadic scales `N1,N2,N3,N4`.
        #[arg(long, conflicts_with = "boxes")]
        ranges: Option<String>,
        /// Explicit boxes `lo-hi,lo-hi,lo-hi,lo-hi`.
        #[arg(long)]
        boxes: Option<String>,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long)]
        exclude_zero: bool,
        /// Report the smallest nonzero gap over `[1, limit]⁴` instead.
        #[arg(long, conflicts_with_all = ["ranges", "boxes"])]
        min_gap_limit: Option<u64>,
    },
    /// Truncated values of the moment constants.
    Constants {
        #[arg(long, default_value_t = 10_000)]
        c2_y: u64,
        #[arg(long, default_value_t = 200)]
        c1_alpha: u64,
        #[arg(long, default_value_t = 200)]
        c1_beta: u64,
        #[arg(long, default_value_t = 2000)]
        c1_h: u64,
    },
    /// Power moments against their predicted main terms.
    Moments {
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long, value_enum, default_value_t = RouteArg::Exact)]
        route: RouteArg,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1e3)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, value_enum, default_value_t = GridArg::Dyadic)]
        grid: GridArg,
        /// Number of points of a linear grid.
        #[arg(long, default_value_t = 8)]
        points: usize,
        #[arg(long, default_value_t = 10_000)]
        c2_y: u64,
    },
    /// Exact `E(t)` against Atkinson's formula at log-spaced `t`.
    AtkinsonCheck {
        #[arg(long, default_value_t = 1e3)]
        t_min: f64,
        #[arg(long, default_value_t = 1e4)]
        t_max: f64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// `N = ⌈ratio·t⌉`.
        #[arg(long, default_value_t = 1.0)]
        n_ratio: f64,
    },
    /// Exact error term against its truncated Voronoi series.
    VoronoiCheck {
        #[arg(long, value_enum, default_value_t = KindArg::Delta)]
        kind: KindArg,
        #[arg(long, default_value_t = 1e3)]
        x_min: f64,
        #[arg(long, default_value_t = 1e5)]
        x_max: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Cutoff; defaults to `⌈x^{3/4}⌉` per point.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Regenerate the committed fixture CSVs.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Tables { .. } => "tables",
            Command::Delta { .. } => "delta",
            Command::Estar { .. } => "estar",
            Command::Spacing { .. } => "spacing",
            Command::Constants { .. } => "constants",
            Command::Moments { .. } => "moments",
            Command::AtkinsonCheck { .. } => "atkinson-check",
            Command::VoronoiCheck { .. } => "voronoi-check",
            Command::Fixtures { .. } => "fixtures",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(Error::InvalidArgument(_) | Error::Domain(_) | Error::Overflow(_)) => 2,
            CliError::Core(Error::ResourceLimit(_)) => 3,
            CliError::Core(Error::Internal(_)) | CliError::Io(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Core(Error::InvalidArgument(_)) => "invalid_argument",
            CliError::Core(Error::Domain(_)) => "domain",
            CliError::Core(Error::Overflow(_)) => "overflow",
            CliError::Core(Error::ResourceLimit(_)) => "resource_limit",
            CliError::Core(Error::Internal(_)) => "internal",
            CliError::Io(_) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
        }
    }

    /// One-line JSON error record.
    pub fn record(&self) -> String {
        json!({
            "schema_version": SCHEMA_VERSION,
            "error": {
                "kind": self.kind(),
                "exit_code": self.exit_code(),
                "message": self.message(),
            }
        })
        .to_string()
    }
}

/// Worker count: flag, then environment, then the machine's parallelism.
pub fn effective_workers(config: &RunConfig) -> Result<usize, CliError> {
    if let Some(w) = config.workers {
        return Ok(w as usize);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(w) if w >= 1 => Ok(w),
            _ => Err(CliError::Usage(format!(
                "{WORKERS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Runs the command and returns the rendered bytes.
pub fn execute(config: &RunConfig) -> Result<Vec<u8>, CliError> {
    let workers = effective_workers(config)?;
    divmoment::numeric::with_workers(workers, || {
        let out = commands::dispatch(config)?;
        Ok(out.render(config.format)?)
    })
}

/// Runs the command, writes the output, and returns the exit status.
pub fn run(config: &RunConfig) -> i32 {
    let result = execute(config).and_then(|bytes| {
        if config.output == "-" {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()?;
        } else {
            fs::write(&config.output, &bytes)?;
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.record());
            e.exit_code()
        }
    }
}

/// Entry point taking raw arguments (including the program name).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or_default();
            let err = CliError::Usage(first.trim_start_matches("error: ").to_string());
            eprintln!("{}", err.record());
            err.exit_code()
        }
    }
}
