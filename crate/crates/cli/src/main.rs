//! `hstrip`: perimeter profiles, identity verification and constants for
//! graphical strips in the Heisenberg group.
//!
//! Exit codes: 0 pass, 1 verification failed, 2 invalid G, 3 quadrature
//! failure, 4 domain violation, 64 usage error.

mod commands;
mod config;
mod error;
mod spec;

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use hstrip_core::quadrature::QuadratureConfig;

use commands::{Format, GridSpec, LimitsSettings, ProfileSettings, Sink, VerifySettings};
use config::ConfigFile;
use error::CliError;
use spec::{build_strip, parse_interval};

#[derive(Parser, Debug)]
#[command(name = "hstrip", version, about = "Perimeter monotonicity on graphical strips of the Heisenberg group")]
struct Cli {
    /// Flat key=value file with defaults for any flag; flags win
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Worker threads (default: one per core). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate P(r)/r^3 on a radius grid (CSV) and check it is nondecreasing
    Profile(ProfileArgs),
    /// Run the identity, integration-by-parts and cutoff-inequality suites (JSON)
    Verify(VerifyArgs),
    /// Print the universal small-ball constant omega
    Omega(OmegaArgs),
    /// Small-r extrapolation and large-r behaviour of the rescaled perimeter
    Limits(LimitsArgs),
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Graph function: zero | linear:a,b | arctan:k | cubic:a | tanh:k
    #[arg(long)]
    g: Option<String>,
    /// Restrict G to the interval lo,hi
    #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
    interval: Option<String>,
    /// Height of the ball center (0, 0, t0)
    #[arg(long, allow_negative_numbers = true)]
    t0: Option<f64>,
}

#[derive(Args, Debug)]
struct QuadArgs {
    /// Relative quadrature tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Absolute quadrature tolerance
    #[arg(long)]
    abs_tol: Option<f64>,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long, allow_negative_numbers = true)]
    rmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    rmax: Option<f64>,
    /// Number of radii
    #[arg(long)]
    points: Option<usize>,
    /// Space the radii logarithmically
    #[arg(long)]
    log: bool,
    /// Monotonicity slack, relative to the largest ratio
    #[arg(long)]
    slack: Option<f64>,
    /// Center (y0·G(t0), y0, t0) on the strip; nonzero values need --experimental-off-axis
    #[arg(long, allow_negative_numbers = true)]
    y0: Option<f64>,
    /// Allow off-axis centers. No monotonicity is claimed there, so the exit code ignores it
    #[arg(long)]
    experimental_off_axis: bool,
    #[arg(long)]
    format: Option<Format>,
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Sample points per identity
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Absolute tolerance of the pointwise identities
    #[arg(long)]
    tol: Option<f64>,
    /// Relative tolerance of the integration-by-parts checks
    #[arg(long)]
    ibp_tol: Option<f64>,
    /// Write null for wall_time_seconds so reports are byte-reproducible
    #[arg(long)]
    no_timing: bool,
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OmegaArgs {
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Args, Debug)]
struct LimitsArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    quad: QuadArgs,
    /// Radius for the large-r value; the trend also uses 2r and 4r
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
}

fn quad(a: &QuadArgs, cfg: &ConfigFile) -> Result<QuadratureConfig, CliError> {
    let d = QuadratureConfig::default();
    let q = QuadratureConfig {
        rel_tol: cfg.pick(a.tol, "tol", d.rel_tol)?,
        abs_tol: cfg.pick(a.abs_tol, "abs-tol", d.abs_tol)?,
        ..d
    };
    q.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(q)
}

struct Graph {
    g: String,
    interval: Option<String>,
    t0: f64,
    strip: hstrip_core::surface::GraphicalStrip,
}

fn graph(a: &GraphArgs, cfg: &ConfigFile) -> Result<Graph, CliError> {
    let g: String = cfg
        .pick_opt(a.g.clone(), "g")?
        .ok_or_else(|| CliError::Usage("--g is required (zero | linear:a,b | arctan:k | cubic:a | tanh:k)".into()))?;
    let interval: Option<String> = cfg.pick_opt(a.interval.clone(), "interval")?;
    let t0 = cfg.pick(a.t0, "t0", 0.0)?;
    if !t0.is_finite() {
        return Err(CliError::Usage(format!("t0 must be finite, got {t0}")));
    }
    let strip = build_strip(&g, interval.as_deref().map(parse_interval).transpose()?)?;
    Ok(Graph { g, interval, t0, strip })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let cfg = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Profile(a) => {
            let gr = graph(&a.graph, &cfg)?;
            let s = ProfileSettings {
                g: gr.g,
                interval: gr.interval,
                t0: gr.t0,
                grid: GridSpec {
                    min: cfg.pick(a.rmin, "rmin", 0.01)?,
                    max: cfg.pick(a.rmax, "rmax", 100.0)?,
                    count: cfg.pick(a.points, "points", 64)?,
                    log: cfg.switch(a.log, "log")?,
                },
                slack: cfg.pick(a.slack, "slack", 1e-8)?,
                y0: cfg.pick(a.y0, "y0", 0.0)?,
                off_axis: cfg.switch(a.experimental_off_axis, "experimental-off-axis")?,
                quad: quad(&a.quad, &cfg)?,
                format: cfg.pick(a.format, "format", Format::Csv)?,
                out: Sink(cfg.pick_opt(a.out, "out")?),
                strip: gr.strip,
            };
            commands::cmd_profile(&s)
        }
        Command::Verify(a) => {
            let gr = graph(&a.graph, &cfg)?;
            let s = VerifySettings {
                g: gr.g,
                interval: gr.interval,
                t0: gr.t0,
                samples: cfg.pick(a.samples, "samples", 1000)?,
                seed: cfg.pick(a.seed, "seed", 42)?,
                tol: cfg.pick(a.tol, "tol", 1e-9)?,
                ibp_tol: cfg.pick(a.ibp_tol, "ibp-tol", 1e-6)?,
                quad: QuadratureConfig::default(),
                timing: !cfg.switch(a.no_timing, "no-timing")?,
                out: Sink(cfg.pick_opt(a.out, "out")?),
                strip: gr.strip,
            };
            commands::cmd_verify(&s)
        }
        Command::Omega(a) => commands::cmd_omega(&quad(&a.quad, &cfg)?),
        Command::Limits(a) => {
            let gr = graph(&a.graph, &cfg)?;
            let r = cfg.pick(a.r, "r", 100.0)?;
            if !(r > 0.0 && r.is_finite()) {
                return Err(CliError::Usage(format!("--r must be positive, got {r}")));
            }
            let s = LimitsSettings {
                t0: gr.t0,
                r,
                quad: quad(&a.quad, &cfg)?,
                strip: gr.strip,
            };
            commands::cmd_limits(&s)
        }
    }
}

fn main() {
    let code = match Cli::try_parse() {
        Ok(cli) => run(cli).unwrap_or_else(|e| {
            eprintln!("hstrip: {e}");
            e.exit_code()
        }),
        Err(e) => {
            let _ = e.print();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            }
        }
    };
    std::process::exit(code);
}
