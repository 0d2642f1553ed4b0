//! Command-line definitions and their resolution against config and defaults.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{resolve, Config};
use crate::error::CliError;

pub const DEFAULT_STEPS: usize = 200;
pub const DEFAULT_TAIL_BOUND: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(name = "discordpot", version, about = "Discord potential and related measures for mixtures of coherent states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Helstrom and homodyne error probabilities against d0 (a = 1/2)
    #[command(allow_negative_numbers = true)]
    Discriminate(SweepArgs),
    /// Discord potential over a grid of (a, d0)
    #[command(allow_negative_numbers = true)]
    Surface(SurfaceArgs),
    /// Entropy, mutual information and its split into I_cl + D against d (a = 1/2, β0 = −α0)
    #[command(allow_negative_numbers = true)]
    Info(SweepArgs),
    /// C_D, C_l1, C_RE and the asymptotes against d0 (a = 1/2, β0 = −α0)
    #[command(allow_negative_numbers = true)]
    Coherence(SweepArgs),
    /// Every measure at one (a, α0, β0), as a JSON object
    #[command(allow_negative_numbers = true)]
    Point(PointArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Write to PATH instead of standard output
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Photon-number tail bound for Fock truncations
    #[arg(long)]
    pub tail_bound: Option<f64>,
    /// key = value file supplying defaults for the flags above and below
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Mixing probability; these sweeps are defined at 0.5 only
    #[arg(long)]
    pub a: Option<f64>,
    /// First grid value
    #[arg(long)]
    pub start: Option<f64>,
    /// Last grid value
    #[arg(long)]
    pub stop: Option<f64>,
    /// Number of grid points
    #[arg(long)]
    pub steps: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    #[arg(long)]
    pub a_start: Option<f64>,
    #[arg(long)]
    pub a_stop: Option<f64>,
    /// Number of a values (defaults to --steps)
    #[arg(long)]
    pub a_steps: Option<usize>,
    /// First d0 value
    #[arg(long)]
    pub start: Option<f64>,
    /// Last d0 value
    #[arg(long)]
    pub stop: Option<f64>,
    /// Number of d0 values
    #[arg(long)]
    pub steps: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[arg(long)]
    pub a: Option<f64>,
    /// Separation; places α0 = d0/2 and β0 = −d0/2
    #[arg(long)]
    pub d0: Option<f64>,
    #[arg(long, value_name = "RE,IM", value_parser = parse_complex, allow_hyphen_values = true)]
    pub alpha0: Option<(f64, f64)>,
    #[arg(long, value_name = "RE,IM", value_parser = parse_complex, allow_hyphen_values = true)]
    pub beta0: Option<(f64, f64)>,
    #[command(flatten)]
    pub common: Common,
}

pub fn parse_complex(s: &str) -> Result<(f64, f64), String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected RE,IM, got '{s}'"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("real part '{re}': {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("imaginary part '{im}': {e}"))?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(format!("non-finite amplitude '{s}'"));
    }
    Ok((re, im))
}

/// Where and how a result is written.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTarget {
    pub path: Option<PathBuf>,
    pub format: Format,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        discordpot::optimize::linspace(self.start, self.stop, self.steps)
    }

    fn validate(self, name: &str, min: f64, max: f64) -> Result<Self, CliError> {
        if self.steps < 2 {
            return Err(CliError::Usage(format!("{name} grid needs at least 2 steps, got {}", self.steps)));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(CliError::Usage(format!("{name} grid needs start < stop, got {} .. {}", self.start, self.stop)));
        }
        if self.start < min || self.stop > max {
            return Err(CliError::Usage(format!("{name} grid must lie within [{min}, {max}]")));
        }
        Ok(self)
    }
}

pub fn load_config(common: &Common) -> Result<Config, CliError> {
    common.config.as_deref().map_or_else(|| Ok(Config::default()), Config::load)
}

pub fn output_target(common: &Common, config: &Config, default_format: Format) -> Result<OutputTarget, CliError> {
    let path = match &common.out {
        Some(p) => Some(p.clone()),
        None => config.raw("out").map(PathBuf::from),
    };
    let format = resolve(common.format, config, "format", default_format)?;
    let tail_bound = resolve(common.tail_bound, config, "tail-bound", DEFAULT_TAIL_BOUND)?;
    if !(tail_bound > 0.0 && tail_bound < 1.0) {
        return Err(CliError::Usage(format!("--tail-bound must lie in (0, 1), got {tail_bound}")));
    }
    Ok(OutputTarget { path, format, tail_bound })
}

/// Rejects any a other than 1/2 for the fixed-a sweeps.
pub fn require_half(a: Option<f64>, config: &Config, command: &str) -> Result<(), CliError> {
    let a = resolve(a, config, "a", 0.5)?;
    if a != 0.5 {
        return Err(CliError::Usage(format!("{command} is defined for a = 0.5 only, got {a}")));
    }
    Ok(())
}

/// (start, stop) defaults and admissible range for a one-parameter sweep.
pub struct SweepDefaults {
    pub name: &'static str,
    pub start: f64,
    pub stop: f64,
    pub min: f64,
    pub max: f64,
}

pub fn sweep_grid(args: &SweepArgs, config: &Config, d: &SweepDefaults) -> Result<Grid, CliError> {
    Grid {
        start: resolve(args.start, config, "start", d.start)?,
        stop: resolve(args.stop, config, "stop", d.stop)?,
        steps: resolve(args.steps, config, "steps", DEFAULT_STEPS)?,
    }
    .validate(d.name, d.min, d.max)
}

pub fn surface_grids(args: &SurfaceArgs, config: &Config) -> Result<(Grid, Grid), CliError> {
    let steps = resolve(args.steps, config, "steps", DEFAULT_STEPS)?;
    let a = Grid {
        start: resolve(args.a_start, config, "a-start", 0.001)?,
        stop: resolve(args.a_stop, config, "a-stop", 0.999)?,
        steps: resolve(args.a_steps, config, "a-steps", steps)?,
    }
    .validate("a", f64::MIN_POSITIVE, 1.0 - f64::EPSILON)?;
    let d0 = Grid {
        start: resolve(args.start, config, "start", 0.001)?,
        stop: resolve(args.stop, config, "stop", 12.0)?,
        steps,
    }
    .validate("d0", 0.0, f64::MAX)?;
    Ok((a, d0))
}

/// Input of the `point` command after resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointInput {
    pub a: f64,
    pub alpha0: (f64, f64),
    pub beta0: (f64, f64),
}

pub fn point_input(args: &PointArgs, config: &Config) -> Result<PointInput, CliError> {
    let a = resolve(args.a, config, "a", 0.5)?;
    if !(a > 0.0 && a < 1.0) {
        return Err(CliError::Usage(format!("--a must lie in (0, 1), got {a}")));
    }
    let alpha0 = match args.alpha0 {
        Some(v) => Some(v),
        None => config.get_with("alpha0", parse_complex)?,
    };
    let beta0 = match args.beta0 {
        Some(v) => Some(v),
        None => config.get_with("beta0", parse_complex)?,
    };
    let d0 = resolve(args.d0, config, "d0", 1.0)?;
    let (alpha0, beta0) = match (alpha0, beta0) {
        (Some(x), Some(y)) => {
            if args.d0.is_some() {
                return Err(CliError::Usage("--d0 cannot be combined with --alpha0/--beta0".into()));
            }
            (x, y)
        }
        (None, None) => {
            if !(d0.is_finite() && d0 >= 0.0) {
                return Err(CliError::Usage(format!("--d0 must be a non-negative number, got {d0}")));
            }
            ((d0 / 2.0, 0.0), (-d0 / 2.0, 0.0))
        }
        _ => return Err(CliError::Usage("--alpha0 and --beta0 must be given together".into())),
    };
    Ok(PointInput { a, alpha0, beta0 })
}
