//! Command-line front end: parameter sweeps and single-point evaluation.
//!
//! [`run`] is the whole program; the binary only forwards its arguments
//! and standard streams.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod table;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format, OutputTarget, SweepDefaults};
pub use error::CliError;
pub use table::Table;

const DISCRIMINATE: SweepDefaults = SweepDefaults { name: "d0", start: 0.0, stop: 6.0, min: 0.0, max: f64::MAX };
const INFO: SweepDefaults = SweepDefaults { name: "d", start: 0.001, stop: 5.0, min: 0.0, max: f64::MAX };
const COHERENCE: SweepDefaults = SweepDefaults { name: "d0", start: 0.01, stop: 20.0, min: 0.0, max: f64::MAX };

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{}", first.trim_start_matches("error: ").trim());
            return 2;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

fn execute<W: Write>(cli: Cli, out: &mut W) -> Result<(), CliError> {
    match cli.command {
        Command::Discriminate(a) => {
            let config = args::load_config(&a.common)?;
            args::require_half(a.a, &config, "discriminate")?;
            let target = args::output_target(&a.common, &config, Format::Csv)?;
            let table = commands::discriminate(args::sweep_grid(&a, &config, &DISCRIMINATE)?)?;
            emit_table(&table, &target, out)
        }
        Command::Surface(a) => {
            let config = args::load_config(&a.common)?;
            let target = args::output_target(&a.common, &config, Format::Csv)?;
            let (ag, dg) = args::surface_grids(&a, &config)?;
            emit_table(&commands::surface(ag, dg)?, &target, out)
        }
        Command::Info(a) => {
            let config = args::load_config(&a.common)?;
            args::require_half(a.a, &config, "info")?;
            let target = args::output_target(&a.common, &config, Format::Csv)?;
            emit_table(&commands::info(args::sweep_grid(&a, &config, &INFO)?)?, &target, out)
        }
        Command::Coherence(a) => {
            let config = args::load_config(&a.common)?;
            args::require_half(a.a, &config, "coherence")?;
            let target = args::output_target(&a.common, &config, Format::Csv)?;
            emit_table(&commands::coherence(args::sweep_grid(&a, &config, &COHERENCE)?)?, &target, out)
        }
        Command::Point(a) => {
            let config = args::load_config(&a.common)?;
            let target = args::output_target(&a.common, &config, Format::Json)?;
            if target.format != Format::Json {
                return Err(CliError::Usage("point writes JSON only".into()));
            }
            let value = commands::point(args::point_input(&a, &config)?, target.tail_bound)?;
            let mut text = serde_json::to_string_pretty(&value).expect("point serialises");
            text.push('\n');
            emit(&text, &target, out)
        }
    }
}

fn emit_table<W: Write>(table: &Table, target: &OutputTarget, out: &mut W) -> Result<(), CliError> {
    let text = match target.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    emit(&text, target, out)
}

fn emit<W: Write>(text: &str, target: &OutputTarget, out: &mut W) -> Result<(), CliError> {
    match &target.path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .and_then(|()| out.flush())
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}"))),
    }
}
