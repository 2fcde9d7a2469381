mod args;
mod commands;
mod examples;
mod expr;
mod figures;
mod settings;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use tsl_core::SttError;

use args::{Cli, Command, Format, Global};
use settings::Settings;

/// Failure classes with stable exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, unreadable config, invalid ranges: exit 1.
    Usage(String),
    /// Mathematically invalid input for the requested operation: exit 2.
    Domain(String),
    /// Output could not be written: exit 1.
    Io(String),
    /// The reader went away (e.g. `| head`): exit 0 quietly.
    Closed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Closed => 0,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Io(m) => f.write_str(m),
            CliError::Closed => f.write_str("output closed"),
        }
    }
}

impl From<SttError> for CliError {
    fn from(e: SttError) -> Self {
        match e {
            SttError::ZeroOffDiagonal
            | SttError::NotDefinite { .. }
            | SttError::OddDimension { .. }
            | SttError::DenseCapExceeded { .. } => CliError::Domain(e.to_string()),
            // csv errors arrive as text; the io kind is only visible in the message.
            SttError::Csv(m) if m.contains("Broken pipe") => CliError::Closed,
            SttError::Csv(m) => CliError::Io(m),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return CliError::Closed;
        }
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

/// Output destination plus the information every renderer needs.
pub struct Ctx {
    pub format: Format,
    pub settings: Settings,
    pub out: Box<dyn Write>,
}

impl Ctx {
    fn new(g: &Global) -> CliResult<Self> {
        let settings = Settings::resolve(g)?;
        let out: Box<dyn Write> = match &g.out {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Ctx {
            format: g.format,
            settings,
            out,
        })
    }

    /// Tool version and the effective configuration.
    pub fn metadata(&self) -> serde_json::Value {
        serde_json::json!({
            "tool": "tsl",
            "version": env!("CARGO_PKG_VERSION"),
            "config": self.settings,
        })
    }

    /// Writes a single JSON object with a `metadata` member added.
    pub fn emit_json<T: Serialize>(&mut self, body: &T) -> CliResult {
        let mut v = serde_json::to_value(body)?;
        if let serde_json::Value::Object(map) = &mut v {
            map.insert("metadata".into(), self.metadata());
        }
        serde_json::to_writer_pretty(&mut self.out, &v)?;
        writeln!(self.out)?;
        Ok(())
    }
}

fn run(cli: Cli) -> CliResult {
    let mut ctx = Ctx::new(&cli.global)?;
    match cli.command {
        Command::Analyze(m) => commands::analyze(&mut ctx, &m)?,
        Command::Spectrum { matrix, vectors } => commands::spectrum(&mut ctx, &matrix, vectors)?,
        Command::Cholesky { matrix, inverse } => commands::cholesky(&mut ctx, &matrix, inverse)?,
        Command::Examples { id, grid_out } => examples::run(&mut ctx, id, grid_out.as_deref())?,
        Command::Figures(f) => figures::run(&mut ctx, &f)?,
        Command::Experiment(e) => commands::experiment(&mut ctx, &e)?,
    }
    ctx.out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) | Err(CliError::Closed) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
