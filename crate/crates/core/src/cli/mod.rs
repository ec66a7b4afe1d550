//! Batch front end: JSON config ingestion, command dispatch and file output.

mod config;
mod run;

pub use config::{
    load_config, parse_config, AeroBlock, AnchorsBlock, ConfigError, LinkageBlock, LoadedConfig,
    OutputBlock, OutputFormat, ProjectConfig, SweepBlock,
};
pub use run::{
    run_command, Command, ErrorRecord, FileRecord, RunError, RunManifest, RunStatus, MANIFEST_FILE,
    TOOL_NAME, TOOL_VERSION,
};

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

pub const CONFIG_ENV: &str = "MORPHWING_CONFIG";
const DEFAULT_OUT: &str = "morphwing-out";

#[derive(Debug, Parser)]
#[command(
    name = "morphwing",
    version,
    about = "Dihedral-morphing wing linkage and aerodynamics toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON project config.
    #[arg(long, env = CONFIG_ENV)]
    pub config: PathBuf,
    /// Output directory (default: output.directory from the config, else ./morphwing-out).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override a config leaf, e.g. `--set linkage.l1=27.5`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Pose, dihedrals and aerodynamics at one phase.
    Solve {
        #[command(flatten)]
        common: Common,
        /// Phase in degrees.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phase: f64,
    },
    /// Grashof classification.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Full phase sweep (CSV and plot files).
    Sweep {
        #[command(flatten)]
        common: Common,
    },
    /// Fit the phase origin, branch and direction to the calibration anchors.
    Calibrate {
        #[command(flatten)]
        common: Common,
    },
    /// Multi-start linkage synthesis.
    Synthesize {
        #[command(flatten)]
        common: Common,
        /// Overrides synthesis.rng_seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Flight-state selection and comparison with the reference anchors.
    States {
        #[command(flatten)]
        common: Common,
    },
    /// Every analysis into one directory.
    Report {
        #[command(flatten)]
        common: Common,
    },
}

impl CliCommand {
    fn split(&self) -> (Command, &Common) {
        match self {
            CliCommand::Solve { common, phase } => (Command::Solve { phase_deg: *phase }, common),
            CliCommand::Classify { common } => (Command::Classify, common),
            CliCommand::Sweep { common } => (Command::Sweep, common),
            CliCommand::Calibrate { common } => (Command::Calibrate, common),
            CliCommand::Synthesize { common, seed } => {
                (Command::Synthesize { seed: *seed }, common)
            }
            CliCommand::States { common } => (Command::States, common),
            CliCommand::Report { common } => (Command::Report, common),
        }
    }
}

fn fail(class: &str, msg: impl std::fmt::Display, code: u8) -> ExitCode {
    eprintln!("error[{class}]: {msg}");
    ExitCode::from(code)
}

/// Parses `args` and runs the selected command.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    let (cmd, common) = cli.command.split();
    let loaded = match load_config(&common.config, &common.overrides) {
        Ok(l) => l,
        Err(e) => return fail(e.class(), &e, 2),
    };
    let out = common
        .out
        .clone()
        .or_else(|| loaded.config.output.directory.clone())
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    match run_command(cmd, &loaded, &out) {
        Ok(m) => {
            for f in &m.files {
                println!("{}", out.join(&f.path).display());
            }
            println!("{}", out.join(MANIFEST_FILE).display());
            ExitCode::SUCCESS
        }
        Err(e) => fail(e.class(), &e, e.exit_code()),
    }
}
