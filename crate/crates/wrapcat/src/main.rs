//! `wrapcat validate|compute|entangle <file> [flags]`.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wrapcat_core::wrap::Mode;

#[derive(Parser)]
#[command(name = "wrapcat", version, about = "Exact finite-scale computations for wrapped Floer-type categories")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Strict,
    Finite,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Finite => Mode::Finite,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    /// The profile declared in the file.
    Auto,
    /// Promote envelope-profile setups with identity continuations.
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Hw,
    Dfcat,
    Localize,
    Agree,
    Independence,
}

impl What {
    pub fn name(self) -> &'static str {
        match self {
            What::Hw => "hw",
            What::Dfcat => "dfcat",
            What::Localize => "localize",
            What::Agree => "agree",
            What::Independence => "independence",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the setup axioms and the continuation system.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = ProfileArg::Auto)]
        profile: ProfileArg,
    },
    /// Compute HW tables, the wrapped category, cone localizations or their agreement.
    Compute {
        file: PathBuf,
        #[arg(long, value_enum)]
        what: What,
        /// Truncation depth; defaults to the number of system classes for
        /// hw/dfcat and to 4 for localize/agree.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Finite)]
        mode: ModeArg,
    },
    /// Build the entanglement tower up to a level.
    Entangle {
        file: PathBuf,
        #[arg(long)]
        level: usize,
        /// Also run the bridge checks and the poset comparison.
        #[arg(long)]
        compare: bool,
    },
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("WRAPCAT_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n >= 1)
        .ok_or_else(|| format!("WRAPCAT_THREADS must be an integer ≥ 1, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("wrapcat: {e}");
        return ExitCode::from(2);
    }
    let report = match cli.command {
        Command::Validate { file, mode, profile } => commands::validate(&file, mode.into(), profile),
        Command::Compute { file, what, depth, mode } => commands::compute(&file, what, depth, mode.into()),
        Command::Entangle { file, level, compare } => commands::entangle(&file, level, compare),
    };
    let out = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit)
}
