//! Command-line front end for `mvw-core`: JSON case files, witness
//! construction and verification, random case generation and batches.

pub mod codec;
pub mod commands;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use mvw_core::mvw::DEFAULT_MAX_SEARCH;

use codec::parse_case;
use commands::{Outcome, VariantArg, EXIT_INVALID, EXIT_OK};

#[derive(Parser, Debug)]
#[command(name = "mvw", version, about = "Exact MVW-extension witnesses for classical groups over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose the module into simple summands (and sl2 summands when the
    /// case carries a nilpotent x).
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Construct a witness for x and verify it.
    Mvw {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        #[arg(long, default_value_t = DEFAULT_MAX_SEARCH)]
        max_search: usize,
    },
    /// Verify the witness stored in the case.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
    },
    /// Emit a reproducible random case.
    Random {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        unipotent: bool,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
    },
    /// Run `mvw` over a file of cases.
    Batch {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_SEARCH)]
        max_search: usize,
    },
}

fn read_input(path: &PathBuf) -> Result<String, Outcome> {
    let res = if path.as_os_str() == "-" { std::io::read_to_string(std::io::stdin()) } else { std::fs::read_to_string(path) };
    res.map_err(|e| Outcome::invalid(format!("--input {}: {e}", path.display())))
}

fn with_case(path: &PathBuf, f: impl FnOnce(&codec::Case) -> Outcome) -> Outcome {
    match read_input(path) {
        Err(o) => o,
        Ok(text) => match parse_case(&text) {
            Err(e) => Outcome::invalid(e),
            Ok(case) => f(&case),
        },
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match cli.command {
        Command::Classify { input } => with_case(&input, commands::classify),
        Command::Mvw { input, variant, max_search } => with_case(&input, |c| commands::mvw(c, variant, max_search)),
        Command::Verify { input, variant } => with_case(&input, |c| commands::verify(c, variant)),
        Command::Random { family, rank, seed, unipotent, variant } => commands::random(&family, rank, seed, unipotent, variant),
        Command::Batch { input, max_search } => match read_input(&input) {
            Err(o) => o,
            Ok(text) => commands::batch(&text, max_search),
        },
    }
}
