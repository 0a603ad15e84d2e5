//! Batch front end: loads workspace files, dispatches one subcommand and
//! prints a deterministic text report. Exit status 0 = all properties
//! pass, 1 = a checked property fails, 2 = usage/parse/reference error.

mod commands;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::UsageError;
use parse::Workspace;

#[derive(Parser)]
#[command(name = "idealtop", about = "ideal-space topology engine", disable_version_flag = true)]
struct Cli {
    /// Workspace files with space/map/config/algebra declarations.
    #[arg(short = 'f', long = "file", global = true)]
    files: Vec<PathBuf>,

    /// Capacity guard for enumerations (closed-set families etc.).
    #[arg(long = "max-size", global = true, env = "IDEALTOP_MAX_SIZE")]
    max_size: Option<usize>,

    /// Write a DOT Hasse diagram of the command's main object here.
    #[arg(long = "dot", global = true)]
    dot: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the primes of a space, marking non-point primes.
    Envelope { space: String },
    /// List the maximal limit sets of a space.
    Ml { space: String },
    /// Decide whether a set is a limit set; witness family when not.
    Limit { space: String, set: String },
    /// Emit the closed-set hyperspace of a space as a space file.
    Hyper { space: String },
    /// Decide whether a closed set is prime.
    Prime { space: String, set: String },
    /// Extend a map into a discrete target to the source's envelope.
    Extend { map: String },
    /// Validate a retraction config and check the closure hypothesis.
    CheckRetraction { config: String },
    /// Search for hypothesis-violating configurations.
    MineCex {
        /// Extra points added to the product to form Y.
        #[arg(long)]
        extra: usize,
        /// Maximum factor size.
        #[arg(long)]
        size: usize,
    },
    /// Block-algebra ideal calculus.
    Cstar {
        #[command(subcommand)]
        sub: CstarCommand,
    },
    /// Re-emit a parsed object in canonical text form.
    Emit { name: String },
}

#[derive(Subcommand)]
enum CstarCommand {
    /// Tensor-kernel ideal of an ideal pair: `phi A:hull{b1} B:hull{b1}`.
    Phi { a: String, b: String },
    /// Factor-slice ideals of a tensor ideal: `psi A*B:hull{(b1,b1)}`.
    Psi { t: String },
    /// Check both hull identities over every ideal pair.
    VerifyHulls { a: String, b: String },
    /// End-to-end minimal-primal verification for a factor pair.
    VerifyMin { a: String, b: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ws = Workspace::default();
    for path in &cli.files {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        };
        if let Err(e) = ws.parse(&text) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let limit = cli.max_size.unwrap_or(idealtop_core::DEFAULT_CAPACITY);

    let mut dot_text = String::new();
    let dot_requested = cli.dot.is_some();
    let dot_slot = if dot_requested { Some(&mut dot_text) } else { None };

    let outcome = match &cli.command {
        Command::Envelope { space } => commands::envelope(&ws, space, limit),
        Command::Ml { space } => commands::ml(&ws, space),
        Command::Limit { space, set } => commands::limit(&ws, space, set),
        Command::Hyper { space } => commands::hyper(&ws, space, limit, dot_slot),
        Command::Prime { space, set } => commands::prime(&ws, space, set, limit),
        Command::Extend { map } => commands::extend(&ws, map, limit),
        Command::CheckRetraction { config } => commands::check_retraction(&ws, config, dot_slot),
        Command::MineCex { extra, size } => commands::mine_cex(*extra, *size),
        Command::Cstar { sub } => match sub {
            CstarCommand::Phi { a, b } => commands::cstar_phi(&ws, a, b),
            CstarCommand::Psi { t } => commands::cstar_psi(&ws, t),
            CstarCommand::VerifyHulls { a, b } => commands::cstar_verify_hulls(&ws, a, b),
            CstarCommand::VerifyMin { a, b } => commands::cstar_verify_min(&ws, a, b),
        },
        Command::Emit { name } => commands::emit(&ws, name),
    };

    match outcome {
        Ok((text, pass)) => {
            print!("{text}");
            if let Some(path) = &cli.dot {
                if dot_text.is_empty() {
                    eprintln!("error: this command has no DOT output");
                    return ExitCode::from(2);
                }
                if let Err(e) = std::fs::write(path, &dot_text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
