use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use toric_tor_cli::{run, CliError, Command, Format, ModeSpec, Problem};

/// Torsion products and cohomology rings of toric varieties and partial
/// quotients, computed exactly from a JSON problem description.
#[derive(Parser)]
#[command(name = "toric-tor", version)]
struct Args {
    /// JSON problem file; stdin if omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Overrides `max_total_degree`.
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Overrides `mode`.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeSpec>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Per-cone regularity and the smoothness verdict.
    Check,
    /// The Tor table.
    Tor,
    /// Cohomology basis and structure constants.
    Ring,
    /// Product of two cocycles given as expressions.
    Mult { x: String, y: String },
    /// Compare with the Hochster decomposition (identity matrix only).
    Hochster,
    /// Compare with the bar construction.
    Bar,
}

fn main_inner(args: Args) -> Result<u8, CliError> {
    let text = match &args.input {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let mut problem = Problem::from_json(&text)?;
    if let Some(d) = args.degree {
        problem.max_total_degree = Some(d);
    }
    if let Some(m) = args.mode {
        problem.mode = m;
    }
    let command = match args.command {
        Sub::Check => Command::Check,
        Sub::Tor => Command::Tor,
        Sub::Ring => Command::Ring,
        Sub::Mult { x, y } => Command::Mult(x, y),
        Sub::Hochster => Command::Hochster,
        Sub::Bar => Command::Bar,
    };
    let outcome = run(&problem, &command, args.format)?;
    print!("{}", outcome.output);
    Ok(outcome.exit_code())
}

fn main() -> ExitCode {
    match main_inner(Args::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
