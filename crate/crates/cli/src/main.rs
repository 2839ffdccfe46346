use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use serde_json::Value;

use sepnom_cli::{cmd_orbits, cmd_reach, cmd_run, cmd_table, cmd_verify, Format, Mode, SizeRange};

#[derive(Parser)]
#[command(name = "sepnom", version, about = "Orbit-finite nominal sets and nominal Moore automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the orbits of a set expression, e.g. "prod(A,A)".
    Orbits { expr: String },
    /// Run a registered automaton on a word, e.g. "Put(1);Put(2);Pop".
    Run {
        name: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long, value_enum, default_value_t = Mode::Nominal)]
        mode: Mode,
    },
    /// Reachable state orbits of a registered automaton.
    Reach {
        name: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Nominal)]
        mode: Mode,
    },
    /// Run a property suite (or "all"); exits nonzero if any check fails.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Reachable orbit counts, nominal and separated, over a range of sizes.
    Table {
        name: String,
        #[arg(long, default_value = "1..5")]
        n: SizeRange,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn print_json(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Orbits { expr } => print_json(&cmd_orbits(&expr)?)?,
        Command::Run { name, n, word, mode } => print_json(&cmd_run(&name, n, &word, mode)?)?,
        Command::Reach { name, n, mode } => print_json(&cmd_reach(&name, n, mode)?)?,
        Command::Verify { suite, seed, samples } => {
            let (passed, report) = cmd_verify(&suite, seed, samples)?;
            print_json(&report)?;
            if !passed {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Table { name, n, format } => {
            let text = cmd_table(&name, &n, format)?;
            print!("{}", text);
            if matches!(format, Format::Json) {
                println!();
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
