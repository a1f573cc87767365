use std::process::ExitCode;

use clap::Parser;
use legraph_cli::commands::{run, Command, INPUT_ERROR};

/// Legendrian graph presentations: invariants, isotopy and simplicity.
///
/// Exit status: 0 on success, 1 when the answer is distinct, unmatched or
/// undetermined, 2 on bad input.
#[derive(Parser)]
#[command(name = "legraph", version)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR as u8 } else { 0 });
        }
    };
    match run(&cli.command) {
        Ok(r) => {
            if cli.json {
                println!("{}", r.to_json());
            } else {
                print!("{}", r.to_text());
            }
            ExitCode::from(r.outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR as u8)
        }
    }
}
