mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mahlercf::Error;

use args::{Cli, Command};

fn run(cli: Cli) -> commands::Result<()> {
    let text = match &cli.command {
        Command::Expand(a) => commands::expand(a)?,
        Command::Classify(a) => commands::classify_cmd(a)?,
        Command::Hankel(a) => commands::hankel(a)?,
        Command::Bound(a) => commands::bound(a)?,
        Command::Eval(a) => commands::eval(a)?,
        Command::Verify(a) => commands::verify(a)?,
        Command::Scan(a) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            return commands::scan(a, &mut lock);
        }
    };
    let _ = std::io::stdout().write_all(text.as_bytes());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::AssertionFailed(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
