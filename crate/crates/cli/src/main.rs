mod args;
mod failure;
mod output;
mod run;
mod select;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use failure::{Failure, USAGE};

fn dispatch(cli: &Cli) -> Result<i32, Failure> {
    let (table, common) = match &cli.command {
        Command::Spectrum(a) => (run::spectrum(a)?, &a.common),
        Command::Dirac(a) => (run::dirac(a)?, &a.common),
        Command::Kg(a) => (run::kg(a)?, &a.common),
        Command::Solve(a) => (run::solve(a)?, &a.common),
        Command::Converge(a) => (run::converge(a)?, &a.common),
        Command::Compare(a) => (run::compare(a)?, &a.common),
        Command::ScanAlpha(a) => (run::scan_alpha(a)?, &a.common),
        Command::Verify(a) => return run::verify(a),
    };
    table.emit(common.format, common.output.as_deref())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code as u8)
        }
    }
}
