use std::io::ErrorKind;
use std::process::ExitCode;

use clap::Parser;
use hermite_cli::{exit, run, CliError, RunConfig};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    match run(&config, &mut stdout.lock()) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Output(e)) if e.kind() == ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hermite: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
