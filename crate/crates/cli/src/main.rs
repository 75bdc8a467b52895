use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use sp4quat_cli::{execute, Cli, Status};

fn read_input(cli: &Cli) -> io::Result<String> {
    match cli.command.input_path() {
        None => Ok(String::new()),
        Some(Some(path)) if path.as_os_str() != "-" => std::fs::read_to_string(path),
        Some(_) => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Status::Usage.code() as u8),
            };
        }
    };

    let text = match read_input(&cli) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read input: {err}");
            return ExitCode::from(Status::Usage.code() as u8);
        }
    };

    let run = execute(&cli, &text);
    eprint!("{}", run.stderr);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &run.stdout),
        None => io::stdout().lock().write_all(run.stdout.as_bytes()),
    };
    if let Err(err) = written {
        eprintln!("error: cannot write output: {err}");
        return ExitCode::from(Status::Usage.code() as u8);
    }
    ExitCode::from(run.status.code() as u8)
}
