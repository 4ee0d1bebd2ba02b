use std::process::ExitCode;

use clap::Parser;

use wkqfa_cli::commands::{execute, Cli, Format};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(&cli) {
        Ok(output) => {
            print!("{}", output.render(cli.format));
            if output.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => eprintln!("{}", e.to_json()),
            }
            ExitCode::from(2)
        }
    }
}
