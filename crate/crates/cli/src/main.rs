use std::fs;
use std::io::Write;
use std::process::ExitCode;

use circle_estimation_cli::{run, Cli, CliError};
use clap::error::ErrorKind;
use clap::Parser;

const USAGE_ERROR: u8 = 1;
const VERIFICATION_FAILURE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(USAGE_ERROR);
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e @ (CliError::Usage(_) | CliError::Model(_))) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE_ERROR);
        }
    };

    let written = match &cli.out {
        Some(path) => fs::write(path, &report.body).and_then(|_| match &report.summary {
            Some(s) => {
                let mut name = path.clone().into_os_string();
                name.push(".summary.json");
                fs::write(name, s)
            }
            None => Ok(()),
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(report.body.as_bytes())
                .and_then(|_| out.flush())
                .and_then(|_| match &report.summary {
                    Some(s) => std::io::stderr().write_all(s.as_bytes()),
                    None => Ok(()),
                })
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(USAGE_ERROR);
    }

    if report.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("verification failed");
        ExitCode::from(VERIFICATION_FAILURE)
    }
}
