use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use sptwo::cli::{run, Cli, CliError, Status};

fn execute(cli: &Cli) -> Result<Status, CliError> {
    let outcome = run(cli)?;
    match &cli.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            outcome.report.write(cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            outcome.report.write(cli.format, &mut w)?;
            w.flush()?;
        }
    }
    let mut err = io::stderr().lock();
    for line in outcome.report.summary_lines() {
        let _ = writeln!(err, "{line}");
    }
    Ok(outcome.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: cannot start {n} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(&cli) {
        Ok(Status::Passed) => ExitCode::SUCCESS,
        Ok(status) => {
            if let Status::Failed(msg) | Status::Unreachable(msg) = &status {
                eprintln!("error: {msg}");
            }
            ExitCode::from(status.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
