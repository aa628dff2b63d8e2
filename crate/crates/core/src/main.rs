use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use fundom::cli::{run, Cli, JobConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = JobConfig::from_cli(cli).and_then(|cfg| {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        let code = run(&cfg, &mut lock)?;
        lock.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
