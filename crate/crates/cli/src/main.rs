use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use dpdp_cli::{exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let status = run(&cli, &mut out);
    let _ = out.flush();
    match status {
        Ok(status) => ExitCode::from(status as u8),
        Err(err) => {
            eprintln!("dpdp: {err:#}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
