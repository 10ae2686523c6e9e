use std::fs;
use std::process::ExitCode;

use clap::Parser;
use recmat_cli::{exit_code, run, Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = report.render(cli.common.format);
            print!("{text}");
            if let (Some(path), Command::Verify { .. } | Command::Det { .. }) = (&cli.common.out, &cli.command) {
                if let Err(e) = fs::write(path, &text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            match report.first_failure() {
                None => ExitCode::SUCCESS,
                Some(item) => {
                    eprintln!(
                        "verification failed at {}: expected {}, computed {}",
                        item.input, item.expected, item.computed
                    );
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
