use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use residua::cli::{execute, render, Cli, EXIT_INPUT_ERROR};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT_ERROR as u8 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let (text, code) = render(&cli, &report);
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}
