use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sepder::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let status = run(&cli, &mut out);
    std::io::stdout().write_all(out.as_bytes()).expect("stdout");
    match status {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
