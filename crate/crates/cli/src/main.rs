use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use xxring_cli::{run, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(&cli, &mut out).and_then(|s| out.flush().map(|_| s).map_err(Into::into)) {
        Ok(Status::Success) => 0,
        Ok(Status::Failure) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
