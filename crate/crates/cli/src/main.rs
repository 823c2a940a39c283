use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use opgyro_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = stdout.write_all(out.stdout.as_bytes());
            if let Some(b) = &out.breach {
                eprintln!("opgyro: invariant breach: {b}");
            }
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("opgyro: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
