//! Command-line front end for `opgyro`: time series, coupling sweeps,
//! invariant checks and coefficient tables as CSV or JSON.
//!
//! Exit codes: 0 success, 2 configuration error, 3 invariant breach.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;

pub use args::{Cli, Command, Format};
pub use config::RunConfig;
pub use error::{CliError, CliResult};

use commands::expansion::expansion_table;
use format::Table;

/// What a command wrote to stdout, plus the breach that should turn the
/// exit code into 3.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub breach: Option<String>,
}

impl Output {
    fn clean(stdout: String) -> Self {
        Self {
            stdout,
            breach: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.breach.is_some() {
            3
        } else {
            0
        }
    }
}

fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

pub fn execute(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Simulate { system, pulse } => {
            let cfg = RunConfig::from_args(system, Some(pulse))?;
            let (table, breach) = commands::simulate(&cfg)?;
            Ok(Output {
                stdout: render(&table, cfg.format()),
                breach,
            })
        }
        Command::Sweep {
            system,
            from,
            to,
            points,
        } => {
            let cfg = RunConfig::from_args(system, None)?;
            let (table, breach) = commands::sweep(&cfg, *from, *to, *points)?;
            Ok(Output {
                stdout: render(&table, cfg.format()),
                breach,
            })
        }
        Command::Verify {
            system,
            inject_fault,
        } => {
            let cfg = RunConfig::from_args(system, None)?;
            let report = commands::verify(&cfg, *inject_fault)?;
            let breach = (!report.passed()).then(|| "verification failed".to_string());
            Ok(Output {
                stdout: report.render(),
                breach,
            })
        }
        Command::Coefficients { j, n_max, format } => {
            let j = j
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("--j: `{j}` is not a half-integer")))?;
            let table = commands::coefficients(j, *n_max)?;
            Ok(Output::clean(render(&table, format.unwrap_or_default())))
        }
        Command::Expansion { system } => {
            let cfg = RunConfig::from_args(system, None)?;
            let e = commands::expansion(&cfg)?;
            let stdout = match cfg.format.unwrap_or(Format::Json) {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&commands::expansion_json(&e))
                        .expect("serialisable");
                    s.push('\n');
                    s
                }
                Format::Csv => expansion_table(&e).to_csv(),
            };
            Ok(Output::clean(stdout))
        }
    }
}
