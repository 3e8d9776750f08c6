#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use casimir_core::CasimirError;
use clap::Parser;
use thiserror::Error;

use args::{Cli, Command};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0} criteria failed")]
    Validation(usize),
    #[error(transparent)]
    Io(std::io::Error),
}

impl CliError {
    pub fn from_core(e: CasimirError) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Factors {
            gap,
            physics,
            output,
            numerics,
        } => commands::factors(*gap, physics, output, numerics),
        Command::Sweep {
            range,
            physics,
            output,
            numerics,
        } => commands::sweep_range(range, physics, output, numerics),
        Command::Figures {
            range,
            temperature,
            format,
            out,
            numerics,
        } => commands::figures(range, *temperature, *format, out, numerics),
        Command::Validate {
            criteria,
            mode,
            abs_tol,
            rel_tol,
            tamper_hbar,
        } => commands::validate(criteria, *mode, *abs_tol, *rel_tol, *tamper_hbar),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("casimir: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
