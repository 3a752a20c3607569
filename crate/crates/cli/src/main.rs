//! `qeuler`: evaluate q-Euler families, run verification suites, tabulate
//! q-zeta values and p-adic convergence.

mod args;
mod eval;
mod output;
mod padic;
mod verify;
mod zeta;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qeuler_core::Error;

use output::Format;

#[derive(Parser)]
#[command(name = "qeuler", version, about = "Higher-order q-Euler polynomials and q-zeta functions")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Values E_0..E_nmax of one family.
    Eval(eval::EvalArgs),
    /// Run a verification suite over the standard grid.
    Verify(verify::VerifyArgs),
    /// Tabulate the q-zeta (or q-l) function on a list of s values.
    Zeta(zeta::ZetaArgs),
    /// Finite-level fermionic sums against the exact value.
    Padic(padic::PadicArgs),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let is_verify = matches!(cli.command, Command::Verify(_));
    let result = match cli.command {
        Command::Eval(a) => eval::run(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Zeta(a) => zeta::run(&a),
        Command::Padic(a) => padic::run(&a),
    };
    match result {
        Ok(table) => {
            table.print(cli.format);
            if is_verify && table.pass == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
