mod args;
mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use affsatake::Error;
use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::{Cli, Command};
use commands::{CliError, Precision};

/// Exit status for input that fails validation.
const EXIT_INVALID: u8 = 2;
/// Exit status for a computation that could not finish.
const EXIT_COMPUTE: u8 = 3;

fn is_computation_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::NotStabilized { .. }
            | Error::NotConverged { .. }
            | Error::Internal { .. }
            | Error::DivisionByZero { .. }
    )
}

fn fail(module: &str, operation: &str, message: &str, code: u8) -> ExitCode {
    let doc = json!({"error": {"module": module, "operation": operation, "message": message}});
    eprintln!("{}", serde_json::to_string_pretty(&doc).expect("error serializes"));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("cli", "parse_arguments", e.to_string().trim(), EXIT_INVALID),
    };
    let result = Precision::from_bits(cli.precision).and_then(|p| match &cli.command {
        Command::Rootdata(a) => commands::rootdata(a),
        Command::Macdonald(a) => commands::macdonald(a),
        Command::Kostka(a) => commands::kostka(a),
        Command::Delta(a) => commands::delta(a),
        Command::Gk(a) => commands::gk(a),
        Command::HeckeCheck(a) => commands::hecke_check(a),
        Command::Zeta(a) => commands::zeta(a, p, cli.precision),
        Command::Tamagawa(a) => commands::tamagawa(a),
        Command::TamagawaAffine(a) => commands::tamagawa_aff(a),
        Command::ConstantTerm(a) => commands::constant_term(a, p),
        Command::AffineCt(a) => commands::affine_ct(a, p),
    });
    match result {
        Ok(doc) => {
            let out = render::render(&doc, cli.format);
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => fail("cli", "validate", &msg, EXIT_INVALID),
        Err(CliError::Core(e)) => {
            let code = if is_computation_failure(&e) {
                EXIT_COMPUTE
            } else {
                EXIT_INVALID
            };
            fail(e.module(), e.operation(), &e.to_string(), code)
        }
    }
}
