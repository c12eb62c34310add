use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(pak::cli::run(std::env::args()))
}
