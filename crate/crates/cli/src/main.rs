use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(triqubit_cli::run(std::env::args_os()))
}
