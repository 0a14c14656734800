use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(tokenlap::cli::run(std::env::args_os()))
}
