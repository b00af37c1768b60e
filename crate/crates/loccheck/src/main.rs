use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(loccheck::cli::run() as u8)
}
