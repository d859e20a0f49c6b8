use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(ridgeline::cli::run(std::env::args_os()) as u8)
}
