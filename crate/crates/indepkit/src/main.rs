use std::process::ExitCode;

fn main() -> ExitCode {
    indepkit::cli::run(std::env::args_os())
}
