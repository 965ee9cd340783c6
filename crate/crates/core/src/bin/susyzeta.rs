use std::process::ExitCode;

fn main() -> ExitCode {
    susyzeta::cli::main_with_args(std::env::args_os())
}
