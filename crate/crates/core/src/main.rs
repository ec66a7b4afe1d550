use std::process::ExitCode;

fn main() -> ExitCode {
    morphwing::cli::main_with(std::env::args_os())
}
