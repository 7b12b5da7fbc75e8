use std::process::ExitCode;

fn main() -> ExitCode {
    kernelflow::cli::run(std::env::args_os())
}
