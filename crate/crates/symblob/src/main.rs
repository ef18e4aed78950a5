use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(symblob::cli::run())
}
