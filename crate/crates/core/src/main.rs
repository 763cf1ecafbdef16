use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = eulerkit::cli::run(std::env::args_os());
    if code == eulerkit::cli::EXIT_ERROR {
        eprintln!("{out}");
    } else if !out.is_empty() {
        println!("{out}");
    }
    ExitCode::from(code as u8)
}
