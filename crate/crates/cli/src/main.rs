use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = tconic_cli::configure_workers() {
        eprintln!("error: {e}");
        return ExitCode::from(tconic_cli::EXIT_INPUT as u8);
    }
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = tconic_cli::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code as u8)
}
