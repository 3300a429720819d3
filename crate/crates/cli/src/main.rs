use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::init();
    let result = qgauge_cli::run(std::env::args_os());
    print!("{}", result.output);
    eprint!("{}", result.error);
    let _ = std::io::stdout().flush();
    ExitCode::from(result.status as u8)
}
