use std::io::IsTerminal;
use std::process::ExitCode;

use knotdeform_cli::{color_enabled, parse_args, run, EXIT_USAGE};

fn main() -> ExitCode {
    let mut cmd = match parse_args(std::env::args_os().skip(1)) {
        Ok(cmd) => cmd,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    cmd.color = color_enabled() && std::io::stdout().is_terminal();
    let code = run(&cmd, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
