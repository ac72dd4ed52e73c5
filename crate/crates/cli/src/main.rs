use std::io::{self, Write};
use std::process::ExitCode;

use dtseries_cli::error::EXIT_OK;
use dtseries_cli::{parse_args, run};

fn main() -> ExitCode {
    let code = match parse_args(std::env::args_os()) {
        Ok(None) => EXIT_OK,
        Ok(Some(cli)) => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            let result = run(&cli, &mut out);
            let _ = out.flush();
            match result {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
