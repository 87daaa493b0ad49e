use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ramify::cli::{self, Cli, Format};

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli::run(&args) {
        Ok(out) => {
            let mut so = std::io::stdout().lock();
            let _ = so.write_all(out.render(args.format).as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            match args.format {
                Format::Json => eprintln!("{}", cli::error_json(&e)),
                Format::Text => eprintln!("error: {}", e),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
