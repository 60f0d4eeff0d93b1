use std::process::ExitCode;

use clap::Parser;

use scancover::cli::{self, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            // Usage errors count as input errors; exit 2 is reserved for
            // algorithms that do not apply.
            return ExitCode::from(if err.use_stderr() { cli::EXIT_INPUT } else { cli::EXIT_OK });
        }
    };
    let mut out = std::io::stdout().lock();
    ExitCode::from(cli::run(cli, &mut out))
}
