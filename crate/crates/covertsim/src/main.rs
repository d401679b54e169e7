use std::process::ExitCode;

use clap::Parser;

use covertsim::cli::{self, Cli};

fn main() -> ExitCode {
    // Restore default SIGPIPE handling so piping into `head` and friends
    // terminates quietly instead of panicking on a closed stdout.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let args = Cli::parse();
    match cli::run(args) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(cli::exit_code_for(&err))
        }
    }
}
