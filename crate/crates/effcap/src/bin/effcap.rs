//! Binary entry point: parse arguments, run, map errors onto exit codes.

use clap::Parser;

use effcap::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
