//! `photon-ledger`: analyze bit files, simulate amplified fiber links, and
//! place amplifiers.

mod analyze;
mod args;
mod optimize;
mod outcome;
mod simulate;

use clap::Parser;

use crate::args::{Cli, Command};

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => analyze::run(&cli.global, a),
        Command::Simulate(s) => simulate::run(&cli.global, s),
        Command::Optimize(o) => optimize::run(&cli.global, o),
    };
    let code = match result {
        Ok(outcome) => {
            for path in &outcome.reports {
                eprintln!("wrote {}", path.display());
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    };
    std::process::exit(code);
}
