pub mod args;
pub mod commands;
pub mod error;
pub mod formats;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::error::CliResult;

pub fn run(cli: &Cli) -> CliResult<()> {
    attndisco::par::configure_workers(cli.workers);
    match &cli.command {
        Command::Parse(a) => commands::parse::run(a),
        Command::Eval(a) => commands::eval::run(a),
        Command::Sweep(a) => commands::sweep::run(a),
        Command::Baseline(a) => commands::baseline::run(a),
        Command::Convert(a) => commands::convert::run(a),
        Command::Stats(a) => commands::stats::run(a),
        Command::Oracle(a) => commands::oracle::run(a),
    }
}

pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
