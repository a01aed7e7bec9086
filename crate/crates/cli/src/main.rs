mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;
use gamepricing::{load_game_spec, Game64};

use crate::config::RunConfig;

const EXIT_VALIDATION: u8 = 1;
const EXIT_CONSISTENCY: u8 = 3;

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help, --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    if let Err(msg) = config.check() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_VALIDATION);
    }
    let text = match std::fs::read_to_string(&config.game) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read game file {}: {e}", config.game.display());
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    let result = load_game_spec::<f64>(&text, config.normalize)
        .and_then(|game: Game64| commands::run(&config, &game));
    match result {
        Ok(out) => {
            println!("{}", out.text.trim_end());
            if out.all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CONSISTENCY)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
