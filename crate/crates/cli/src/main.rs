//! `carlitz`: batch verification runs with JSON or CSV reports.
//!
//! Exit status is 0 when every check passes, 1 when a check fails or the report cannot be
//! written, and 2 for unparsable arguments or inputs.

mod config;
mod output;
mod run;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use config::{Format, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let out = match run::run(&cfg) {
        Ok(out) => out,
        Err(run::InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match &cfg.output {
        Some(path) => File::create(path).and_then(|f| emit(&cfg, &out, &mut BufWriter::new(f))),
        None => emit(&cfg, &out, &mut std::io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if out.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn emit(cfg: &RunConfig, out: &output::Output, w: &mut impl Write) -> std::io::Result<()> {
    match cfg.format {
        Format::Json => output::write_json(w, cfg, out)?,
        Format::Csv => output::write_csv(w, out)?,
    }
    w.flush()
}
