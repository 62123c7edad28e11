use std::process::ExitCode;

use cdvlab::{run, write_outputs, RunConfig, Status, THREADS_ENV};
use clap::Parser;

fn main() -> ExitCode {
    let config = RunConfig::parse();
    if let Some(threads) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("warning: {THREADS_ENV} ignored: {e}");
        }
    }
    let outcome = run(&config);
    if outcome.status == Status::InputError || outcome.status == Status::ResourceCap {
        eprint!("{}", outcome.text);
    } else {
        print!("{}", outcome.text);
    }
    match write_outputs(&config, &outcome) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
        }
        Err(e) => {
            eprintln!("error: cannot write outputs: {e}");
            return ExitCode::from(Status::InputError.code() as u8);
        }
    }
    ExitCode::from(outcome.status.code() as u8)
}
