use std::process::ExitCode;

use bicross::cli::{run, Cli, THREADS_ENV};
use bicross::commands::Session;
use clap::Parser;

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("{THREADS_ENV}={v} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let command: Vec<String> = std::env::args().skip(1).collect();
    let mut session = Session::default();
    let started = std::time::Instant::now();
    match run(&cli, &mut session) {
        Ok(outcome) => {
            let report = session.report(command, &outcome);
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            eprintln!("{} ({:.2?})", outcome.summary, started.elapsed());
            eprintln!("{}", if outcome.passed { "PASS" } else { "FAIL" });
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
