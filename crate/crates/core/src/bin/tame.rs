use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tame_analysis::cli::{run, Cli};

fn main() -> ExitCode {
    if let Some(n) = std::env::var("TAME_ANALYSIS_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Fails only if a global pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cfg = Cli::parse().into_config();
    let out = run(&cfg);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
