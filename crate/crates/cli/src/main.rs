mod args;
mod commands;
mod verify;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, Command};

/// A failed check found by the CLI itself; reported as a JSON witness.
#[derive(Debug)]
pub struct Failure {
    pub check: String,
    pub detail: String,
    pub witness: serde_json::Value,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} failed: {}", self.check, self.detail)
    }
}

impl std::error::Error for Failure {}

/// A request the CLI refuses to run as given.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global();
    }
    let result = match &cli.command {
        Command::Count(a) => commands::count(&cli.global, a),
        Command::Enumerate(a) => commands::enumerate(&cli.global, a),
        Command::Verify(a) => verify::run(&cli.global, a),
        Command::Construct(a) => commands::construct(&cli.global, a),
        Command::Approximate(a) => commands::approximate(&cli.global, a),
        Command::Bounds(a) => commands::bounds(&cli.global, a),
        Command::Sample(a) => commands::sample(&cli.global, a),
        Command::Render(a) => commands::render(&cli.global, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(&e),
    }
}

fn report(e: &anyhow::Error) -> ExitCode {
    use oddcut_core::Error as E;
    let failure = |check: &str, detail: String, witness: serde_json::Value| {
        let out = json!({
            "status": "fail",
            "check": check,
            "detail": detail,
            "witness": witness,
        });
        println!("{out}");
        eprintln!("error: {e:#}");
        ExitCode::from(1)
    };
    for cause in e.chain() {
        if let Some(f) = cause.downcast_ref::<Failure>() {
            return failure(&f.check, f.detail.clone(), f.witness.clone());
        }
        if let Some(u) = cause.downcast_ref::<Usage>() {
            eprintln!("error: {u}");
            return ExitCode::from(2);
        }
        if let Some(core) = cause.downcast_ref::<E>() {
            return match core {
                E::Assertion {
                    check,
                    detail,
                    witness,
                } => failure(check, detail.clone(), json!(witness)),
                E::CacheConflict {
                    key,
                    stored,
                    derived,
                } => failure(
                    "cache agreement",
                    core.to_string(),
                    json!({"key": key, "stored": stored, "derived": derived}),
                ),
                E::WindowOverflow { radius, .. } => {
                    failure("search window", core.to_string(), json!({"radius": radius}))
                }
                E::InvalidInput(_) | E::Dimension(_) | E::Envelope { .. } | E::EmptySet(_) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(2)
                }
                _ => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(1)
                }
            };
        }
    }
    eprintln!("error: {e:#}");
    ExitCode::from(1)
}
