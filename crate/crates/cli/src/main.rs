use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::Parser;
use horo_cli::run::{csv_name, summary_json};
use horo_cli::{exit_code, parse_config, run_all, RunReport};

/// Runs hyperbolic-geometry scenarios and writes CSV tables and a JSON summary.
#[derive(Debug, Parser)]
#[command(name = "horo", version)]
struct Args {
    /// Scenario file, one scenario per line (see CONFIG.md).
    #[arg(long, conflicts_with = "eval")]
    config: Option<PathBuf>,
    /// A single scenario line given inline.
    #[arg(long)]
    eval: Option<String>,
    /// Seed for Monte Carlo commands; a `seed=` key on a line takes precedence.
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for `NNN-<command>.csv` files and `summary.json`.
    /// Without it the tables are printed to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reject unknown keys instead of ignoring them with a warning.
    #[arg(long)]
    strict: bool,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

fn write_outputs(dir: &PathBuf, reports: &[RunReport], summary: &serde_json::Value) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    for r in reports {
        fs::write(dir.join(csv_name(r)), r.csv())?;
    }
    let mut text = serde_json::to_string_pretty(summary).expect("summary serializes");
    text.push('\n');
    fs::write(dir.join("summary.json"), text)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match (&args.config, &args.eval) {
        (Some(path), _) => match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: IO_ERROR: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        (None, Some(line)) => line.clone(),
        (None, None) => {
            eprintln!("error: pass --config <file> or --eval '<scenario>'");
            return ExitCode::from(2);
        }
    };
    let configs = match parse_config(&text, args.strict) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", e.code);
            return ExitCode::from(2);
        }
    };
    for c in &configs {
        if !c.ignored.is_empty() {
            eprintln!("warning: line {}: ignored unknown keys {:?}", c.line, c.ignored);
        }
    }
    let started = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let clock = Instant::now();
    let reports = run_all(&configs, args.seed, args.workers);
    let summary = summary_json(&reports, args.seed, clock.elapsed().as_secs_f64(), started);
    for r in &reports {
        match &r.error {
            Some(e) => eprintln!("[{:03}] {:?} {}: {} ({})", r.index, r.status, r.command, e.code, e.message),
            None => eprintln!("[{:03}] {:?} {} ({} rows)", r.index, r.status, r.command, r.rows),
        }
    }
    match &args.out {
        Some(dir) => {
            if let Err(e) = write_outputs(dir, &reports, &summary) {
                eprintln!("error: IO_ERROR: {e}");
                return ExitCode::from(2);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            for (i, r) in reports.iter().enumerate() {
                if reports.len() > 1 {
                    let sep = if i > 0 { "\n" } else { "" };
                    let _ = writeln!(stdout, "{sep}# {}", r.command);
                }
                let _ = write!(stdout, "{}", r.csv());
            }
        }
    }
    ExitCode::from(exit_code(&reports) as u8)
}
