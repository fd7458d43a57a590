use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::Parser;
use kernstab_cli::{run, Cli, ExperimentConfig, Summary};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

/// `out.csv` + `spectrum` -> `out.spectrum.csv`
fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = path.extension().map(|e| e.to_string_lossy().into_owned()).unwrap_or_else(|| "csv".into());
    path.with_file_name(format!("{stem}.{suffix}.{ext}"))
}

fn execute(cfg: &ExperimentConfig) -> anyhow::Result<bool> {
    let start = Instant::now();
    let outcome = run(cfg)?;
    let elapsed = start.elapsed();

    for (suffix, table) in &outcome.tables {
        let text = table.to_csv();
        match &cfg.out_csv {
            Some(path) => {
                let target = if suffix.is_empty() { path.clone() } else { sibling(path, suffix) };
                std::fs::write(&target, text).with_context(|| format!("writing {}", target.display()))?;
            }
            None if suffix.is_empty() => print!("{text}"),
            None => {}
        }
    }
    if let (Some(path), Some(svg)) = (&cfg.out_svg, &outcome.svg) {
        std::fs::write(path, svg).with_context(|| format!("writing {}", path.display()))?;
    }

    for note in &outcome.notes {
        eprintln!("{note}");
    }
    for c in outcome.checks.iter().filter(|c| c.is_failure()) {
        eprintln!("FAILED {}: lhs = {:e}, rhs = {:e}, slack = {:e}", c.name, c.lhs, c.rhs, c.slack);
    }
    let s = Summary::of(&outcome.checks);
    eprintln!(
        "{}: {} checks passed, {} failed, {} excused (unreliable or degenerate); {:.2} s",
        cfg.command.name(),
        s.passed,
        s.failed,
        s.excused,
        elapsed.as_secs_f64()
    );
    Ok(s.failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = cli.command.split();
    let cfg = match ExperimentConfig::resolve(kind, args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match execute(&cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            let numerical = e
                .downcast_ref::<kernstab_core::Error>()
                .is_some_and(|e| e.is_numerical());
            ExitCode::from(if numerical { EXIT_NUMERICAL } else { EXIT_USAGE })
        }
    }
}
