//! Batch front end: scenario configs in, CSV/JSON rows or a discrepancy
//! report out.
//!
//! Exit codes: 0 on success, 1 if the output cannot be written, 2 for an
//! invalid config or invocation, 3 if any sweep point or report section
//! failed numerically (the remaining rows are still written).

pub mod config;
pub mod output;
pub mod report;
pub mod scenario;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use crate::classification::DEFAULT_TOLERANCE;
use crate::exec::{self, Execution};

pub use config::{ConfigError, OutputFormat, Scenario, ScenarioConfig};
pub use report::{build_report, DiscrepancyEntry, DiscrepancyReport, Verdict};
pub use scenario::{run_points, Row};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Run,
    Report,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub command: Command,
    pub config: PathBuf,
    pub output: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub jobs: Option<usize>,
    pub tolerance: f64,
}

impl Invocation {
    pub fn new(command: Command, config: impl Into<PathBuf>) -> Self {
        Invocation {
            command,
            config: config.into(),
            output: None,
            format: None,
            jobs: None,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

fn sink(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Runs one invocation and returns its exit code. Diagnostics go to stderr.
pub fn execute(inv: &Invocation) -> i32 {
    if !(inv.tolerance > 0.0 && inv.tolerance.is_finite()) {
        eprintln!("error: --tolerance must be positive and finite");
        return EXIT_CONFIG;
    }
    if inv.jobs == Some(0) {
        eprintln!("error: --jobs must be at least 1");
        return EXIT_CONFIG;
    }
    let cfg = match ScenarioConfig::load(&inv.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", inv.config.display());
            return EXIT_CONFIG;
        }
    };
    if inv.command == Command::Report && !matches!(cfg.scenario, Scenario::CurvatureReport | Scenario::RadialModes) {
        eprintln!(
            "error: {}: report needs a curvature_report or radial_modes config, found {}",
            inv.config.display(),
            cfg.scenario
        );
        return EXIT_CONFIG;
    }
    let format = inv.format.or(cfg.format).unwrap_or(OutputFormat::Csv);
    let out_path = inv.output.clone().or_else(|| cfg.output.clone());

    let (written, failed) = exec::with_threads(inv.jobs, || match inv.command {
        Command::Run => {
            let rows = run_points(cfg.scenario, &cfg.points(), inv.tolerance, Execution::default());
            let failed = rows.iter().filter(|r| r.outcome.is_err()).count();
            for r in rows.iter().filter(|r| r.outcome.is_err()) {
                eprintln!("warning: row {}: {}", r.index, r.status());
            }
            let written = sink(out_path.as_ref()).and_then(|mut w| {
                match format {
                    OutputFormat::Csv => output::write_rows_csv(&mut w, cfg.scenario, &rows)?,
                    OutputFormat::Json => output::write_json(&mut w, &output::rows_json(cfg.scenario, &rows))?,
                }
                w.flush()
            });
            (written, failed)
        }
        Command::Report => {
            let rep = build_report(&cfg, inv.tolerance, Execution::default());
            for f in &rep.failures {
                eprintln!("warning: {f}");
            }
            let written = sink(out_path.as_ref()).and_then(|mut w| {
                match format {
                    OutputFormat::Csv => output::write_report_csv(&mut w, &rep)?,
                    OutputFormat::Json => output::write_json(&mut w, &output::report_json(&rep))?,
                }
                w.flush()
            });
            (written, rep.failures.len())
        }
    });

    if let Err(e) = written {
        let target = out_path.map_or("stdout".to_string(), |p| p.display().to_string());
        eprintln!("error: cannot write {target}: {e}");
        return EXIT_IO;
    }
    if failed > 0 {
        EXIT_NUMERIC
    } else {
        EXIT_OK
    }
}
