//! `singularity` command-line interface.
//!
//! ```bash
//! singularity run                          # canonical dataset, markdown to stdout
//! singularity run --format csv --out table.csv
//! singularity fit --table data/published_table.txt
//! singularity sense --delta 0.05 --samples 10000 --seed 42
//! singularity tornado
//! singularity validate --dataset my.toml
//! singularity export --out my.toml         # canonical dataset as a template
//! ```
//!
//! Exit codes: 0 success, 1 validation/parse/IO failure, 2 bad invocation.
//! `SINGULARITY_DATASET` names a dataset file used when `--dataset` is absent.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use singularity_metric::engine::UNIVERSAL_PRIOR;
use singularity_metric::fit::{fit_grid, DEFAULT_MAX_RESIDUAL};
use singularity_metric::io::report::{render_fit, render_sensitivity};
use singularity_metric::io::{
    emit_report, load_dataset, load_schedule, parse_grid, serialize_dataset, ReportFormat,
};
use singularity_metric::sensitivity::{perturb_metric, tornado, PerturbationSpec};
use singularity_metric::{
    canonical_dataset, run, validate_matrix, AssessmentMatrix, LevelSchedule,
};

const DATASET_ENV: &str = "SINGULARITY_DATASET";

#[derive(Parser)]
#[command(
    name = "singularity",
    version,
    about = "Sequential Bayesian evidence aggregation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Md,
    Csv,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Md => ReportFormat::Md,
            Format::Csv => ReportFormat::Csv,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the posterior table and the mean metric.
    Run {
        #[arg(long)]
        dataset: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover likelihood ratios from a displayed table, snap and audit it.
    Fit {
        #[arg(long)]
        table: PathBuf,
        /// Schedule or dataset document; defaults to the canonical schedule.
        #[arg(long)]
        schedule: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_RESIDUAL)]
        max_residual: f64,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Monte Carlo perturbation of the level schedule.
    Sense {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        dataset: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// One-rung-up / one-rung-down sensitivity of every cell.
    Tornado {
        #[arg(long)]
        dataset: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Check a dataset document and list every violation.
    Validate {
        #[arg(long)]
        dataset: PathBuf,
    },
    /// Write the canonical dataset document.
    Export {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn dataset(path: Option<PathBuf>) -> Result<AssessmentMatrix> {
    let path = path.or_else(|| std::env::var_os(DATASET_ENV).map(PathBuf::from));
    match path {
        None => Ok(canonical_dataset()),
        Some(p) => load_dataset(&read(&p)?).with_context(|| format!("loading {}", p.display())),
    }
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(&p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cmd: Command) -> Result<()> {
    match cmd {
        Command::Run {
            dataset: path,
            format,
            out,
        } => {
            let table = run(&dataset(path)?)?;
            emit(&emit_report(&table, format.into()), out)
        }
        Command::Fit {
            table,
            schedule,
            max_residual,
            format,
        } => {
            let grid = parse_grid(&read(&table)?)
                .with_context(|| format!("parsing {}", table.display()))?;
            let schedule = match schedule {
                Some(p) => {
                    load_schedule(&read(&p)?).with_context(|| format!("loading {}", p.display()))?
                }
                None => LevelSchedule::canonical(),
            };
            let report = fit_grid(&grid, &schedule, UNIVERSAL_PRIOR, max_residual);
            emit(&render_fit(&report, format.into()), None)
        }
        Command::Sense {
            delta,
            samples,
            seed,
            dataset: path,
            format,
        } => {
            let spec = PerturbationSpec {
                delta,
                samples,
                seed,
            };
            let report = perturb_metric(&dataset(path)?, &spec)?;
            emit(&render_sensitivity(&report, format.into()), None)
        }
        Command::Tornado {
            dataset: path,
            format,
        } => {
            let report = tornado(&dataset(path)?)?;
            emit(&render_sensitivity(&report, format.into()), None)
        }
        Command::Validate { dataset: path } => {
            let m = load_dataset(&read(&path)?)
                .with_context(|| format!("loading {}", path.display()))?;
            debug_assert!(validate_matrix(&m).is_empty());
            println!(
                "{}: valid ({} sorts x {} evidences, {} levels)",
                path.display(),
                m.sorts.len(),
                m.evidences.len(),
                m.schedule.len()
            );
            Ok(())
        }
        Command::Export { out } => emit(&serialize_dataset(&canonical_dataset()), out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(singularity_metric::Error::InvalidMatrix(v)) = e.downcast_ref() {
                for violation in v {
                    eprintln!("  {violation}");
                }
            }
            ExitCode::from(1)
        }
    }
}
