//! Experiment runner behind the `llt` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use llt_core::integrate::QuadratureSpec;
use llt_core::llt::{base_density, bounds_table, necessary_condition_probe, run_llt_sweep};
use llt_core::oracle::{diagonal_grid, property_suite, two_summand_check, PropertyCheck};
use llt_core::{gauss_hermite_rule, tensor_rule, Experiment, Integrator, LltConfig, Status};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Random expansions added to the corpus by `property-suite`.
pub const PROPERTY_SUITE_RANDOM: usize = 50;
/// Grid for `prop1-check`.
pub const TWO_SUMMAND_GRID: (f64, f64, usize) = (-4.0, 4.0, 41);

#[derive(Debug, Parser)]
#[command(
    name = "llt",
    version,
    about = "Gaussian local limit theorem experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one experiment and write its CSV and JSON reports.
    Run(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Experiment config (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// CSV output path; the JSON report goes next to it.
    #[arg(long)]
    pub out: PathBuf,
    /// Overrides the experiment named in the config.
    #[arg(long)]
    pub experiment: Option<Experiment>,
    /// Overrides the seed in the config.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub config_path: PathBuf,
    /// SHA-256 of the canonical config after command line overrides.
    pub config_hash: String,
    pub version: String,
    pub threads: usize,
    pub timings: Vec<StageTiming>,
}

#[derive(Debug, Serialize)]
struct JsonReport<'a> {
    experiment: Experiment,
    status: Status,
    config: &'a LltConfig,
    manifest: &'a RunManifest,
    result: serde_json::Value,
}

#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub csv_path: PathBuf,
    pub json_path: PathBuf,
    pub manifest: RunManifest,
}

struct Artifacts {
    status: Status,
    csv: String,
    result: serde_json::Value,
    summary: String,
}

struct Timer {
    timings: Vec<StageTiming>,
    verbose: bool,
}

impl Timer {
    fn stage<T>(&mut self, stage: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f();
        let seconds = start.elapsed().as_secs_f64();
        if self.verbose {
            eprintln!("[llt] {stage}: {seconds:.3}s");
        }
        self.timings.push(StageTiming {
            stage: stage.into(),
            seconds,
        });
        out
    }
}

pub fn config_hash(config: &LltConfig) -> String {
    Sha256::digest(config.canonical_json().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// JSON report path for a CSV path: same stem, `.json` extension.
pub fn json_path_for(out: &Path) -> PathBuf {
    let candidate = out.with_extension("json");
    if candidate == out {
        out.with_extension("report.json")
    } else {
        candidate
    }
}

pub fn load_config(args: &RunArgs) -> Result<LltConfig> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading config {}", args.config.display()))?;
    let mut config =
        LltConfig::from_json(&text).with_context(|| format!("config {}", args.config.display()))?;
    if let Some(e) = args.experiment {
        config.experiment = e;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    Ok(config)
}

pub fn run(args: &RunArgs) -> Result<Outcome> {
    let mut timer = Timer {
        timings: Vec::new(),
        verbose: args.verbose,
    };
    let config = timer.stage("load-config", || load_config(args))?;
    if args.verbose {
        eprintln!(
            "[llt] experiment {} on a {}-dimensional law, {} threads",
            config.experiment,
            config.law.dim(),
            rayon::current_num_threads()
        );
    }
    let artifacts = timer.stage(config.experiment.name(), || execute(&config))?;
    if args.verbose {
        eprintln!("[llt] {}", artifacts.summary);
    }

    let csv_path = args.out.clone();
    let json_path = json_path_for(&csv_path);
    timer.stage("write-csv", || {
        fs::write(&csv_path, &artifacts.csv)
            .with_context(|| format!("writing {}", csv_path.display()))
    })?;
    let mut manifest = RunManifest {
        config_path: args.config.clone(),
        config_hash: config_hash(&config),
        version: env!("CARGO_PKG_VERSION").into(),
        threads: rayon::current_num_threads(),
        timings: timer.timings,
    };
    let write_json = |manifest: &RunManifest| -> Result<()> {
        let report = JsonReport {
            experiment: config.experiment,
            status: artifacts.status,
            config: &config,
            manifest,
            result: artifacts.result.clone(),
        };
        let text = serde_json::to_string_pretty(&report)?;
        fs::write(&json_path, text + "\n")
            .with_context(|| format!("writing {}", json_path.display()))
    };
    let start = Instant::now();
    write_json(&manifest)?;
    manifest.timings.push(StageTiming {
        stage: "write-json".into(),
        seconds: start.elapsed().as_secs_f64(),
    });
    write_json(&manifest)?;

    Ok(Outcome {
        status: artifacts.status,
        csv_path,
        json_path,
        manifest,
    })
}

fn status_of(passed: bool) -> Status {
    if passed {
        Status::Passed
    } else {
        Status::Failed
    }
}

fn execute(config: &LltConfig) -> Result<Artifacts> {
    Ok(match config.experiment {
        Experiment::LltSweep => {
            let report = run_llt_sweep(config)?;
            let summary = match report.fit {
                Some(fit) => format!(
                    "fitted slope {:.4} over {} points",
                    fit.slope, fit.points_used
                ),
                None => "no rate fit".into(),
            };
            Artifacts {
                status: report.status,
                csv: report.to_csv(),
                result: serde_json::to_value(&report)?,
                summary: format!("{summary}; {}", report.status),
            }
        }
        Experiment::TwoSummandCheck => {
            let nodes = match config.quadrature {
                QuadratureSpec::Gauss { nodes_1d } => nodes_1d,
                QuadratureSpec::QuasiMonteCarlo { .. } => {
                    anyhow::bail!(
                        "quadrature: prop1-check needs a Gauss rule ({{\"nodes_1d\": int}})"
                    )
                }
            };
            let d = config.law.dim();
            let rule = tensor_rule(&gauss_hermite_rule(nodes)?, d)?;
            let (lo, hi, count) = TWO_SUMMAND_GRID;
            let grid = diagonal_grid(d, lo, hi, count);
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let report = two_summand_check(
                &config.law,
                &config.law,
                h,
                h,
                config.truncation,
                &grid,
                &rule,
            )
            .context("prop1-check; a higher truncation or node count may help")?;
            Artifacts {
                status: status_of(report.passed()),
                csv: report.to_csv(),
                summary: format!("max gap {:.3e}", report.max_gap),
                result: serde_json::to_value(&report)?,
            }
        }
        Experiment::NecessaryCondition => {
            let f0 = base_density(&config.law, config.alpha, config.truncation)?;
            let integ = Integrator::new(config.quadrature, config.law.dim())?;
            let report = necessary_condition_probe(&f0, config.alpha, &config.n_values, &integ)
                .context("necessary-condition needs a law whose mean or covariance differs from the standard Gaussian")?;
            Artifacts {
                status: report.status,
                csv: report.to_csv(),
                summary: format!(
                    "min distance {:.4} (floor {})",
                    report.min_distance, report.floor
                ),
                result: serde_json::to_value(&report)?,
            }
        }
        Experiment::BoundsTable => {
            let dims: Vec<usize> = if config.law.dim() == 1 {
                vec![1, 2, 3]
            } else {
                vec![config.law.dim()]
            };
            let table = bounds_table(config, &dims)?;
            let finite = table.rows.iter().filter(|r| r.eligible).all(|r| {
                [
                    r.theorem_bound,
                    r.corollary_bound,
                    r.corollary_bound_fixed_norm,
                    r.bentkus_bound,
                ]
                .iter()
                .all(|v| v.is_finite())
            });
            Artifacts {
                status: status_of(finite),
                csv: table.to_csv(),
                summary: format!("{} rows", table.rows.len()),
                result: serde_json::to_value(&table)?,
            }
        }
        Experiment::PropertySuite => {
            let checks = property_suite(PROPERTY_SUITE_RANDOM, config.seed)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            Artifacts {
                status: status_of(failed == 0),
                csv: property_csv(&checks),
                summary: format!("{} checks, {failed} failed", checks.len()),
                result: serde_json::to_value(&checks)?,
            }
        }
    })
}

fn property_csv(checks: &[PropertyCheck]) -> String {
    use llt_core::llt::fmt_float;
    let mut out = String::from("property,subject,lhs,rhs,quad_error,passed\n");
    for c in checks {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            c.property,
            c.subject,
            fmt_float(c.lhs),
            fmt_float(c.rhs),
            fmt_float(c.quad_error),
            c.passed
        ));
    }
    out
}

/// Worker count from `LLT_THREADS`, if set.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var("LLT_THREADS") {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .with_context(|| format!("LLT_THREADS: expected a positive integer, got `{v}`"))?;
            anyhow::ensure!(n > 0, "LLT_THREADS: expected a positive integer, got 0");
            Ok(Some(n))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(e).context("LLT_THREADS"),
    }
}
