use std::process::ExitCode;

use clap::Parser;
use llt_cli::{run, thread_cap, Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match try_main(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn try_main(cli: Cli) -> anyhow::Result<bool> {
    if let Some(n) = thread_cap()? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    let Command::Run(args) = cli.command;
    let outcome = run(&args)?;
    println!(
        "{} {} -> {} ({})",
        outcome.status,
        outcome.manifest.config_hash.get(..12).unwrap_or_default(),
        outcome.csv_path.display(),
        outcome.json_path.display()
    );
    Ok(outcome.status.passed())
}
