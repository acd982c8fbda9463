use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use serde_json::json;

use qkernel_cli::args::{Cli, Command};
use qkernel_cli::commands::{self, KernelFormat, Outcome};
use qkernel_cli::figures;
use qkernel_cli::RunReport;

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Kernel { .. } => "kernel",
        Command::Classify { .. } => "classify",
        Command::Solve { .. } => "solve",
        Command::Sigma => "sigma",
        Command::Fractal { .. } => "fractal",
        Command::Oracle { .. } => "oracle",
        Command::Figures => "figures",
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("QKERNEL_THREADS") {
        let n: usize = v
            .parse()
            .with_context(|| format!("QKERNEL_THREADS={v:?} is not a thread count"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot configure worker pool")?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<RunReport> {
    configure_threads()?;
    let out = cli.out.as_deref();
    let outcome = match &cli.command {
        Command::Kernel { spectrum, bitsums } => commands::cmd_kernel(
            cli.size,
            KernelFormat::parse(cli.format.as_deref())?,
            *spectrum,
            *bitsums,
            out,
        )?,
        Command::Classify { input, random } => {
            commands::cmd_classify(cli.size, input.as_deref(), *random, cli.seed, cli.one_based)?
        }
        Command::Solve { method } => commands::cmd_solve(cli.size, *method, cli.one_based)?,
        Command::Sigma => commands::cmd_sigma(cli.size, cli.format.as_deref())?,
        Command::Fractal { op, bits } => {
            commands::cmd_fractal(op, *bits, cli.format.as_deref(), out)?
        }
        Command::Oracle { counts } => commands::cmd_oracle(cli.size, *counts, cli.one_based)?,
        Command::Figures => {
            let dir = cli.out.clone().unwrap_or_else(figures::default_outdir);
            let report = figures::cmd_figures(&dir)?;
            print_report(&report)?;
            return Ok(report);
        }
    };
    deliver(outcome, out, &cli.command)
}

/// Document products go to stdout, or to `--out` followed by the report.
fn deliver(outcome: Outcome, out: Option<&Path>, command: &Command) -> Result<RunReport> {
    let Outcome { mut report, product } = outcome;
    let writes_own_files = matches!(command, Command::Kernel { .. } | Command::Fractal { .. });
    match product {
        Some(doc) if !writes_own_files && out.is_some() => {
            let path = out.expect("checked");
            commands::write_file(path, |w| w.write_all(doc.as_bytes()))?;
            report.output(path);
            let report = report.finish();
            print_report(&report)?;
            Ok(report)
        }
        Some(doc) => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(doc.as_bytes())?;
            stdout.flush()?;
            Ok(report.finish())
        }
        None => {
            let report = report.finish();
            print_report(&report)?;
            Ok(report)
        }
    }
}

fn print_report(report: &RunReport) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, report)?;
    writeln!(stdout)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok(report) if report.all_passed() => ExitCode::SUCCESS,
        Ok(report) => {
            let failure = json!({
                "command": name,
                "error": "internal checks failed",
                "failed_checks": report.failed_checks(),
                "outputs": report.outputs,
            });
            eprintln!("{failure}");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("{}", json!({"command": name, "error": format!("{e:#}")}));
            ExitCode::FAILURE
        }
    }
}
