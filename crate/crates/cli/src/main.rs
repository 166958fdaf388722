use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ncphase_cli::{builtin, load, run, Flags};

#[derive(Parser)]
#[command(name = "ncphase", version, about = "Noncommutative phase-space scenario runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or a builtin scenario by name.
    Run {
        scenario: String,
        /// Directory for the JSON report and CSV trajectory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the grid step.
        #[arg(long)]
        dt: Option<f64>,
        /// Override the tolerance of the primary check.
        #[arg(long)]
        tol: Option<f64>,
        /// Add wall-clock time to the report (breaks byte-identical output).
        #[arg(long)]
        timing: bool,
    },
    /// List the bundled scenarios.
    ListBuiltin,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListBuiltin => {
            let mut out = std::io::stdout().lock();
            for b in builtin::CATALOG {
                let _ = writeln!(out, "{:<28} criterion {:>2}  {}", b.name, b.criterion, b.description);
            }
            ExitCode::SUCCESS
        }
        Command::Run {
            scenario,
            out,
            dt,
            tol,
            timing,
        } => {
            let flags = Flags { out, dt, tol, timing };
            let result = load(&scenario).and_then(|(name, text)| run(&name, &text, &flags));
            match result {
                Ok(report) => {
                    let _ = writeln!(std::io::stdout().lock(), "{}", report.to_json());
                    if report.passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code())
                }
            }
        }
    }
}
