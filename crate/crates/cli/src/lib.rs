//! Scenario runner for the ncphase engine.

pub mod builtin;
pub mod error;
pub mod report;
pub mod scenario;
pub mod tasks;

use std::path::{Path, PathBuf};
use std::time::Instant;

use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::report::CheckReport;
use crate::scenario::{ScenarioFile, Task};

/// Command-line overrides applied on top of a scenario file.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub out: Option<PathBuf>,
    pub dt: Option<f64>,
    pub tol: Option<f64>,
    pub timing: bool,
}

/// Loads a scenario from a file path, falling back to the builtin catalog.
pub fn load(arg: &str) -> Result<(String, String), CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{arg}: {e}")))?;
        let name = path
            .file_stem()
            .map_or(arg.into(), |s| s.to_string_lossy().into_owned());
        return Ok((name, text));
    }
    match builtin::find(arg) {
        Some(b) => Ok((b.name.into(), b.source.into())),
        None => Err(CliError::Io(format!("{arg}: no such file or builtin scenario"))),
    }
}

/// Applies `flags` to a parsed scenario and re-validates it.
pub fn apply_overrides(mut file: ScenarioFile, flags: &Flags) -> Result<ScenarioFile, CliError> {
    if let Some(dt) = flags.dt {
        match file.grid.as_mut() {
            Some(g) => g.dt = dt,
            None => {
                return Err(CliError::Validation(
                    "grid: --dt given but the scenario has no grid".into(),
                ))
            }
        }
    }
    if let Some(tol) = flags.tol {
        file.options.tol = Some(tol);
    }
    file.validate()?;
    Ok(file)
}

/// SHA-256 of the scenario's JSON form, hex encoded.
pub fn scenario_hash(file: &ScenarioFile) -> String {
    let json = serde_json::to_vec(file).expect("scenario serializes");
    Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs one scenario and writes its artifacts under `flags.out`.
pub fn run(name: &str, text: &str, flags: &Flags) -> Result<CheckReport, CliError> {
    let file = apply_overrides(ScenarioFile::parse(text)?, flags)?;
    if let Some(dir) = &flags.out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    let start = Instant::now();
    let outcome = match file.task {
        Task::CheckAlgebra => tasks::check_algebra(&file),
        Task::ComBrackets => tasks::com_brackets(&file),
        Task::Simulate => tasks::simulate(&file, flags.out.as_deref().map(|d| (d, name))),
        Task::WepTest => tasks::wep_test(&file),
    }?;
    let mut report = CheckReport::new(
        name.into(),
        file.task.name(),
        scenario_hash(&file),
        outcome.checks,
        outcome.details,
    );
    if flags.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    if let Some(dir) = &flags.out {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, report.to_json() + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}
